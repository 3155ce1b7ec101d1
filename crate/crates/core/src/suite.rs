//! The end-to-end verification suite: twelve exhaustive or bounded checks of the
//! library's decision procedures against each other.

use std::collections::HashMap;
use std::hash::Hash;
use std::str::FromStr;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::congruences::{class_bfs, equivalent, invariant, join_components, CongruenceKind, RewriteRelation};
use crate::deduction::{consequence_classes, derivable_from_restricted_theory, is_isoterm, min_identity_length};
use crate::error::{Error, Result};
use crate::identity::{Identity, NamedIdentity};
use crate::lattice::{build, verify, LatticeName};
use crate::monoids::{builtin, satisfies};
use crate::properties::{clause, shares_support_and_simples, PropertyKind};
use crate::varieties::{self, classify, descriptor, leq, theory_satisfies};
use crate::word::{partitions, var_content, words_up_to, Content, Letter, Var, Word};

/// How thoroughly to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// The full bounds.
    Full,
    /// Reduced bounds for a fast smoke run.
    Quick,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "paper" | "full" => Ok(Mode::Full),
            "quick" => Ok(Mode::Quick),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown suite {s:?}; expected paper or quick") }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "congruence invariants agree with rewriting classes"),
    (2, "baxt and mst are meets of congruences"),
    (3, "hypo is the join of sylv and sylv#"),
    (4, "J1 and its dual satisfy exactly the S1 identities"),
    (5, "finite bases are complete on small identities"),
    (6, "hs agrees with sylv on two letters and ms satisfies R2"),
    (7, "shortest identities of mst^S have length n+2"),
    (8, "bounded axiomatic-rank searches"),
    (9, "all three lattices verify"),
    (10, "isoterms"),
    (11, "jst lies below every other variety"),
    (12, "classification of long identities is fast"),
];

/// Runs one criterion.
pub fn run(id: u8, mode: Mode) -> Result<Outcome> {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("no criterion {id}") })?;
    let start = Instant::now();
    let result = match id {
        1 => invariants_vs_bfs(mode),
        2 => meets_of_congruences(mode),
        3 => hypo_is_join(mode),
        4 => j1_lemma(mode),
        5 => basis_completeness(mode),
        6 => hs_and_ms(mode),
        7 => shortest_identities(mode),
        8 => axiomatic_rank(mode),
        9 => lattices(),
        10 => isoterms(),
        11 => jst_bottom(mode),
        _ => fast_classification(),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Ok(Outcome { id, name, passed, detail, millis: start.elapsed().as_millis() })
}

/// Runs every criterion in order.
pub fn run_all(mode: Mode) -> Vec<Outcome> {
    CRITERIA.iter().map(|&(id, _)| run(id, mode).expect("listed criterion")).collect()
}

type Check = std::result::Result<String, String>;

/// Letter contents over `[rank]` up to the given length, zero counts allowed.
fn letter_contents(rank: u32, max_len: usize) -> Vec<Content<Letter>> {
    let mut out = Vec::new();
    let mut counts = vec![0usize; rank as usize];
    loop {
        let total: usize = counts.iter().sum();
        if total <= max_len {
            out.push(Content::from_counts(
                counts.iter().enumerate().map(|(i, &c)| (Letter::new(i as u32 + 1).expect("positive"), c)),
            ));
        }
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            counts[i] += 1;
            if counts[i] <= max_len {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

fn scale(mode: Mode) -> [(u32, usize); 2] {
    match mode {
        Mode::Full => [(3, 6), (2, 7)],
        Mode::Quick => [(3, 5), (2, 6)],
    }
}

/// Whether two labellings of the same items induce the same partition.
fn same_partition<A: Hash + Eq + Clone, B: Hash + Eq + Clone>(a: &[A], b: &[B]) -> bool {
    let mut ab: HashMap<A, B> = HashMap::new();
    let mut ba: HashMap<B, A> = HashMap::new();
    a.iter().zip(b).all(|(x, y)| {
        ab.entry(x.clone()).or_insert_with(|| y.clone()) == y && ba.entry(y.clone()).or_insert_with(|| x.clone()) == x
    })
}

fn bfs_components(relations: &[RewriteRelation], words: &[Word<Letter>]) -> Vec<usize> {
    let index: HashMap<&Word<Letter>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut comp = vec![usize::MAX; words.len()];
    for (s, w) in words.iter().enumerate() {
        if comp[s] == usize::MAX {
            for u in class_bfs(relations, w, usize::MAX).expect("uncapped") {
                comp[index[&u]] = s;
            }
        }
    }
    comp
}

fn invariants_vs_bfs(mode: Mode) -> Check {
    let mut classes = 0;
    for kind in CongruenceKind::WITH_INVARIANT {
        for (rank, len) in scale(mode) {
            for content in letter_contents(rank, len) {
                let words = content.words();
                let inv: Vec<_> = words.iter().map(|w| invariant(kind, w).expect("has invariant")).collect();
                let comp = bfs_components(&kind.relations(), &words);
                if !same_partition(&inv, &comp) {
                    return Err(format!("{kind}: mismatch on content {:?}", content.counts()));
                }
                classes += 1;
            }
        }
    }
    Ok(format!("{classes} content classes across 8 congruences"))
}

fn meets_of_congruences(mode: Mode) -> Check {
    use CongruenceKind::*;
    let mut words_checked = 0;
    for (rank, len) in scale(mode) {
        for content in letter_contents(rank, len) {
            let words = content.words();
            let key = |k: CongruenceKind| words.iter().map(|w| invariant(k, w).expect("invariant")).collect::<Vec<_>>();
            let pair = |a: Vec<_>, b: Vec<_>| a.into_iter().zip(b).collect::<Vec<_>>();
            if !same_partition(&key(Baxt), &pair(key(Sylv), key(Sylvh))) {
                return Err(format!("baxt differs from sylv ∧ sylv# on {:?}", content.counts()));
            }
            if !same_partition(&key(Mst), &pair(key(Lst), key(Rst))) {
                return Err(format!("mst differs from lst ∧ rst on {:?}", content.counts()));
            }
            words_checked += words.len();
        }
    }
    Ok(format!("{words_checked} words"))
}

fn hypo_is_join(mode: Mode) -> Check {
    use CongruenceKind::*;
    let mut classes = 0;
    for (rank, len) in scale(mode) {
        for content in letter_contents(rank, len) {
            let (words, comp) = join_components(&[Sylv, Sylvh], &content, usize::MAX).map_err(|e| e.to_string())?;
            let inv: Vec<_> = words.iter().map(|w| invariant(Hypo, w).expect("invariant")).collect();
            if !same_partition(&inv, &comp) {
                return Err(format!("hypo differs from the join on {:?}", content.counts()));
            }
            classes += 1;
        }
    }
    Ok(format!("{classes} content classes"))
}

fn j1_lemma(mode: Mode) -> Check {
    let max_len = if mode == Mode::Full { 5 } else { 4 };
    let vars = [Var(0), Var(1), Var(2)];
    let words = words_up_to(&vars, max_len);
    let mut checked = 0;
    for (name, p) in [("J1", PropertyKind::S1Suf), ("J1dual", PropertyKind::S1Pre)] {
        let m = builtin(name).map_err(|e| e.to_string())?;
        for u in &words {
            for v in &words {
                let id = Identity::new(u.clone(), v.clone());
                let expected = shares_support_and_simples(&id) && clause(u, v, p);
                if satisfies(&m, &id).map_err(|e| e.to_string())? != expected {
                    return Err(format!("{name} disagrees on {id}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} identities"))
}

fn basis_completeness(mode: Mode) -> Check {
    let max_len = if mode == Mode::Full { 6 } else { 5 };
    let mut pairs = 0usize;
    for v in varieties::all() {
        let basis = v.basis_identities();
        for len in 2..=max_len {
            for counts in partitions(len, 3) {
                let content = var_content(&counts);
                let (words, comp) = consequence_classes(&content, &basis, usize::MAX).map_err(|e| e.to_string())?;
                for i in 0..words.len() {
                    for j in i + 1..words.len() {
                        let id = Identity::new(words[i].clone(), words[j].clone());
                        if theory_satisfies(&v, &id) != (comp[i] == comp[j]) {
                            return Err(format!("{}: basis and properties disagree on {id}", v.name));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} identities across 26 varieties"))
}

fn hs_and_ms(mode: Mode) -> Check {
    let max_len = if mode == Mode::Full { 8 } else { 6 };
    let mut classes = 0;
    for content in letter_contents(2, max_len) {
        let words = content.words();
        let inv: Vec<_> = words.iter().map(|w| invariant(CongruenceKind::Sylv, w).expect("invariant")).collect();
        if !same_partition(&inv, &bfs_components(&[RewriteRelation::Hs], &words)) {
            return Err(format!("hs differs from sylv on {:?}", content.counts()));
        }
        classes += 1;
    }
    let images = words_up_to(&[Letter::new(1).expect("1"), Letter::new(2).expect("2")], 2);
    let r2 = NamedIdentity::R2.identity();
    let mut subs = 0;
    for a in &images {
        for b in &images {
            for c in &images {
                for d in &images {
                    let img = [a, b, c, d];
                    let sub = |w: &Word<Var>| w.substitute(|v| img[v.0 as usize].clone());
                    if !equivalent(CongruenceKind::Ms, &sub(&r2.lhs), &sub(&r2.rhs)) {
                        return Err(format!("ms falsifies R2 at x={a}, y={b}, z={c}, t={d}"));
                    }
                    subs += 1;
                }
            }
        }
    }
    Ok(format!("{classes} two-letter classes, {subs} substitutions into R2"))
}

fn shortest_identities(mode: Mode) -> Check {
    let v = descriptor("mst^S").map_err(|e| e.to_string())?;
    let ns: &[usize] = if mode == Mode::Full { &[2, 3, 4] } else { &[2, 3] };
    for &n in ns {
        let got = min_identity_length(&v, n, 8).map_err(|e| e.to_string())?;
        if got != Some(n + 2) {
            return Err(format!("{n} variables: got {got:?}"));
        }
    }
    Ok(format!("n+2 for n in {ns:?}"))
}

fn axiomatic_rank(mode: Mode) -> Check {
    use NamedIdentity::*;
    let d = |n: &str| descriptor(n).expect("catalogued");
    let cap = 1_000_000;
    let mut cases: Vec<(NamedIdentity, &str, usize, bool)> = vec![(M3, "mst^S", 2, false)];
    cases.extend([L2, M2, R2].map(|n| (n, "mst^S", 4, true)));
    if mode == Mode::Full {
        cases.extend([
            (O12, "lstvS", 5, true),
            (E12, "lstvS", 5, true),
            (O21, "rstvS", 5, true),
            (E21, "rstvS", 5, true),
        ]);
    }
    for (n, v, vars, exclude_self) in &cases {
        let id = n.identity();
        let excl = if *exclude_self { vec![id.clone()] } else { vec![] };
        let len = id.lhs.len();
        if derivable_from_restricted_theory(&id, &d(v), *vars, len, cap, &excl).map_err(|e| e.to_string())? {
            return Err(format!("{n} follows from the {vars}-variable identities of {v}"));
        }
    }
    // positive controls
    if !derivable_from_restricted_theory(&M3.identity(), &d("hypovmst"), 3, 5, cap, &[]).map_err(|e| e.to_string())? {
        return Err("M3 should follow from the 3-variable identities of hypovmst".into());
    }
    Ok(format!("{} non-derivability results and one positive control", cases.len()))
}

fn lattices() -> Check {
    let mut parts = Vec::new();
    for l in LatticeName::ALL {
        let report = verify(&build(l));
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("{l}: {}: {}", c.name, c.failures.join("; ")));
        }
        parts.push(format!("{l}: {} nodes, {} covers", report.nodes, report.covers));
    }
    Ok(parts.join("; "))
}

fn isoterms() -> Check {
    let cap = 1_000_000;
    for (v, w) in [("hypo", "xzxyty"), ("mst", "xzytxy"), ("mst", "xyzxty")] {
        let d = descriptor(v).map_err(|e| e.to_string())?;
        if !is_isoterm(&d, &Word::vars(w), cap).map_err(|e| e.to_string())? {
            return Err(format!("{w} is not an isoterm for {v}"));
        }
    }
    Ok("xzxyty for hypo; xzytxy and xyzxty for mst".into())
}

fn jst_bottom(mode: Mode) -> Check {
    let all = varieties::all();
    let jst = descriptor("jst").map_err(|e| e.to_string())?;
    for v in all.iter().filter(|v| v.name != "jst") {
        if !leq(&jst, v) || leq(v, &jst) {
            return Err(format!("jst is not strictly below {}", v.name));
        }
    }
    let max_len = if mode == Mode::Full { 6 } else { 5 };
    let mut outside = 0;
    let mut separated = vec![false; all.len()];
    for len in 2..=max_len {
        for counts in partitions(len, 3) {
            let words = var_content(&counts).words();
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    let id = Identity::new(words[i].clone(), words[j].clone());
                    let names = classify(&id);
                    if !theory_satisfies(&jst, &id) {
                        outside += 1;
                        if !names.is_empty() {
                            return Err(format!("{id} lies outside jst but in {}", names.join(", ")));
                        }
                    } else {
                        for (k, v) in all.iter().enumerate() {
                            if !names.contains(&v.name.as_str()) {
                                separated[k] = true;
                            }
                        }
                    }
                }
            }
        }
    }
    let missing: Vec<&str> =
        all.iter().zip(&separated).filter(|(v, s)| v.name != "jst" && !**s).map(|(v, _)| v.name.as_str()).collect();
    if !missing.is_empty() {
        return Err(format!("no identity of jst separates it from {}", missing.join(", ")));
    }
    Ok(format!("{outside} balanced identities outside jst lie in no other theory"))
}

fn fast_classification() -> Check {
    const LEN: usize = 100_000;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let u: Vec<Var> = (0..LEN).map(|_| Var(rng.gen_range(0..26))).collect();
    let mut shuffled = u.clone();
    shuffled.shuffle(&mut rng);
    let mut swapped = u.clone();
    let k = (0..LEN - 1).find(|&i| u[i] != u[i + 1]).expect("two distinct variables");
    swapped.swap(k, k + 1);
    let mut worst = 0u128;
    for v in [shuffled, swapped] {
        let id = Identity::new(Word::new(u.clone()), Word::new(v));
        let start = Instant::now();
        let names = classify(&id);
        let ms = start.elapsed().as_millis();
        worst = worst.max(ms);
        if ms >= 1000 {
            return Err(format!("classification took {ms} ms ({} varieties)", names.len()));
        }
    }
    Ok(format!("slowest of two classifications: {worst} ms"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_compare_both_ways() {
        assert!(same_partition(&[1, 1, 2], &["a", "a", "b"]));
        assert!(!same_partition(&[1, 1, 2], &["a", "b", "b"]));
        assert!(!same_partition(&[1, 2, 2], &["a", "a", "a"]));
    }

    #[test]
    fn letter_contents_enumerate_all_count_vectors() {
        assert_eq!(letter_contents(2, 2).len(), 6);
        assert_eq!(letter_contents(3, 1).len(), 4);
    }

    #[test]
    fn modes_parse() {
        assert_eq!("paper".parse::<Mode>().unwrap(), Mode::Full);
        assert_eq!("quick".parse::<Mode>().unwrap(), Mode::Quick);
        assert!("slow".parse::<Mode>().is_err());
        assert!(run(13, Mode::Quick).is_err());
    }
}

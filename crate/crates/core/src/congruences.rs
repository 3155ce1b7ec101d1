//! Plactic-like congruences on letter words: invariant deciders and rewriting closure.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Content, Letter, Word};

/// Default bound on the number of words a class enumeration may visit.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CongruenceKind {
    Sylv,
    Sylvh,
    Baxt,
    Hypo,
    Lst,
    Rst,
    Mst,
    Jst,
    Hs,
    Ms,
}

use CongruenceKind::*;

impl CongruenceKind {
    pub const ALL: [CongruenceKind; 10] = [Sylv, Sylvh, Baxt, Hypo, Lst, Rst, Mst, Jst, Hs, Ms];
    /// Kinds with an invariant characterization.
    pub const WITH_INVARIANT: [CongruenceKind; 8] = [Sylv, Sylvh, Baxt, Hypo, Lst, Rst, Mst, Jst];

    pub fn name(self) -> &'static str {
        match self {
            Sylv => "sylv",
            Sylvh => "sylvh",
            Baxt => "baxt",
            Hypo => "hypo",
            Lst => "lst",
            Rst => "rst",
            Mst => "mst",
            Jst => "jst",
            Hs => "hs",
            Ms => "ms",
        }
    }

    pub fn has_invariant(self) -> bool {
        !matches!(self, Hs | Ms)
    }

    /// The generating relation sets.
    pub fn relations(self) -> Vec<RewriteRelation> {
        use RewriteRelation as R;
        match self {
            Sylv => vec![R::Sylv],
            Sylvh => vec![R::Sylvh],
            Baxt => vec![R::Baxt],
            Hypo => vec![R::Sylv, R::Sylvh],
            Lst => vec![R::Lst],
            Rst => vec![R::Rst],
            Mst => vec![R::Mst],
            Jst => vec![R::Lst, R::Rst],
            Hs => vec![R::Hs],
            Ms => vec![R::Ms],
        }
    }
}

impl fmt::Display for CongruenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CongruenceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase();
        let norm = match norm.as_str() {
            "sylv#" | "sylvhash" => "sylvh",
            other => other,
        };
        CongruenceKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown congruence {s:?}") })
    }
}

/// The per-kind fingerprint. Only the fields the kind needs are populated.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct CongruenceInvariant {
    pub content: Vec<(u32, usize)>,
    /// `(a, b, k)`: an a-b left precedence of index k, with `a < b`.
    pub left_precedences: Option<BTreeSet<(u32, u32, usize)>>,
    /// `(b, a, k)`: a b-a right precedence of index k, with `a < b`.
    pub right_precedences: Option<BTreeSet<(u32, u32, usize)>>,
    /// `(b, a)`: a b-a inversion.
    pub inversions: Option<BTreeSet<(u32, u32)>>,
    pub first_order: Option<Vec<u32>>,
    pub last_order: Option<Vec<u32>>,
    pub simple_word: Option<Vec<u32>>,
}

fn values(w: &Word<Letter>) -> Vec<u32> {
    w.iter().map(|l| l.value()).collect()
}

/// `w = w1 b w2` with `|w1|_a = k` and no letter of `(a, b]` in `w1`.
fn left_precedences(w: &[u32], support: &[u32]) -> BTreeSet<(u32, u32, usize)> {
    let mut out = BTreeSet::new();
    for &a in support {
        for &b in support.iter().filter(|&&b| b > a) {
            for (p, _) in w.iter().enumerate().filter(|&(_, &c)| c == b) {
                let w1 = &w[..p];
                if w1.iter().all(|&c| !(a < c && c <= b)) {
                    out.insert((a, b, w1.iter().filter(|&&c| c == a).count()));
                }
            }
        }
    }
    out
}

/// `w = w1 a w2` with `|w2|_b = k` and no letter of `[a, b)` in `w2`.
fn right_precedences(w: &[u32], support: &[u32]) -> BTreeSet<(u32, u32, usize)> {
    let mut out = BTreeSet::new();
    for &a in support {
        for &b in support.iter().filter(|&&b| b > a) {
            for (p, _) in w.iter().enumerate().filter(|&(_, &c)| c == a) {
                let w2 = &w[p + 1..];
                if w2.iter().all(|&c| !(a <= c && c < b)) {
                    out.insert((b, a, w2.iter().filter(|&&c| c == b).count()));
                }
            }
        }
    }
    out
}

/// Pairs `b > a` adjacent in the support such that `ba` is a subsequence.
fn inversions(w: &[u32], support: &[u32]) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for pair in support.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let first_b = w.iter().position(|&c| c == b);
        let last_a = w.iter().rposition(|&c| c == a);
        if let (Some(fb), Some(la)) = (first_b, last_a) {
            if fb < la {
                out.insert((b, a));
            }
        }
    }
    out
}

/// Computes the invariant that characterizes `kind`.
pub fn invariant(kind: CongruenceKind, w: &Word<Letter>) -> Result<CongruenceInvariant> {
    if !kind.has_invariant() {
        return Err(Error::UnsupportedKind(kind.name().to_string()));
    }
    let v = values(w);
    let content = w.content();
    let support: Vec<u32> = content.support().iter().map(|l| l.value()).collect();
    let mut inv = CongruenceInvariant {
        content: content.counts().iter().map(|(l, &c)| (l.value(), c)).collect(),
        ..Default::default()
    };
    if matches!(kind, Sylvh | Baxt) {
        inv.left_precedences = Some(left_precedences(&v, &support));
    }
    if matches!(kind, Sylv | Baxt) {
        inv.right_precedences = Some(right_precedences(&v, &support));
    }
    if kind == Hypo {
        inv.inversions = Some(inversions(&v, &support));
    }
    if matches!(kind, Lst | Mst) {
        inv.first_order = Some(w.first_occurrence_order().iter().map(|l| l.value()).collect());
    }
    if matches!(kind, Rst | Mst) {
        inv.last_order = Some(w.last_occurrence_order().iter().map(|l| l.value()).collect());
    }
    if kind == Jst {
        let simple = content.simple();
        inv.simple_word = Some(values(&w.restrict_to(&simple)));
    }
    Ok(inv)
}

/// Decides `u ≡ v`. Kinds without an invariant use the rewriting closure, uncapped.
pub fn equivalent(kind: CongruenceKind, u: &Word<Letter>, v: &Word<Letter>) -> bool {
    equivalent_capped(kind, u, v, usize::MAX).expect("uncapped search cannot fail")
}

/// As [`equivalent`], failing if a rewriting search would exceed `cap` words.
pub fn equivalent_capped(kind: CongruenceKind, u: &Word<Letter>, v: &Word<Letter>, cap: usize) -> Result<bool> {
    if u.content() != v.content() {
        return Ok(false);
    }
    if u == v {
        return Ok(true);
    }
    if kind.has_invariant() {
        return Ok(invariant(kind, u)? == invariant(kind, v)?);
    }
    reachable(&kind.relations(), u, v, cap)
}

/// One generating relation set. Every relation here swaps two adjacent letters inside a
/// context, so an instance is determined by the position of the swap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RewriteRelation {
    /// `(b u ac, b u ca)`, `a < b ≤ c`.
    Sylvh,
    /// `(ca u b, ac u b)`, `a ≤ b < c`.
    Sylv,
    /// `(c u da v b, c u ad v b)`, `a ≤ b < c ≤ d`, and `(b u da v c, b u ad v c)`, `a < b ≤ c < d`.
    Baxt,
    /// `(a u ab, a u ba)`.
    Lst,
    /// `(ab u a, ba u a)`.
    Rst,
    /// `(b u ba v b, b u ab v b)` and `(a u ab v b, a u ba v b)`.
    Mst,
    /// `(ca u b, ac u b)`, `a ≤ b < c`, and `(b u ac, b u ca)`, `a < b < c`.
    Hs,
    /// `(ab u a, ba u a)`, `a < b`, and `(b u ac v b, b u ca v b)`, `a < b < c`.
    Ms,
}

impl RewriteRelation {
    pub fn name(self) -> &'static str {
        match self {
            RewriteRelation::Sylvh => "R_sylv#",
            RewriteRelation::Sylv => "R_sylv",
            RewriteRelation::Baxt => "R_baxt",
            RewriteRelation::Lst => "R_lSt",
            RewriteRelation::Rst => "R_rSt",
            RewriteRelation::Mst => "R_mSt",
            RewriteRelation::Hs => "R_hs",
            RewriteRelation::Ms => "R_ms",
        }
    }

    /// Whether some instance of the relation swaps positions `i` and `i + 1` of `w`.
    pub fn allows_swap(self, w: &[u32], i: usize) -> bool {
        let (p, q) = (w[i], w[i + 1]);
        if p == q {
            return false;
        }
        let (lo, hi) = (p.min(q), p.max(q));
        let before = &w[..i];
        let after = &w[i + 2..];
        let has = |side: &[u32], f: &dyn Fn(u32) -> bool| side.iter().any(|&c| f(c));
        match self {
            RewriteRelation::Sylvh => has(before, &|b| lo < b && b <= hi),
            RewriteRelation::Sylv => has(after, &|b| lo <= b && b < hi),
            RewriteRelation::Baxt => {
                // (a, d) = (lo, hi)
                let first = before.iter().any(|&c| lo < c && c <= hi && after.iter().any(|&b| lo <= b && b < c));
                let second = before.iter().any(|&b| lo < b && b < hi && after.iter().any(|&c| b <= c && c < hi));
                first || second
            }
            RewriteRelation::Lst => before.contains(&p) || before.contains(&q),
            RewriteRelation::Rst => after.contains(&p) || after.contains(&q),
            RewriteRelation::Mst => [(p, q), (q, p)].iter().any(|&(a, b)| {
                (before.contains(&b) && after.contains(&b)) || (before.contains(&a) && after.contains(&b))
            }),
            RewriteRelation::Hs => RewriteRelation::Sylv.allows_swap(w, i) || has(before, &|b| lo < b && b < hi),
            RewriteRelation::Ms => {
                after.contains(&lo) || before.iter().any(|&b| lo < b && b < hi && after.contains(&b))
            }
        }
    }

    /// Every word one relation step away from `w`, in either direction.
    pub fn rewrites(self, w: &Word<Letter>) -> Vec<Word<Letter>> {
        let v = values(w);
        let mut out = Vec::new();
        for i in 0..v.len().saturating_sub(1) {
            if self.allows_swap(&v, i) {
                let mut s = w.as_slice().to_vec();
                s.swap(i, i + 1);
                out.push(Word::new(s));
            }
        }
        out
    }
}

fn check_cap(content: &Content<Letter>, cap: usize) -> Result<()> {
    let size = content.class_size();
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

/// The congruence class of `w` under the congruence generated by `relations`.
pub fn class_bfs(relations: &[RewriteRelation], w: &Word<Letter>, cap: usize) -> Result<BTreeSet<Word<Letter>>> {
    check_cap(&w.content(), cap)?;
    let mut seen: HashSet<Word<Letter>> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for r in relations {
            for next in r.rewrites(&cur) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn reachable(relations: &[RewriteRelation], u: &Word<Letter>, v: &Word<Letter>, cap: usize) -> Result<bool> {
    if cap != usize::MAX {
        check_cap(&u.content(), cap)?;
    }
    let mut seen: HashSet<Word<Letter>> = HashSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(cur) = queue.pop_front() {
        for r in relations {
            for next in r.rewrites(&cur) {
                if &next == v {
                    return Ok(true);
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(false)
}

/// Partition of a content class into the classes of the join of `kinds`.
/// Returns the words of the class and a component id per word.
pub fn join_components(
    kinds: &[CongruenceKind],
    content: &Content<Letter>,
    cap: usize,
) -> Result<(Vec<Word<Letter>>, Vec<usize>)> {
    let words = content.words_capped(cap)?;
    let index: HashMap<&Word<Letter>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for &kind in kinds {
        if kind.has_invariant() {
            let mut first: HashMap<CongruenceInvariant, usize> = HashMap::new();
            for (i, w) in words.iter().enumerate() {
                let key = invariant(kind, w)?;
                match first.get(&key) {
                    Some(&j) => union(&mut parent, i, j),
                    None => {
                        first.insert(key, i);
                    }
                }
            }
        } else {
            for (i, w) in words.iter().enumerate() {
                for r in kind.relations() {
                    for n in r.rewrites(w) {
                        union(&mut parent, i, index[&n]);
                    }
                }
            }
        }
    }
    let comps = (0..words.len()).map(|i| find(&mut parent, i)).collect();
    Ok((words, comps))
}

/// Decides `u` and `v` equivalent under the join of the congruences in `kinds`.
pub fn join_equivalent(kinds: &[CongruenceKind], u: &Word<Letter>, v: &Word<Letter>, cap: usize) -> Result<bool> {
    if u.content() != v.content() {
        return Ok(false);
    }
    let (words, comps) = join_components(kinds, &u.content(), cap)?;
    let pos = |w: &Word<Letter>| words.binary_search(w).expect("word in its class");
    Ok(comps[pos(u)] == comps[pos(v)])
}

/// Decides `u` and `v` equivalent under every congruence in `kinds`.
pub fn meet_equivalent(kinds: &[CongruenceKind], u: &Word<Letter>, v: &Word<Letter>) -> Result<bool> {
    for &k in kinds {
        if !k.has_invariant() {
            return Err(Error::UnsupportedKind(k.name().to_string()));
        }
    }
    Ok(kinds.iter().all(|&k| equivalent(k, u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> Word<Letter> {
        Word::letters(v)
    }

    #[test]
    fn invariant_examples() {
        let i = invariant(Sylv, &w(&[2, 1, 1])).unwrap();
        assert_eq!(i.content, vec![(1, 2), (2, 1)]);
        assert_eq!(i.right_precedences.unwrap(), [(2, 1, 0)].into());
        let i = invariant(Sylv, &w(&[1, 2])).unwrap();
        assert_eq!(i.right_precedences.unwrap(), [(2, 1, 1)].into());
        let i = invariant(Hypo, &w(&[1, 2, 2, 1])).unwrap();
        assert_eq!(i.inversions.unwrap(), [(2, 1)].into());
        let i = invariant(Jst, &w(&[1, 2, 2, 1])).unwrap();
        assert_eq!(i.simple_word.unwrap(), Vec::<u32>::new());
        assert_eq!(invariant(Hs, &w(&[1])), Err(Error::UnsupportedKind("hs".into())));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(Sylv, &w(&[2, 1, 1]), &w(&[1, 2, 1])));
        assert!(!equivalent(Sylv, &w(&[2, 1]), &w(&[1, 2])));
        assert!(equivalent(Hypo, &w(&[1, 2, 2, 1]), &w(&[2, 1, 2, 1])));
        assert!(!equivalent(Hs, &w(&[2, 1]), &w(&[1, 2])));
        assert!(!equivalent(Baxt, &w(&[1, 1]), &w(&[1])));
    }

    #[test]
    fn bfs_examples() {
        let c = class_bfs(&[RewriteRelation::Lst], &w(&[1, 1, 2]), 10).unwrap();
        assert_eq!(c, [w(&[1, 1, 2]), w(&[1, 2, 1])].into());
        let c = class_bfs(&Hypo.relations(), &w(&[1, 2, 2, 1]), 10).unwrap();
        assert!(c.contains(&w(&[2, 1, 2, 1])));
        assert_eq!(class_bfs(&[], &w(&[3, 1]), 10).unwrap(), [w(&[3, 1])].into());
        assert_eq!(
            class_bfs(&[RewriteRelation::Lst], &w(&[1, 2, 3, 4, 5]), 100),
            Err(Error::CapExceeded { size: 120, cap: 100 })
        );
    }

    #[test]
    fn joins_and_meets() {
        assert!(!join_equivalent(&[Lst, Sylv], &w(&[1, 2]), &w(&[2, 1]), 100).unwrap());
        assert!(join_equivalent(&[Sylvh, Sylv], &w(&[1, 2, 2, 1]), &w(&[2, 1, 2, 1]), 100).unwrap());
        assert!(meet_equivalent(&[Sylv], &w(&[2, 1, 1]), &w(&[1, 2, 1])).unwrap());
        assert!(meet_equivalent(&[Sylv, Ms], &w(&[1]), &w(&[1])).is_err());
    }

    #[test]
    fn relation_instances_preserve_content() {
        let word = w(&[3, 1, 2, 3, 1, 2]);
        for r in [
            RewriteRelation::Sylvh,
            RewriteRelation::Sylv,
            RewriteRelation::Baxt,
            RewriteRelation::Lst,
            RewriteRelation::Rst,
            RewriteRelation::Mst,
            RewriteRelation::Hs,
            RewriteRelation::Ms,
        ] {
            for n in r.rewrites(&word) {
                assert_eq!(n.content(), word.content(), "{}", r.name());
            }
        }
    }

    #[test]
    fn kind_names_parse() {
        for k in CongruenceKind::ALL {
            assert_eq!(k.name().parse::<CongruenceKind>().unwrap(), k);
        }
        assert_eq!("sylv#".parse::<CongruenceKind>().unwrap(), Sylvh);
        assert!("plax".parse::<CongruenceKind>().is_err());
    }
}

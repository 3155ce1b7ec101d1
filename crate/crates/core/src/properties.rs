//! The nine identity properties, their precondition and the implication diagram.
//!
//! Every property is defined for identities whose sides share the same support
//! and the same simple variables. Checks run in `O(|u| + |v|)` apart from
//! `Sub2` (quadratic in the number of variables) and the literal `Rst1v`
//! (one pass per variable).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::identity::Identity;
use crate::word::{partitions, var_content, Content, Symbol, Word};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PropertyKind {
    CPre,
    CSuf,
    Sub2,
    Rst1v,
    SPre,
    SSuf,
    S1Pre,
    S1Suf,
    Rst1,
}

use PropertyKind::*;

impl PropertyKind {
    pub const ALL: [PropertyKind; 9] = [CPre, CSuf, Sub2, Rst1v, SPre, SSuf, S1Pre, S1Suf, Rst1];

    pub fn tag(self) -> &'static str {
        match self {
            CPre => "Cpre",
            CSuf => "Csuf",
            Sub2 => "Sub2",
            Rst1v => "Rst1v",
            SPre => "Spre",
            SSuf => "Ssuf",
            S1Pre => "S1pre",
            S1Suf => "S1suf",
            Rst1 => "Rst1",
        }
    }

    /// Direct edges of the implication diagram.
    pub fn direct_consequences(self) -> &'static [PropertyKind] {
        match self {
            CPre => &[SPre, Sub2, Rst1v],
            CSuf => &[SSuf, Sub2, Rst1v],
            Sub2 => &[S1Pre, S1Suf],
            Rst1v => &[S1Pre, S1Suf],
            SPre => &[S1Pre],
            SSuf => &[S1Suf],
            S1Pre => &[Rst1],
            S1Suf => &[Rst1],
            Rst1 => &[],
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PropertyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PropertyKind::ALL
            .into_iter()
            .find(|p| p.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown property {s:?}") })
    }
}

impl Serialize for PropertyKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Reflexive-transitive closure of the diagram: does `p` entail `q`?
pub fn implies(p: PropertyKind, q: PropertyKind) -> bool {
    p == q || p.direct_consequences().iter().any(|&r| implies(r, q))
}

/// Every property entailed by some member of `props`.
pub fn closure(props: &BTreeSet<PropertyKind>) -> BTreeSet<PropertyKind> {
    PropertyKind::ALL.into_iter().filter(|&q| props.iter().any(|&p| implies(p, q))).collect()
}

/// Same support and same simple variables on both sides.
pub fn shares_support_and_simples(id: &Identity) -> bool {
    let (a, b) = (id.lhs.content(), id.rhs.content());
    a.support() == b.support() && a.simple() == b.simple()
}

/// Evaluates property `p` on `id`.
pub fn check_property(id: &Identity, p: PropertyKind) -> Result<bool> {
    if !shares_support_and_simples(id) {
        return Err(Error::PreconditionViolated);
    }
    Ok(clause(&id.lhs, &id.rhs, p))
}

/// The defining clause of `p` for two words assumed to share support and simples.
pub fn clause<S: Symbol>(u: &Word<S>, v: &Word<S>, p: PropertyKind) -> bool {
    let d = Dense::new(u, v);
    match p {
        CPre => d.cpre(),
        CSuf => d.reversed().cpre(),
        Sub2 => d.sub2(),
        Rst1v => rst1v_restriction(u, v),
        SPre => d.spre(),
        SSuf => d.reversed().spre(),
        S1Pre => d.s1pre(),
        S1Suf => d.reversed().s1pre(),
        Rst1 => d.rst1(),
    }
}

/// The balanced-identity form of `Rst1v`: equal prefix contents up to each simple variable.
pub fn rst1v_prefix_content<S: Symbol>(u: &Word<S>, v: &Word<S>) -> bool {
    let d = Dense::new(u, v);
    d.prefix_contents_agree(|x| d.simple[x])
}

fn rst1v_restriction<S: Symbol>(u: &Word<S>, v: &Word<S>) -> bool {
    let simple = u.simple();
    let support = u.support();
    let ru = u.restrict_to(&simple);
    if ru != v.restrict_to(&simple) {
        return false;
    }
    support.iter().filter(|x| !simple.contains(x)).all(|&x| {
        let mut keep = simple.clone();
        keep.insert(x);
        u.restrict_to(&keep) == v.restrict_to(&keep)
    })
}

/// Both words with symbols replaced by dense indices `0..k` over the joint support.
struct Dense {
    k: usize,
    u: Vec<usize>,
    v: Vec<usize>,
    simple: Vec<bool>,
}

impl Dense {
    fn new<S: Symbol>(u: &Word<S>, v: &Word<S>) -> Dense {
        let mut support: BTreeSet<S> = u.support();
        support.extend(v.iter().copied());
        let index: BTreeMap<S, usize> = support.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let k = support.len();
        let u: Vec<usize> = u.iter().map(|s| index[s]).collect();
        let v: Vec<usize> = v.iter().map(|s| index[s]).collect();
        let mut counts = vec![0usize; k];
        for &x in &u {
            counts[x] += 1;
        }
        Dense { k, simple: counts.iter().map(|&c| c == 1).collect(), u, v }
    }

    fn reversed(&self) -> Dense {
        Dense {
            k: self.k,
            u: self.u.iter().rev().copied().collect(),
            v: self.v.iter().rev().copied().collect(),
            simple: self.simple.clone(),
        }
    }

    fn first_positions(w: &[usize], k: usize) -> Vec<usize> {
        let mut first = vec![usize::MAX; k];
        for (i, &x) in w.iter().enumerate() {
            if first[x] == usize::MAX {
                first[x] = i;
            }
        }
        first
    }

    fn last_positions(w: &[usize], k: usize) -> Vec<usize> {
        let mut last = vec![usize::MAX; k];
        for (i, &x) in w.iter().enumerate() {
            last[x] = i;
        }
        last
    }

    /// For each selected `x`: the prefixes ending at the first `x` have equal content.
    /// Equal content forces equal length, so both prefixes end at the same index and a
    /// single simultaneous scan tracking the number of differing counts suffices.
    fn prefix_contents_agree(&self, select: impl Fn(usize) -> bool) -> bool {
        let fu = Self::first_positions(&self.u, self.k);
        let fv = Self::first_positions(&self.v, self.k);
        let mut at_end: Vec<Vec<usize>> = vec![Vec::new(); self.u.len().min(self.v.len())];
        for x in (0..self.k).filter(|&x| select(x)) {
            if fu[x] != fv[x] {
                return false;
            }
            at_end[fu[x]].push(x);
        }
        let mut diff = vec![0i64; self.k];
        let mut nonzero = 0usize;
        let mut bump = |x: usize, d: i64, nonzero: &mut usize| {
            let before = diff[x] != 0;
            diff[x] += d;
            let after = diff[x] != 0;
            match (before, after) {
                (false, true) => *nonzero += 1,
                (true, false) => *nonzero -= 1,
                _ => {}
            }
        };
        for (i, ends) in at_end.iter().enumerate() {
            bump(self.u[i], 1, &mut nonzero);
            bump(self.v[i], -1, &mut nonzero);
            if !ends.is_empty() && nonzero != 0 {
                return false;
            }
        }
        true
    }

    fn cpre(&self) -> bool {
        self.prefix_contents_agree(|_| true)
    }

    /// First occurrence of `x` precedes the last occurrence of `y`, compared on both sides.
    fn sub2(&self) -> bool {
        let (fu, lu) = (Self::first_positions(&self.u, self.k), Self::last_positions(&self.u, self.k));
        let (fv, lv) = (Self::first_positions(&self.v, self.k), Self::last_positions(&self.v, self.k));
        (0..self.k).all(|x| (0..self.k).all(|y| (fu[x] < lu[y]) == (fv[x] < lv[y])))
    }

    /// The support of the prefix ending at the first `x` is the set of variables whose first
    /// occurrence is not later; these sets agree for every `x` exactly when the orders of first
    /// occurrences agree.
    fn spre(&self) -> bool {
        let order = |w: &[usize]| {
            let mut seen = vec![false; self.k];
            w.iter().copied().filter(|&x| !std::mem::replace(&mut seen[x], true)).collect::<Vec<_>>()
        };
        order(&self.u) == order(&self.v)
    }

    /// For each simple `x`, the support of the prefix ending at `x` agrees on both sides.
    /// That support is the first `n` entries of the first-occurrence order plus `x`, so it is
    /// enough to compare the counts `n` and whether the two orders have equal `n`-prefix sets.
    fn s1pre(&self) -> bool {
        let order = |w: &[usize]| {
            let mut seen = vec![false; self.k];
            w.iter().copied().filter(|&x| !std::mem::replace(&mut seen[x], true)).collect::<Vec<_>>()
        };
        let (ou, ov) = (order(&self.u), order(&self.v));
        if ou.len() != ov.len() {
            return false;
        }
        let mut same_prefix_set = vec![true; ou.len() + 1];
        let mut balance = vec![0i64; self.k];
        let mut nonzero = 0usize;
        for n in 0..ou.len() {
            for (x, d) in [(ou[n], 1i64), (ov[n], -1)] {
                let before = balance[x] != 0;
                balance[x] += d;
                match (before, balance[x] != 0) {
                    (false, true) => nonzero += 1,
                    (true, false) => nonzero -= 1,
                    _ => {}
                }
            }
            same_prefix_set[n + 1] = nonzero == 0;
        }
        let seen_before = |w: &[usize]| {
            let mut seen = vec![false; self.k];
            let mut distinct = 0;
            let mut at = vec![usize::MAX; self.k];
            for &x in w {
                if self.simple[x] {
                    at[x] = distinct;
                }
                if !std::mem::replace(&mut seen[x], true) {
                    distinct += 1;
                }
            }
            at
        };
        let (cu, cv) = (seen_before(&self.u), seen_before(&self.v));
        (0..self.k).filter(|&x| self.simple[x]).all(|x| cu[x] == cv[x] && same_prefix_set[cu[x]])
    }

    fn rst1(&self) -> bool {
        let r = |w: &[usize]| w.iter().copied().filter(|&x| self.simple[x]).collect::<Vec<_>>();
        r(&self.u) == r(&self.v)
    }
}

/// A per-word key for `p`: two words with the same content satisfy `p` as an identity
/// exactly when their keys agree.
pub fn fingerprint<S: Symbol>(w: &Word<S>, p: PropertyKind) -> Vec<u32> {
    let content = w.content();
    let support: Vec<S> = content.support().into_iter().collect();
    let simple = content.simple();
    let idx = |s: &S| support.binary_search(s).expect("symbol in support") as u32;
    let mut out = Vec::new();
    let push_word = |out: &mut Vec<u32>, w: &Word<S>| {
        out.extend(w.iter().map(idx));
        out.push(u32::MAX);
    };
    let push_set = |out: &mut Vec<u32>, c: &Content<S>| {
        out.extend(support.iter().map(|&s| c.get(s) as u32));
    };
    match p {
        CPre | CSuf | SPre | SSuf | S1Pre | S1Suf => {
            let prefix = matches!(p, CPre | SPre | S1Pre);
            let only_simple = matches!(p, S1Pre | S1Suf);
            for &x in support.iter().filter(|x| !only_simple || simple.contains(x)) {
                let piece =
                    if prefix { w.prefix_to_first(x) } else { w.suffix_from_last(x) }.expect("symbol in support");
                let c = piece.content();
                if matches!(p, CPre | CSuf) {
                    push_set(&mut out, &c);
                } else {
                    out.extend(support.iter().map(|&s| (c.get(s) > 0) as u32));
                }
            }
        }
        Sub2 => {
            let pairs = w.subsequences2();
            for a in &support {
                for b in &support {
                    out.push(pairs.contains(&(*a, *b)) as u32);
                }
            }
        }
        Rst1v => {
            push_word(&mut out, &w.restrict_to(&simple));
            for &x in &support {
                let mut keep = simple.clone();
                keep.insert(x);
                push_word(&mut out, &w.restrict_to(&keep));
            }
        }
        Rst1 => push_word(&mut out, &w.restrict_to(&simple)),
    }
    out
}

/// Profile of an identity: balance, precondition, and the properties that hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyProfile {
    pub balanced: bool,
    pub precondition_ok: bool,
    pub satisfied: BTreeSet<PropertyKind>,
}

pub fn profile(id: &Identity) -> PropertyProfile {
    let precondition_ok = shares_support_and_simples(id);
    let satisfied = if precondition_ok {
        PropertyKind::ALL.into_iter().filter(|&p| clause(&id.lhs, &id.rhs, p)).collect()
    } else {
        BTreeSet::new()
    };
    PropertyProfile { balanced: id.is_balanced(), precondition_ok, satisfied }
}

/// Outcome of [`verify_implications_empirically`].
#[derive(Clone, Debug, Default)]
pub struct ImplicationReport {
    /// Identities checked (nontrivial, balanced, up to renaming and swapping).
    pub identities_checked: usize,
    /// Declared implications `p ⇒ q` with a counterexample.
    pub violations: Vec<(PropertyKind, PropertyKind, Identity)>,
    /// For each non-implication `p ⇏ q`: the first separating identity and how many were found.
    pub separators: BTreeMap<(PropertyKind, PropertyKind), (Identity, usize)>,
    /// Non-implications for which no separator exists within the bounds.
    pub unseparated: Vec<(PropertyKind, PropertyKind)>,
}

impl ImplicationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the diagram against every balanced identity with at most `max_vars` variables and
/// sides of length at most `max_len`.
pub fn verify_implications_empirically(max_len: usize, max_vars: usize) -> Result<ImplicationReport> {
    if max_len > 8 || max_vars > 4 {
        return Err(Error::BoundExceeded(format!(
            "implication check limited to length 8 and 4 variables, got {max_len} and {max_vars}"
        )));
    }
    let mut report = ImplicationReport::default();
    for len in 1..=max_len {
        for counts in partitions(len, max_vars) {
            let words = var_content(&counts).words();
            for (i, u) in words.iter().enumerate() {
                for v in &words[i + 1..] {
                    report.identities_checked += 1;
                    let holds: Vec<bool> = PropertyKind::ALL.iter().map(|&p| clause(u, v, p)).collect();
                    for (pi, &p) in PropertyKind::ALL.iter().enumerate() {
                        if !holds[pi] {
                            continue;
                        }
                        for (qi, &q) in PropertyKind::ALL.iter().enumerate() {
                            if holds[qi] {
                                continue;
                            }
                            let id = Identity::new(u.clone(), v.clone());
                            if implies(p, q) {
                                report.violations.push((p, q, id));
                            } else {
                                report.separators.entry((p, q)).and_modify(|e| e.1 += 1).or_insert((id.canonical(), 1));
                            }
                        }
                    }
                }
            }
        }
    }
    for p in PropertyKind::ALL {
        for q in PropertyKind::ALL {
            if !implies(p, q) && !report.separators.contains_key(&(p, q)) {
                report.unseparated.push((p, q));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::NamedIdentity::*;
    use crate::parse::parse_identity;

    fn id(s: &str) -> Identity {
        parse_identity(s).unwrap()
    }

    #[test]
    fn precondition() {
        assert!(shares_support_and_simples(&L2.identity()));
        assert!(!shares_support_and_simples(&id("xy = x")));
        assert!(shares_support_and_simples(&id("xxy = xyx")));
        assert_eq!(check_property(&id("xy = x"), Sub2), Err(Error::PreconditionViolated));
    }

    #[test]
    fn clause_examples() {
        assert!(check_property(&L2.identity(), CPre).unwrap());
        assert!(!check_property(&L2.identity(), CSuf).unwrap());
        assert!(check_property(&id("xxy = xyx"), S1Pre).unwrap());
        assert!(!check_property(&id("xxy = xyx"), Sub2).unwrap());
        assert!(check_property(&id("xzxytx = xzyxtx"), Sub2).unwrap());
        assert!(check_property(&R1.identity(), SSuf).unwrap());
        assert!(!check_property(&R1.identity(), SPre).unwrap());
        for p in [SPre, SSuf, Rst1v] {
            assert!(check_property(&M2.identity(), p).unwrap(), "{p}");
        }
        assert!(!check_property(&M2.identity(), Sub2).unwrap());
    }

    #[test]
    fn unbalanced_but_admissible() {
        // x^2 y and x^3 y share support and simples; contents differ.
        let i = id("xxy = xxxy");
        assert!(!check_property(&i, CPre).unwrap());
        assert!(check_property(&i, SPre).unwrap());
        assert!(check_property(&i, Sub2).unwrap());
    }

    #[test]
    fn implication_table() {
        assert!(implies(Sub2, S1Pre));
        assert!(!implies(S1Pre, Sub2));
        assert!(implies(CPre, CPre));
        assert!(implies(CPre, Rst1));
        assert!(!implies(CPre, CSuf));
        let edges: usize = PropertyKind::ALL.iter().map(|p| p.direct_consequences().len()).sum();
        assert_eq!(edges, 14);
        assert_eq!(closure(&[SPre].into()), [SPre, S1Pre, Rst1].into());
    }

    #[test]
    fn empirical_diagram() {
        let r = verify_implications_empirically(6, 3).unwrap();
        assert!(r.ok(), "{:?}", r.violations.first());
        assert!(r.unseparated.is_empty(), "{:?}", r.unseparated);
        assert!(r.separators[&(S1Pre, Sub2)].0.equivalent_to(&id("xxy = xyx")));
        assert!(r.separators[&(SSuf, SPre)].0.equivalent_to(&R1.identity()));
        let tiny = verify_implications_empirically(2, 1).unwrap();
        assert_eq!(tiny.identities_checked, 0);
        assert!(verify_implications_empirically(9, 3).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for p in PropertyKind::ALL {
            assert_eq!(p.tag().parse::<PropertyKind>().unwrap(), p);
        }
    }
}

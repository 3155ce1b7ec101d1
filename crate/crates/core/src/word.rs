//! Words over an ordered alphabet and their combinatorial statistics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An alphabet symbol. Letters of `ℕ` and identity variables both implement it.
pub trait Symbol: Copy + Ord + Eq + Hash + fmt::Debug + fmt::Display {}

/// A letter of the ordered alphabet `ℕ = {1, 2, ...}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u32);

impl Letter {
    /// Returns `None` for zero: letters are positive.
    pub fn new(value: u32) -> Option<Letter> {
        (value >= 1).then_some(Letter(value))
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Symbol for Letter {}

/// A variable, identified by its index in the canonical naming sequence
/// `x, y, z, t, r, s, x1, x2, ...`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

const BASE_NAMES: [&str; 6] = ["x", "y", "z", "t", "r", "s"];

impl Var {
    pub fn name(self) -> String {
        match BASE_NAMES.get(self.0 as usize) {
            Some(n) => (*n).to_string(),
            None => format!("x{}", self.0 as usize - BASE_NAMES.len() + 1),
        }
    }

    /// Inverse of [`Var::name`] for the six single-letter names.
    pub fn from_base_name(c: char) -> Option<Var> {
        BASE_NAMES.iter().position(|n| n.starts_with(c) && n.len() == 1).map(|i| Var(i as u32))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Symbol for Var {}

impl Serialize for Var {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.name())
    }
}

/// A finite sequence of symbols; the empty sequence is `ε`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word<S>(Vec<S>);

impl<S: Symbol> Word<S> {
    pub fn new(symbols: Vec<S>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    /// `|w|_x`.
    pub fn count(&self, x: S) -> usize {
        self.0.iter().filter(|&&s| s == x).count()
    }

    pub fn content(&self) -> Content<S> {
        Content::of(&self.0)
    }

    pub fn support(&self) -> BTreeSet<S> {
        self.0.iter().copied().collect()
    }

    pub fn simple(&self) -> BTreeSet<S> {
        self.content().simple()
    }

    /// True iff `self` embeds order-preservingly into `other`.
    pub fn is_subsequence_of(&self, other: &Word<S>) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|s| it.any(|o| o == s))
    }

    /// True iff `self` occurs as a contiguous block of `other`.
    pub fn is_factor_of(&self, other: &Word<S>) -> bool {
        self.is_empty() || other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    /// All length-2 subsequences, as pairs.
    pub fn subsequences2(&self) -> BTreeSet<(S, S)> {
        let mut out = BTreeSet::new();
        let mut seen: BTreeSet<S> = BTreeSet::new();
        for &b in &self.0 {
            for &a in &seen {
                out.insert((a, b));
            }
            seen.insert(b);
        }
        out
    }

    /// Keeps exactly the occurrences of symbols in `keep`.
    pub fn restrict_to(&self, keep: &BTreeSet<S>) -> Word<S> {
        Word(self.0.iter().copied().filter(|s| keep.contains(s)).collect())
    }

    /// Shortest prefix containing `x`.
    pub fn prefix_to_first(&self, x: S) -> Result<Word<S>> {
        match self.0.iter().position(|&s| s == x) {
            Some(p) => Ok(Word(self.0[..=p].to_vec())),
            None => Err(Error::SymbolAbsent(x.to_string())),
        }
    }

    /// Shortest suffix containing `x`.
    pub fn suffix_from_last(&self, x: S) -> Result<Word<S>> {
        match self.0.iter().rposition(|&s| s == x) {
            Some(p) => Ok(Word(self.0[p..].to_vec())),
            None => Err(Error::SymbolAbsent(x.to_string())),
        }
    }

    pub fn concat(&self, other: &Word<S>) -> Word<S> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Symbols in order of first occurrence.
    pub fn first_occurrence_order(&self) -> Vec<S> {
        let mut seen = BTreeSet::new();
        self.0.iter().copied().filter(|s| seen.insert(*s)).collect()
    }

    /// Symbols in order of last occurrence.
    pub fn last_occurrence_order(&self) -> Vec<S> {
        let mut seen = BTreeSet::new();
        let mut rev: Vec<S> = self.0.iter().rev().copied().filter(|s| seen.insert(*s)).collect();
        rev.reverse();
        rev
    }

    /// Applies `f` to every symbol, concatenating the images.
    pub fn substitute<T: Symbol>(&self, mut f: impl FnMut(S) -> Word<T>) -> Word<T> {
        let mut out = Vec::new();
        for &s in &self.0 {
            out.extend(f(s).0);
        }
        Word(out)
    }
}

impl<S: Symbol> From<Vec<S>> for Word<S> {
    fn from(v: Vec<S>) -> Self {
        Word(v)
    }
}

impl<S: Symbol> FromIterator<S> for Word<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Word<Letter> {
    /// Builds a letter word from raw values; panics on zero.
    pub fn letters(values: &[u32]) -> Word<Letter> {
        Word(values.iter().map(|&v| Letter::new(v).expect("letters are positive")).collect())
    }
}

impl Word<Var> {
    /// Builds a variable word from the single-letter names `x y z t r s`.
    /// Panics on other characters; intended for literals.
    pub fn vars(text: &str) -> Word<Var> {
        Word(
            text.chars()
                .map(|c| Var::from_base_name(c).unwrap_or_else(|| panic!("not a base variable: {c}")))
                .collect(),
        )
    }
}

impl fmt::Display for Word<Letter> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Display for Word<Var> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for v in &self.0 {
            f.write_str(&v.name())?;
        }
        Ok(())
    }
}

impl Serialize for Word<Var> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Word<Letter> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.collect_seq(self.0.iter().map(|l| l.value()))
    }
}

/// The content `x ↦ |w|_x` of a word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Content<S: Ord>(BTreeMap<S, usize>);

impl<S: Symbol> Content<S> {
    pub fn of(symbols: &[S]) -> Self {
        let mut m = BTreeMap::new();
        for &s in symbols {
            *m.entry(s).or_insert(0) += 1;
        }
        Content(m)
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (S, usize)>) -> Self {
        Content(counts.into_iter().filter(|&(_, c)| c > 0).collect())
    }

    pub fn counts(&self) -> &BTreeMap<S, usize> {
        &self.0
    }

    pub fn get(&self, x: S) -> usize {
        self.0.get(&x).copied().unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<S> {
        self.0.keys().copied().collect()
    }

    pub fn simple(&self) -> BTreeSet<S> {
        self.0.iter().filter(|&(_, &c)| c == 1).map(|(&s, _)| s).collect()
    }

    /// Total length of any word with this content.
    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of words with this content, saturating at `u128::MAX`.
    pub fn class_size(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut n: u128 = 0;
        for &c in self.0.values() {
            // running product of binomial(n + c, c)
            for i in 1..=c as u128 {
                n += 1;
                acc = match acc.checked_mul(n) {
                    Some(v) => v / i,
                    None => return u128::MAX,
                };
            }
        }
        acc
    }

    /// Every word with this content, in lexicographic order.
    pub fn words(&self) -> Vec<Word<S>> {
        let syms: Vec<S> = self.0.keys().copied().collect();
        let mut left: Vec<usize> = self.0.values().copied().collect();
        let total = self.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(total);
        fn rec<S: Symbol>(syms: &[S], left: &mut [usize], cur: &mut Vec<S>, total: usize, out: &mut Vec<Word<S>>) {
            if cur.len() == total {
                out.push(Word(cur.clone()));
                return;
            }
            for i in 0..syms.len() {
                if left[i] > 0 {
                    left[i] -= 1;
                    cur.push(syms[i]);
                    rec(syms, left, cur, total, out);
                    cur.pop();
                    left[i] += 1;
                }
            }
        }
        rec(&syms, &mut left, &mut cur, total, &mut out);
        out
    }

    /// Every word with this content, failing when the class exceeds `cap`.
    pub fn words_capped(&self, cap: usize) -> Result<Vec<Word<S>>> {
        let size = self.class_size();
        if size > cap as u128 {
            return Err(Error::CapExceeded { size, cap });
        }
        Ok(self.words())
    }
}

/// All words of length exactly `len` over `alphabet`, lexicographically.
pub fn all_words<S: Symbol>(alphabet: &[S], len: usize) -> Vec<Word<S>> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for w in &out {
            for &a in alphabet {
                let mut v = w.0.clone();
                v.push(a);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// All words of length at most `max_len` over `alphabet`, shortest first.
pub fn words_up_to<S: Symbol>(alphabet: &[S], max_len: usize) -> Vec<Word<S>> {
    (0..=max_len).flat_map(|l| all_words(alphabet, l)).collect()
}

/// Nonincreasing count vectors with `parts` entries (zeros allowed) summing to `total`.
/// These are the contents over `x, y, z, ...` up to renaming.
pub fn partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for c in (0..=left.min(max)).rev() {
            cur.push(c);
            rec(left - c, c, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, parts, &mut Vec::new(), &mut out);
    out
}

/// Variable content `x^c0 y^c1 ...` from a count vector.
pub fn var_content(counts: &[usize]) -> Content<Var> {
    Content::from_counts(counts.iter().enumerate().map(|(i, &c)| (Var(i as u32), c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_counts_and_simples() {
        let c = Word::vars("xzytxy").content();
        assert_eq!(c.get(Var(0)), 2);
        assert_eq!(c.get(Var(1)), 2);
        assert_eq!(c.simple(), [Var(2), Var(3)].into_iter().collect());
        assert!(Word::<Var>::empty().content().is_empty());
        let l = Word::letters(&[2, 1, 1]).content();
        assert_eq!(l.get(Letter(1)), 2);
        assert_eq!(l.get(Letter(2)), 1);
    }

    #[test]
    fn subsequence_examples() {
        assert!(Word::letters(&[2, 1]).is_subsequence_of(&Word::letters(&[1, 2, 2, 1])));
        assert!(Word::empty().is_subsequence_of(&Word::letters(&[3])));
        assert!(!Word::letters(&[2, 1]).is_subsequence_of(&Word::letters(&[1, 2])));
    }

    #[test]
    fn subsequences2_examples() {
        let x = Var(0);
        let y = Var(1);
        assert_eq!(Word::vars("xxy").subsequences2(), [(x, x), (x, y)].into_iter().collect());
        assert_eq!(Word::vars("xyx").subsequences2(), [(x, y), (y, x), (x, x)].into_iter().collect());
        assert!(Word::vars("x").subsequences2().is_empty());
    }

    #[test]
    fn restriction_and_prefixes() {
        let w = Word::vars("xzxyty");
        let keep = [Var(0), Var(2), Var(3)].into_iter().collect();
        assert_eq!(w.restrict_to(&keep), Word::vars("xzxt"));
        assert_eq!(w.restrict_to(&w.support()), w);
        assert_eq!(w.restrict_to(&BTreeSet::new()), Word::empty());

        let y = Var(1);
        assert_eq!(Word::vars("xzytxy").prefix_to_first(y).unwrap(), Word::vars("xzy"));
        assert_eq!(Word::vars("xzytyx").prefix_to_first(y).unwrap(), Word::vars("xzy"));
        assert_eq!(Word::vars("xzytxy").suffix_from_last(Var(0)).unwrap(), Word::vars("xy"));
        assert_eq!(Word::vars("xzytyx").suffix_from_last(Var(0)).unwrap(), Word::vars("x"));
        assert!(matches!(Word::vars("xx").prefix_to_first(y), Err(Error::SymbolAbsent(_))));
        assert!(Word::vars("xx").suffix_from_last(y).is_err());
    }

    #[test]
    fn class_enumeration_matches_multinomial() {
        for counts in [vec![2, 2, 1, 1], vec![3, 2, 1], vec![1], vec![]] {
            let c = var_content(&counts);
            let ws = c.words();
            assert_eq!(ws.len() as u128, c.class_size());
            assert!(ws.windows(2).all(|p| p[0] < p[1]));
            assert!(ws.iter().all(|w| w.content() == c));
        }
        assert!(matches!(var_content(&[3, 3]).words_capped(10), Err(Error::CapExceeded { size: 20, cap: 10 })));
    }

    #[test]
    fn variable_names() {
        let names: Vec<String> = (0..8).map(|i| Var(i).name()).collect();
        assert_eq!(names, ["x", "y", "z", "t", "r", "s", "x1", "x2"]);
        assert_eq!(Var::from_base_name('t'), Some(Var(3)));
        assert_eq!(Var::from_base_name('a'), None);
    }

    #[test]
    fn partitions_are_nonincreasing() {
        let p = partitions(4, 3);
        assert_eq!(p, vec![vec![4, 0, 0], vec![3, 1, 0], vec![2, 2, 0], vec![2, 1, 1]]);
    }
}

//! Finite monoids given by Cayley tables, the small built-in monoids, and exhaustive
//! identity evaluation.
//!
//! Presented monoids are built by completing the defining relations to a confluent
//! length-reducing rewriting system and enumerating the irreducible words.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use crate::congruences::{equivalent, CongruenceKind};
use crate::error::{Error, Result};
use crate::identity::Identity;
use crate::word::{words_up_to, Letter, Var, Word};

/// Largest product monoid accepted by [`direct_product`].
pub const MAX_PRODUCT_SIZE: usize = 1_000_000;
/// Largest presented monoid accepted.
pub const MAX_PRESENTED_SIZE: usize = 64;
/// Most variables accepted by [`satisfies`] and [`falsify`].
pub const MAX_EVAL_VARS: usize = 6;
/// Product monoids up to this size have their associativity checked directly.
const ASSOC_CHECK_LIMIT: usize = 256;

#[derive(Clone, Debug)]
enum Repr {
    Table(Vec<u32>),
    Product(Box<FiniteMonoid>, Box<FiniteMonoid>),
}

/// A finite monoid with elements `0..size`.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    pub name: String,
    size: usize,
    repr: Repr,
    identity: usize,
    zero: Option<usize>,
    names: Vec<String>,
}

impl FiniteMonoid {
    /// Builds a monoid from a table; validates identity, zero and associativity.
    pub fn from_table(name: &str, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteMonoid> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Construction(format!("{name}: malformed table")));
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Construction(format!("{name}: no identity element")))?;
        let zero = (0..n).find(|&z| n > 1 && (0..n).all(|x| table[z][x] == z && table[x][z] == z));
        let m = FiniteMonoid { name: name.to_string(), size: n, repr: Repr::Table(flat), identity, zero, names };
        m.check_associative()?;
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity_element(&self) -> usize {
        self.identity
    }

    pub fn zero_element(&self) -> Option<usize> {
        self.zero
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    /// Index of the element called `name`.
    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t[a * self.size + b] as usize,
            Repr::Product(m, n) => {
                let k = n.size;
                m.mul(a / k, b / k) * k + n.mul(a % k, b % k)
            }
        }
    }

    /// The full Cayley table, row `a` column `b` holding `a·b`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|a| (0..self.size).map(|b| self.mul(a, b)).collect()).collect()
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Construction(format!(
                            "{}: ({}{}){} differs from {}({}{})",
                            self.name,
                            self.names[a],
                            self.names[b],
                            self.names[c],
                            self.names[a],
                            self.names[b],
                            self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates a word under an assignment.
    pub fn eval(&self, w: &Word<Var>, assign: &BTreeMap<Var, usize>) -> usize {
        w.iter().fold(self.identity, |acc, v| self.mul(acc, assign[v]))
    }
}

impl fmt::Display for FiniteMonoid {
    /// Prints the Cayley table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.names.iter().map(|n| n.chars().count()).max().unwrap_or(1);
        write!(f, "{:>width$} |", "·")?;
        for n in &self.names {
            write!(f, " {n:>width$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat((width + 1) * (self.size + 1) + 1))?;
        for a in 0..self.size {
            write!(f, "{:>width$} |", self.names[a])?;
            for b in 0..self.size {
                write!(f, " {:>width$}", self.names[self.mul(a, b)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A monoid presentation over generators named by ASCII letters. The symbol `0`
/// denotes an adjoined zero.
struct Presentation<'a> {
    generators: &'a str,
    relations: &'a [(&'a str, &'a str)],
}

type Rule = (Vec<u8>, Vec<u8>);

const ZERO: u8 = b'0';

/// Shortlex order with `0` smallest.
fn shortlex_gt(a: &[u8], b: &[u8]) -> bool {
    (a.len(), a) > (b.len(), b)
}

fn reduce(rules: &[Rule], w: &[u8]) -> Vec<u8> {
    let mut cur = w.to_vec();
    'outer: loop {
        for (l, r) in rules {
            if let Some(p) = cur.windows(l.len()).position(|win| win == l.as_slice()) {
                cur.splice(p..p + l.len(), r.iter().copied());
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Knuth-Bendix completion for a small string rewriting system.
fn complete(mut rules: Vec<Rule>) -> Result<Vec<Rule>> {
    const MAX_RULES: usize = 200;
    loop {
        let mut new_rules: Vec<Rule> = Vec::new();
        for (i, (l1, r1)) in rules.iter().enumerate() {
            for (j, (l2, r2)) in rules.iter().enumerate() {
                // overlaps: a proper suffix of l1 equal to a proper prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut a = r1.clone();
                        a.extend_from_slice(&l2[k..]);
                        let mut b = l1[..l1.len() - k].to_vec();
                        b.extend_from_slice(r2);
                        new_rules.push((a, b));
                    }
                }
                // inclusion: l2 a factor of l1
                if i != j && l2.len() <= l1.len() {
                    if let Some(p) = l1.windows(l2.len()).position(|w| w == l2.as_slice()) {
                        let mut b = l1[..p].to_vec();
                        b.extend_from_slice(r2);
                        b.extend_from_slice(&l1[p + l2.len()..]);
                        new_rules.push((r1.clone(), b));
                    }
                }
            }
        }
        let mut added = false;
        for (a, b) in new_rules {
            let (a, b) = (reduce(&rules, &a), reduce(&rules, &b));
            if a != b {
                let rule = if shortlex_gt(&a, &b) { (a, b) } else { (b, a) };
                rules.push(rule);
                added = true;
                if rules.len() > MAX_RULES {
                    return Err(Error::Construction("completion did not terminate".into()));
                }
            }
        }
        // drop rules whose left side is reducible by another rule
        let snapshot = rules.clone();
        rules = snapshot
            .iter()
            .enumerate()
            .filter(|(i, (l, _))| {
                !snapshot.iter().enumerate().any(|(j, (l2, _))| {
                    j != *i
                        && l2.len() <= l.len()
                        && l.windows(l2.len()).any(|w| w == l2.as_slice())
                        && (l2 != l || j < *i)
                })
            })
            .map(|(_, r)| r.clone())
            .collect();
        for k in 0..rules.len() {
            let (l, r) = rules[k].clone();
            let others: Vec<Rule> = rules.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, r)| r.clone()).collect();
            rules[k] = (l, reduce(&others, &r));
        }
        if !added {
            return Ok(rules);
        }
    }
}

fn presented(name: &str, p: Presentation<'_>) -> Result<FiniteMonoid> {
    let gens: Vec<u8> = p.generators.bytes().collect();
    let uses_zero = p.relations.iter().any(|(l, r)| l.contains('0') || r.contains('0'));
    let mut rules: Vec<Rule> = Vec::new();
    for (l, r) in p.relations {
        let (l, r) = (l.as_bytes().to_vec(), r.as_bytes().to_vec());
        if l != r {
            rules.push(if shortlex_gt(&l, &r) { (l, r) } else { (r, l) });
        }
    }
    if uses_zero {
        for &g in gens.iter().chain([&ZERO]) {
            rules.push((vec![ZERO, g], vec![ZERO]));
            if g != ZERO {
                rules.push((vec![g, ZERO], vec![ZERO]));
            }
        }
    }
    let rules = complete(rules)?;
    let mut alphabet = gens.clone();
    if uses_zero {
        alphabet.push(ZERO);
    }
    // enumerate irreducible words reachable from the empty word
    let mut elements: Vec<Vec<u8>> = vec![Vec::new()];
    let mut seen: HashSet<Vec<u8>> = HashSet::from([Vec::new()]);
    let mut queue = VecDeque::from([Vec::new()]);
    while let Some(w) = queue.pop_front() {
        for &g in &alphabet {
            let mut next = w.clone();
            next.push(g);
            let next = reduce(&rules, &next);
            if seen.insert(next.clone()) {
                if seen.len() > MAX_PRESENTED_SIZE {
                    return Err(Error::Construction(format!("{name}: more than {MAX_PRESENTED_SIZE} normal forms")));
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    // identity first, zero last, shortlex in between
    elements.sort_by_key(|w| (w == &[ZERO], w.len(), w.clone()));
    let index: BTreeMap<Vec<u8>, usize> = elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut table = vec![vec![0; elements.len()]; elements.len()];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let mut ab = a.clone();
            ab.extend_from_slice(b);
            let ab = reduce(&rules, &ab);
            table[i][j] = *index
                .get(&ab)
                .ok_or_else(|| Error::Construction(format!("{name}: product leaves the normal forms")))?;
        }
    }
    let names = elements
        .iter()
        .map(|w| if w.is_empty() { "1".to_string() } else { String::from_utf8_lossy(w).into_owned() })
        .collect();
    let m = FiniteMonoid::from_table(name, names, table)?;
    // the defining relations must hold in the result
    for (l, r) in p.relations {
        let val = |s: &str| {
            s.bytes().fold(m.identity, |acc, c| {
                let w = if c == ZERO { vec![ZERO] } else { vec![c] };
                m.mul(acc, index[&reduce(&rules, &w)])
            })
        };
        if val(l) != val(r) {
            return Err(Error::Construction(format!("{name}: relation {l}={r} fails")));
        }
    }
    Ok(m)
}

/// The five order-preserving extensive self-maps of the chain `1 < 2 < 3`, composed
/// left to right.
fn j2() -> Result<FiniteMonoid> {
    let mut maps: Vec<[u8; 3]> = Vec::new();
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            for c in 1..=3u8 {
                let f = [a, b, c];
                let extensive = (0..3).all(|i| f[i] > i as u8);
                let monotone = a <= b && b <= c;
                if extensive && monotone {
                    maps.push(f);
                }
            }
        }
    }
    let compose = |f: &[u8; 3], g: &[u8; 3]| -> [u8; 3] { [0, 1, 2].map(|i| g[f[i] as usize - 1]) };
    let table = maps
        .iter()
        .map(|f| maps.iter().map(|g| maps.iter().position(|h| *h == compose(f, g)).unwrap()).collect())
        .collect();
    let names = maps.iter().map(|f| f.iter().map(|d| d.to_string()).collect()).collect();
    FiniteMonoid::from_table("J2", names, table)
}

/// Names accepted by [`builtin`].
pub const BUILTINS: [&str; 6] = ["J1", "J1dual", "FlipL", "FlipR", "SAB", "J2"];

/// One of the built-in monoids.
pub fn builtin(name: &str) -> Result<FiniteMonoid> {
    let p = |generators, relations| Presentation { generators, relations };
    match name {
        "J1" => presented(name, p("ab", &[("ab", "0"), ("ba", "a"), ("bb", "b")])),
        "J1dual" => presented(name, p("ab", &[("ab", "a"), ("ba", "0"), ("bb", "b")])),
        "FlipL" => presented(name, p("ef", &[("ee", "e"), ("ef", "e"), ("fe", "f"), ("ff", "f")])),
        "FlipR" => presented(name, p("ef", &[("ee", "e"), ("ef", "f"), ("fe", "e"), ("ff", "f")])),
        "SAB" => presented(name, p("ab", &[("aa", "0"), ("ba", "0"), ("bb", "0")])),
        "J2" => j2(),
        _ => {
            let parts: Vec<&str> = name.split(['x', '×', '*']).map(str::trim).collect();
            if parts.len() > 1 && parts.iter().all(|p| BUILTINS.contains(p)) {
                let mut acc = builtin(parts[0])?;
                for p in &parts[1..] {
                    acc = direct_product(&acc, &builtin(p)?)?;
                }
                Ok(acc)
            } else {
                Err(Error::UnknownMonoid(name.to_string()))
            }
        }
    }
}

/// The direct product with componentwise multiplication. Elements are numbered
/// `i·|N| + j`.
pub fn direct_product(m: &FiniteMonoid, n: &FiniteMonoid) -> Result<FiniteMonoid> {
    let size = m
        .size
        .checked_mul(n.size)
        .filter(|&s| s <= MAX_PRODUCT_SIZE)
        .ok_or_else(|| Error::BoundExceeded(format!("product above {MAX_PRODUCT_SIZE} elements")))?;
    let names = (0..size).map(|i| format!("({},{})", m.names[i / n.size], n.names[i % n.size])).collect();
    let zero = match (m.zero, n.zero) {
        (Some(a), Some(b)) => Some(a * n.size + b),
        _ => None,
    };
    let p = FiniteMonoid {
        name: format!("{}x{}", m.name, n.name),
        size,
        repr: Repr::Product(Box::new(m.clone()), Box::new(n.clone())),
        identity: m.identity * n.size + n.identity,
        zero,
        names,
    };
    // factors are associative already; small products are checked directly as well
    if size <= ASSOC_CHECK_LIMIT {
        p.check_associative()?;
    }
    Ok(p)
}

/// An assignment of monoid elements to variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub assignment: BTreeMap<Var, usize>,
}

impl Evaluation {
    pub fn describe(&self, m: &FiniteMonoid) -> String {
        let parts: Vec<String> = self.assignment.iter().map(|(v, &e)| format!("{v}↦{}", m.element_name(e))).collect();
        parts.join(", ")
    }
}

/// The first falsifying evaluation in mixed-radix order (first variable most significant).
pub fn falsify(m: &FiniteMonoid, id: &Identity) -> Result<Option<Evaluation>> {
    let vars: Vec<Var> = id.support().into_iter().collect();
    if vars.len() > MAX_EVAL_VARS {
        return Err(Error::BoundExceeded(format!("{} variables, evaluation limited to {MAX_EVAL_VARS}", vars.len())));
    }
    if id.is_trivial() {
        return Ok(None);
    }
    let k = vars.len();
    let mut digits = vec![0usize; k];
    let mut assign: BTreeMap<Var, usize> = vars.iter().map(|&v| (v, 0)).collect();
    loop {
        for (v, &d) in vars.iter().zip(&digits) {
            assign.insert(*v, d);
        }
        if m.eval(&id.lhs, &assign) != m.eval(&id.rhs, &assign) {
            return Ok(Some(Evaluation { assignment: assign }));
        }
        // increment, least significant digit last
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < m.size {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Whether every evaluation gives equal values on both sides.
pub fn satisfies(m: &FiniteMonoid, id: &Identity) -> Result<bool> {
    Ok(falsify(m, id)?.is_none())
}

/// Searches for a substitution of letter words over `[rank]` of length at most
/// `max_sub_len` whose images of the two sides are not `kind`-equivalent. A miss
/// does not prove the identity holds.
pub fn falsify_in_quotient(
    kind: CongruenceKind,
    rank: u32,
    id: &Identity,
    max_sub_len: usize,
) -> Result<Option<BTreeMap<Var, Word<Letter>>>> {
    if rank > 3 || max_sub_len > 3 {
        return Err(Error::BoundExceeded("rank and image length are limited to 3".into()));
    }
    let alphabet: Vec<Letter> = (1..=rank).filter_map(Letter::new).collect();
    let images = words_up_to(&alphabet, max_sub_len);
    let vars: Vec<Var> = id.support().into_iter().collect();
    let total = (images.len() as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    if total > 10_000_000 {
        return Err(Error::BoundExceeded(format!("{total} substitutions")));
    }
    let mut digits = vec![0usize; vars.len()];
    loop {
        let sub: BTreeMap<Var, Word<Letter>> =
            vars.iter().zip(&digits).map(|(&v, &d)| (v, images[d].clone())).collect();
        let u = id.lhs.substitute(|v| sub[&v].clone());
        let w = id.rhs.substitute(|v| sub[&v].clone());
        if !equivalent(kind, &u, &w) {
            return Ok(Some(sub));
        }
        let mut i = vars.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < images.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::NamedIdentity::*;
    use crate::parse::parse_identity;

    fn el(m: &FiniteMonoid, n: &str) -> usize {
        m.element(n).unwrap()
    }

    #[test]
    fn j1_table() {
        let m = builtin("J1").unwrap();
        assert_eq!(m.element_names(), ["1", "a", "b", "0"]);
        let (a, b, z) = (el(&m, "a"), el(&m, "b"), el(&m, "0"));
        assert_eq!(m.mul(a, a), z);
        assert_eq!(m.mul(a, b), z);
        assert_eq!(m.mul(b, a), a);
        assert_eq!(m.mul(b, b), b);
        assert_eq!(m.zero_element(), Some(z));
    }

    #[test]
    fn sizes() {
        for (name, n) in [("J1", 4), ("J1dual", 4), ("FlipL", 3), ("FlipR", 3), ("SAB", 5), ("J2", 5)] {
            assert_eq!(builtin(name).unwrap().size(), n, "{name}");
        }
        assert!(matches!(builtin("plactic"), Err(Error::UnknownMonoid(_))));
    }

    #[test]
    fn sab_products() {
        let m = builtin("SAB").unwrap();
        assert_eq!(m.mul(el(&m, "a"), el(&m, "b")), el(&m, "ab"));
        assert_eq!(m.mul(el(&m, "b"), el(&m, "a")), el(&m, "0"));
    }

    #[test]
    fn products() {
        let rb = direct_product(&builtin("FlipL").unwrap(), &builtin("FlipR").unwrap()).unwrap();
        assert_eq!(rb.size(), 9);
        let j = direct_product(&builtin("J1dual").unwrap(), &builtin("J1").unwrap()).unwrap();
        assert_eq!(j.size(), 16);
        assert_eq!(builtin("J1dual x J1").unwrap().size(), 16);
        let trivial = FiniteMonoid::from_table("1", vec!["1".into()], vec![vec![0]]).unwrap();
        let m = builtin("J2").unwrap();
        assert_eq!(direct_product(&m, &trivial).unwrap().table(), m.table());
        let big = builtin("J2").unwrap();
        let mut acc = big.clone();
        for _ in 0..7 {
            acc = direct_product(&acc, &big).unwrap();
        }
        assert!(direct_product(&acc, &big).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let j1 = builtin("J1").unwrap();
        assert!(satisfies(&j1, &R1.identity()).unwrap());
        assert!(!satisfies(&j1, &L1.identity()).unwrap());
        assert_eq!(falsify(&j1, &R1.identity()).unwrap(), None);
        let w = falsify(&j1, &L1.identity()).unwrap().unwrap();
        assert_eq!(w.describe(&j1), "x↦b, y↦a");
        let flip = builtin("FlipL").unwrap();
        let w = falsify(&flip, &parse_identity("xy = yx").unwrap()).unwrap().unwrap();
        assert_eq!(w.describe(&flip), "x↦e, y↦f");
        assert!(satisfies(&j1, &parse_identity("x = x").unwrap()).unwrap());
        assert!(satisfies(&j1, &parse_identity("xxy = xxxy").unwrap()).unwrap());
        let seven = parse_identity("xyztrsa = xyztrsa").unwrap();
        assert!(satisfies(&j1, &seven).is_err());
    }

    #[test]
    fn quotient_search() {
        assert!(falsify_in_quotient(CongruenceKind::Sylv, 2, &L2.identity(), 1).unwrap().is_some());
        assert!(falsify_in_quotient(CongruenceKind::Sylv, 2, &R2.identity(), 2).unwrap().is_none());
        let id = parse_identity("xxyzy = yxxzy").unwrap();
        assert!(falsify_in_quotient(CongruenceKind::Jst, 2, &id, 1).unwrap().is_none());
        assert!(falsify_in_quotient(CongruenceKind::Sylv, 4, &R2.identity(), 1).is_err());
    }
}

//! Equational deduction from balanced bases.
//!
//! A balanced basis never changes the content of a word, so derivability of a
//! balanced identity is decided by a search confined to one content class.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::Identity;
use crate::properties::fingerprint;
use crate::varieties::{theory_satisfies, VarietyDescriptor};
use crate::word::{partitions, var_content, Content, Var, Word};

/// One application `r·ψ(p)·s → r·ψ(q)·s` of a basis identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeductionStep {
    /// Index into the basis.
    pub basis_index: usize,
    pub basis_identity: Identity,
    /// `true` when the identity was applied left to right.
    pub forward: bool,
    pub substitution: BTreeMap<Var, Word<Var>>,
    pub left_context: Word<Var>,
    pub right_context: Word<Var>,
    pub result: Word<Var>,
}

/// A basis identity with some variables erased, oriented for rewriting.
struct Rule {
    from: Vec<Var>,
    to: Vec<Var>,
    basis_index: usize,
    forward: bool,
    erased: Vec<Var>,
}

/// Rewriting with a fixed basis. Erasing substitutions are handled by precomputing
/// every deletion of variables, so matching only needs non-empty images.
pub struct Rewriter {
    basis: Vec<Identity>,
    rules: Vec<Rule>,
}

impl Rewriter {
    pub fn new(basis: &[Identity]) -> Rewriter {
        let mut rules = Vec::new();
        for (k, id) in basis.iter().enumerate() {
            let vars: Vec<Var> = id.support().into_iter().collect();
            for mask in 0u32..(1 << vars.len()) {
                let erased: Vec<Var> = (0..vars.len()).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
                let keep = |w: &Word<Var>| w.iter().copied().filter(|v| !erased.contains(v)).collect::<Vec<_>>();
                let (p, q) = (keep(&id.lhs), keep(&id.rhs));
                if p == q {
                    continue;
                }
                rules.push(Rule {
                    from: p.clone(),
                    to: q.clone(),
                    basis_index: k,
                    forward: true,
                    erased: erased.clone(),
                });
                rules.push(Rule { from: q, to: p, basis_index: k, forward: false, erased });
            }
        }
        Rewriter { basis: basis.to_vec(), rules }
    }

    /// Every word reachable in one step, with the first step found for each.
    pub fn one_step(&self, w: &Word<Var>) -> BTreeMap<Word<Var>, DeductionStep> {
        let mut out = BTreeMap::new();
        let ws = w.as_slice();
        for rule in &self.rules {
            if rule.from.is_empty() {
                // ψ(p) = ε matches at every position
                for i in 0..=ws.len() {
                    self.emit(rule, ws, i, i, &BTreeMap::new(), w, &mut out);
                }
                continue;
            }
            for start in 0..ws.len() {
                let mut binding = BTreeMap::new();
                self.match_at(rule, ws, start, 0, start, &mut binding, w, &mut out);
            }
        }
        out.remove(w);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn match_at(
        &self,
        rule: &Rule,
        ws: &[Var],
        start: usize,
        j: usize,
        pos: usize,
        binding: &mut BTreeMap<Var, (usize, usize)>,
        w: &Word<Var>,
        out: &mut BTreeMap<Word<Var>, DeductionStep>,
    ) {
        if j == rule.from.len() {
            let images = binding.iter().map(|(&v, &(a, b))| (v, Word::new(ws[a..b].to_vec()))).collect();
            self.emit(rule, ws, start, pos, &images, w, out);
            return;
        }
        let v = rule.from[j];
        if let Some(&(a, b)) = binding.get(&v) {
            let len = b - a;
            if pos + len <= ws.len() && ws[pos..pos + len] == ws[a..b] {
                self.match_at(rule, ws, start, j + 1, pos + len, binding, w, out);
            }
            return;
        }
        let remaining = rule.from.len() - j - 1;
        let mut end = pos + 1;
        while end + remaining <= ws.len() {
            binding.insert(v, (pos, end));
            self.match_at(rule, ws, start, j + 1, end, binding, w, out);
            binding.remove(&v);
            end += 1;
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn emit(
        &self,
        rule: &Rule,
        ws: &[Var],
        start: usize,
        end: usize,
        images: &BTreeMap<Var, Word<Var>>,
        w: &Word<Var>,
        out: &mut BTreeMap<Word<Var>, DeductionStep>,
    ) {
        let mut result: Vec<Var> = ws[..start].to_vec();
        for v in &rule.to {
            result.extend_from_slice(images[v].as_slice());
        }
        result.extend_from_slice(&ws[end..]);
        let result = Word::new(result);
        if result == *w || out.contains_key(&result) {
            return;
        }
        let mut substitution = images.clone();
        for &x in &rule.erased {
            substitution.insert(x, Word::empty());
        }
        out.insert(
            result.clone(),
            DeductionStep {
                basis_index: rule.basis_index,
                basis_identity: self.basis[rule.basis_index].clone(),
                forward: rule.forward,
                substitution,
                left_context: Word::new(ws[..start].to_vec()),
                right_context: Word::new(ws[end..].to_vec()),
                result,
            },
        );
    }
}

/// Words obtained from `w` by one application of a basis identity.
pub fn one_step(w: &Word<Var>, basis: &[Identity]) -> BTreeSet<Word<Var>> {
    Rewriter::new(basis).one_step(w).into_keys().collect()
}

fn check_balanced(id: &Identity, basis: &[Identity]) -> Result<()> {
    if basis.iter().chain([id]).all(Identity::is_balanced) {
        Ok(())
    } else {
        Err(Error::PreconditionViolated)
    }
}

fn check_cap(content: &Content<Var>, cap: usize) -> Result<()> {
    let size = content.class_size();
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

/// A derivation of `id` from `basis`, shortest in number of steps, or `None` when
/// the right side is unreachable inside the content class.
pub fn derive(id: &Identity, basis: &[Identity], cap: usize) -> Result<Option<Vec<DeductionStep>>> {
    check_balanced(id, basis)?;
    check_cap(&id.lhs.content(), cap)?;
    if id.is_trivial() {
        return Ok(Some(Vec::new()));
    }
    let rw = Rewriter::new(basis);
    let mut parent: HashMap<Word<Var>, Option<(Word<Var>, DeductionStep)>> = HashMap::new();
    parent.insert(id.lhs.clone(), None);
    let mut queue = VecDeque::from([id.lhs.clone()]);
    while let Some(w) = queue.pop_front() {
        for (next, step) in rw.one_step(&w) {
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((w.clone(), step)));
            if next == id.rhs {
                let mut steps = Vec::new();
                let mut cur = next;
                while let Some(Some((prev, step))) = parent.get(&cur) {
                    steps.push(step.clone());
                    cur = prev.clone();
                }
                steps.reverse();
                return Ok(Some(steps));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// Whether `id` is a consequence of `basis`.
pub fn is_consequence(id: &Identity, basis: &[Identity], cap: usize) -> Result<bool> {
    Ok(derive(id, basis, cap)?.is_some())
}

/// Splits a content class into the classes of the congruence generated by `basis`.
/// Returns the words in lexicographic order and a component id per word.
pub fn consequence_classes(
    content: &Content<Var>,
    basis: &[Identity],
    cap: usize,
) -> Result<(Vec<Word<Var>>, Vec<usize>)> {
    if !basis.iter().all(Identity::is_balanced) {
        return Err(Error::PreconditionViolated);
    }
    let words = content.words_capped(cap)?;
    let index: HashMap<&Word<Var>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rw = Rewriter::new(basis);
    let mut comp = vec![usize::MAX; words.len()];
    let mut next_id = 0;
    for s in 0..words.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next_id;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for w in rw.one_step(&words[i]).into_keys() {
                let j = index[&w];
                if comp[j] == usize::MAX {
                    comp[j] = next_id;
                    queue.push_back(j);
                }
            }
        }
        next_id += 1;
    }
    Ok((words, comp))
}

/// Key whose equality within a content class means the identity lies in the theory.
fn theory_key(v: &VarietyDescriptor, w: &Word<Var>) -> Vec<u32> {
    let mut key = Vec::new();
    for &p in &v.properties {
        key.extend(fingerprint(w, p));
        key.push(u32::MAX - 1);
    }
    key
}

/// Whether no other word of the same content forms an identity with `w` in the theory.
pub fn is_isoterm(v: &VarietyDescriptor, w: &Word<Var>, cap: usize) -> Result<bool> {
    let words = w.content().words_capped(cap)?;
    Ok(words.iter().all(|u| u == w || !theory_satisfies(v, &Identity::new(w.clone(), u.clone()))))
}

/// The least side length of a nontrivial identity with exactly `n_vars` variables in
/// the theory of `v`.
pub fn min_identity_length(v: &VarietyDescriptor, n_vars: usize, max_len: usize) -> Result<Option<usize>> {
    if n_vars > 4 || max_len > 8 {
        return Err(Error::BoundExceeded("at most 4 variables and length 8".into()));
    }
    for len in n_vars.max(1)..=max_len {
        for counts in partitions(len, n_vars).into_iter().filter(|c| c.iter().all(|&k| k > 0)) {
            let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
            for w in var_content(&counts).words() {
                if seen.insert(theory_key(v, &w), ()).is_some() {
                    return Ok(Some(len));
                }
            }
        }
    }
    Ok(None)
}

/// Renames the blocks of a factorization: equal blocks get equal variables.
fn pattern_of(blocks: &[&[Var]]) -> (Vec<Var>, Vec<Vec<Var>>) {
    let mut images: Vec<Vec<Var>> = Vec::new();
    let mut pattern = Vec::with_capacity(blocks.len());
    for b in blocks {
        let k = match images.iter().position(|im| im.as_slice() == *b) {
            Some(k) => k,
            None => {
                images.push(b.to_vec());
                images.len() - 1
            }
        };
        pattern.push(Var(k as u32));
    }
    (pattern, images)
}

/// Consequence classes of bounded identities, keyed by content and then by block shape.
type ClassCache = HashMap<Content<Var>, HashMap<Vec<u32>, Vec<Word<Var>>>>;

/// Decides whether `target` follows from every nontrivial identity of the theory of
/// `v` having at most `max_vars` variables and sides of length at most `len_cap`,
/// leaving out identities equivalent to one in `exclusions`.
///
/// Any application of such an identity with an erasing or non-injective substitution
/// is also an application of a smaller identity of the theory with an injective
/// non-erasing one. Those smaller identities have fewer variables, so they are never
/// excluded as long as every exclusion uses exactly `max_vars` variables.
pub fn derivable_from_restricted_theory(
    target: &Identity,
    v: &VarietyDescriptor,
    max_vars: usize,
    len_cap: usize,
    class_cap: usize,
    exclusions: &[Identity],
) -> Result<bool> {
    if !target.is_balanced() {
        return Err(Error::PreconditionViolated);
    }
    if exclusions.iter().any(|x| x.support().len() != max_vars) {
        return Err(Error::BoundExceeded(format!("exclusions must use exactly {max_vars} variables")));
    }
    check_cap(&target.lhs.content(), class_cap)?;
    if target.is_trivial() {
        return Ok(true);
    }
    let excluded: BTreeSet<Identity> = exclusions.iter().map(Identity::canonical).collect();
    let mut classes: ClassCache = HashMap::new();
    let mut replacements: HashMap<Vec<Var>, Vec<Vec<Var>>> = HashMap::new();

    let mut seen: BTreeSet<Word<Var>> = BTreeSet::from([target.lhs.clone()]);
    let mut queue = VecDeque::from([target.lhs.clone()]);
    while let Some(w) = queue.pop_front() {
        let ws = w.as_slice();
        for i in 0..ws.len() {
            for j in i + 1..=ws.len() {
                let factor = &ws[i..j];
                let reps = replacements
                    .entry(factor.to_vec())
                    .or_insert_with(|| factor_replacements(factor, v, max_vars, len_cap, &excluded, &mut classes));
                for r in reps.iter() {
                    let mut next = ws[..i].to_vec();
                    next.extend_from_slice(r);
                    next.extend_from_slice(&ws[j..]);
                    let next = Word::new(next);
                    if next == target.rhs {
                        return Ok(true);
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Every `ψ(q)` for a factorization `factor = ψ(p)` into distinct-or-equal blocks and
/// an allowed identity `p ≈ q`.
fn factor_replacements(
    factor: &[Var],
    v: &VarietyDescriptor,
    max_vars: usize,
    len_cap: usize,
    excluded: &BTreeSet<Identity>,
    classes: &mut ClassCache,
) -> Vec<Vec<Var>> {
    let n = factor.len();
    let mut out: BTreeSet<Vec<Var>> = BTreeSet::new();
    // bit i of `cuts` marks a block boundary after position i
    for cuts in 0u64..(1u64 << (n - 1)) {
        let blocks_count = cuts.count_ones() as usize + 1;
        if blocks_count > len_cap {
            continue;
        }
        let mut blocks: Vec<&[Var]> = Vec::with_capacity(blocks_count);
        let mut start = 0;
        for i in 0..n - 1 {
            if cuts >> i & 1 == 1 {
                blocks.push(&factor[start..=i]);
                start = i + 1;
            }
        }
        blocks.push(&factor[start..]);
        let (pattern, images) = pattern_of(&blocks);
        if images.len() > max_vars {
            continue;
        }
        let p = Word::new(pattern);
        let content = p.content();
        let groups = classes.entry(content.clone()).or_insert_with(|| {
            let mut g: HashMap<Vec<u32>, Vec<Word<Var>>> = HashMap::new();
            for w in content.words() {
                g.entry(theory_key(v, &w)).or_default().push(w);
            }
            g
        });
        for q in &groups[&theory_key(v, &p)] {
            if *q == p || excluded.contains(&Identity::new(p.clone(), q.clone()).canonical()) {
                continue;
            }
            let image: Vec<Var> = q.iter().flat_map(|x| images[x.0 as usize].iter().copied()).collect();
            out.insert(image);
        }
    }
    out.into_iter().collect()
}

/// Every nontrivial identity of the theory of `v` with at most `max_vars` variables and
/// sides of length at most `max_len`, one per unordered pair of words with
/// nonincreasing variable multiplicities.
pub fn restricted_theory(v: &VarietyDescriptor, max_vars: usize, max_len: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for counts in partitions(len, max_vars) {
            let words = var_content(&counts).words();
            for (i, u) in words.iter().enumerate() {
                for w in &words[i + 1..] {
                    let id = Identity::new(u.clone(), w.clone());
                    if theory_satisfies(v, &id) {
                        out.push(id);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::NamedIdentity::*;
    use crate::parse::parse_identity;
    use crate::varieties::descriptor;

    #[test]
    fn single_steps() {
        assert!(one_step(&Word::vars("xxyy"), &[L1.identity()]).contains(&Word::vars("xyxy")));
        assert!(one_step(&Word::vars("xyxy"), &[R2.identity()]).contains(&Word::vars("yxxy")));
        assert!(one_step(&Word::vars("xyxy"), &[]).is_empty());
    }

    #[test]
    fn steps_carry_a_valid_trace() {
        let basis = [L1.identity(), R2.identity()];
        let rw = Rewriter::new(&basis);
        let w = Word::vars("xyzxyz");
        for (result, step) in rw.one_step(&w) {
            let id = &basis[step.basis_index];
            let (p, q) = if step.forward { (&id.lhs, &id.rhs) } else { (&id.rhs, &id.lhs) };
            let sub = |x: &Word<Var>| x.substitute(|v| step.substitution[&v].clone());
            assert_eq!(step.left_context.concat(&sub(p)).concat(&step.right_context), w);
            assert_eq!(step.left_context.concat(&sub(q)).concat(&step.right_context), result);
        }
    }

    #[test]
    fn consequences() {
        assert!(is_consequence(&M4.identity(), &[L1.identity(), R2.identity()], 10_000).unwrap());
        assert!(is_consequence(&R2.identity(), &[L1.identity(), M4.identity()], 100_000).unwrap());
        assert!(!is_consequence(&L2.identity(), &[R2.identity()], 10_000).unwrap());
        let steps = derive(&M4.identity(), &[L1.identity(), R2.identity()], 10_000).unwrap().unwrap();
        assert_eq!(steps.last().unwrap().result, M4.identity().rhs);
        assert!(matches!(is_consequence(&L2.identity(), &[R2.identity()], 10), Err(Error::CapExceeded { .. })));
        assert!(is_consequence(&parse_identity("xy = x").unwrap(), &[], 10).is_err());
    }

    #[test]
    fn isoterms() {
        let cap = 100_000;
        assert!(is_isoterm(&descriptor("hypo").unwrap(), &Word::vars("xzxyty"), cap).unwrap());
        assert!(is_isoterm(&descriptor("mst").unwrap(), &Word::vars("xzytxy"), cap).unwrap());
        assert!(is_isoterm(&descriptor("mst").unwrap(), &Word::vars("xyzxty"), cap).unwrap());
        assert!(is_isoterm(&descriptor("jst").unwrap(), &Word::vars("xy"), cap).unwrap());
        assert!(!is_isoterm(&descriptor("jst").unwrap(), &Word::vars("xxy"), cap).unwrap());
    }

    #[test]
    fn shortest_identities() {
        let v = descriptor("mst^S").unwrap();
        assert_eq!(min_identity_length(&v, 2, 8).unwrap(), Some(4));
        assert_eq!(min_identity_length(&v, 3, 8).unwrap(), Some(5));
        assert_eq!(min_identity_length(&descriptor("baxt").unwrap(), 1, 8).unwrap(), None);
        assert!(min_identity_length(&v, 5, 8).is_err());
    }

    #[test]
    fn restricted_theories() {
        let mst_s = descriptor("mst^S").unwrap();
        assert!(!derivable_from_restricted_theory(&M3.identity(), &mst_s, 2, 5, 10_000, &[]).unwrap());
        let basis = restricted_theory(&mst_s, 2, 5);
        assert!(!is_consequence(&M3.identity(), &basis, 10_000).unwrap());
        let hm = descriptor("hypovmst").unwrap();
        assert!(derivable_from_restricted_theory(&M3.identity(), &hm, 3, 5, 10_000, &[]).unwrap());
        let ls = descriptor("lst^sylv").unwrap();
        assert!(derivable_from_restricted_theory(&M4.identity(), &ls, 2, 4, 1_000, &[]).unwrap());
        assert!(derivable_from_restricted_theory(&M3.identity(), &hm, 3, 5, 10_000, &[M4.identity()]).is_err());
    }

    #[test]
    fn restricted_search_agrees_with_materialized_basis() {
        let v = descriptor("mst^S").unwrap();
        let basis = restricted_theory(&v, 2, 4);
        for id in [M4.identity(), parse_identity("xyyx = yxxy").unwrap(), L1.identity()] {
            let direct = is_consequence(&id, &basis, 10_000).unwrap();
            let lazy = derivable_from_restricted_theory(&id, &v, 2, 4, 10_000, &[]).unwrap();
            assert_eq!(direct, lazy, "{id}");
        }
    }
}

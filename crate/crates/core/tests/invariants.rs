//! Randomized invariants across modules.

use std::collections::BTreeMap;

use proptest::prelude::*;

use plm_core::congruences::{class_bfs, equivalent, invariant, CongruenceKind};
use plm_core::deduction::one_step;
use plm_core::lattice::{build, LatticeName};
use plm_core::parse::{parse_identity, parse_identity_raw, parse_letter_word, parse_var_word};
use plm_core::properties::{clause, fingerprint, implies, PropertyKind};
use plm_core::varieties::{self, join, meet, theory_satisfies};
use plm_core::{Identity, Letter, NamedIdentity, Var, Word};

fn var_word(max_vars: u32, max_len: usize) -> impl Strategy<Value = Word<Var>> {
    prop::collection::vec(0..max_vars, 0..=max_len).prop_map(|v| v.into_iter().map(Var).collect())
}

fn letter_word(rank: u32, max_len: usize) -> impl Strategy<Value = Word<Letter>> {
    prop::collection::vec(1..=rank, 0..=max_len).prop_map(|v| v.into_iter().map(|x| Letter::new(x).unwrap()).collect())
}

/// A word and a permutation of it: the two sides of a balanced identity.
fn balanced(max_vars: u32, max_len: usize) -> impl Strategy<Value = Identity> {
    var_word(max_vars, max_len)
        .prop_flat_map(|u| {
            let v = Just(u.clone().into_vec()).prop_shuffle();
            (Just(u), v)
        })
        .prop_map(|(u, v)| Identity::new(u, Word::new(v)))
}

fn kind() -> impl Strategy<Value = CongruenceKind> {
    prop::sample::select(CongruenceKind::WITH_INVARIANT.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_ignores_renaming_and_sides(id in balanced(4, 8), perm in Just(vec![0u32, 1, 2, 3]).prop_shuffle()) {
        let renamed = Identity::new(
            id.lhs.iter().map(|v| Var(perm[v.0 as usize])).collect(),
            id.rhs.iter().map(|v| Var(perm[v.0 as usize])).collect(),
        );
        prop_assert_eq!(renamed.canonical(), id.canonical());
        prop_assert_eq!(id.swapped().canonical(), id.canonical());
        prop_assert_eq!(id.canonical().canonical(), id.canonical());
    }

    #[test]
    fn identities_round_trip_through_text(id in balanced(6, 10)) {
        let text = id.to_string();
        prop_assert_eq!(parse_identity(&text).unwrap(), id.canonical());
        let raw = parse_identity_raw(&text).unwrap();
        prop_assert!(raw.equivalent_to(&id));
    }

    #[test]
    fn letter_words_round_trip(w in letter_word(12, 10)) {
        prop_assert_eq!(parse_letter_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,24}") {
        let _ = parse_identity(&s);
        let _ = parse_var_word(&s);
        let _ = parse_letter_word(&s);
        let _ = plm_core::parse::parse_basis(&s);
    }

    #[test]
    fn implication_diagram_holds(id in balanced(4, 9)) {
        for p in PropertyKind::ALL {
            for q in PropertyKind::ALL {
                if implies(p, q) && clause(&id.lhs, &id.rhs, p) {
                    prop_assert!(clause(&id.lhs, &id.rhs, q), "{} holds but {} fails on {}", p, q, id);
                }
            }
        }
    }

    #[test]
    fn fingerprints_decide_properties(id in balanced(4, 9)) {
        for p in PropertyKind::ALL {
            prop_assert_eq!(fingerprint(&id.lhs, p) == fingerprint(&id.rhs, p), clause(&id.lhs, &id.rhs, p), "{}", p);
        }
    }

    #[test]
    fn invariants_match_rewriting(k in kind(), u in letter_word(3, 6)) {
        let class = class_bfs(&k.relations(), &u, usize::MAX).unwrap();
        let inv = invariant(k, &u).unwrap();
        for w in &class {
            prop_assert_eq!(&invariant(k, w).unwrap(), &inv);
        }
    }

    #[test]
    fn equivalence_is_symmetric(k in kind(), u in letter_word(3, 6), v in letter_word(3, 6)) {
        prop_assert!(equivalent(k, &u, &u));
        prop_assert_eq!(equivalent(k, &u, &v), equivalent(k, &v, &u));
    }

    #[test]
    fn one_step_is_sound(w in var_word(3, 7), pick in 0usize..26) {
        let v = &varieties::all()[pick];
        for u in one_step(&w, &v.basis_identities()) {
            prop_assert_eq!(u.content(), w.content());
            prop_assert!(theory_satisfies(v, &Identity::new(w.clone(), u.clone())), "{} -> {} in {}", w, u, v.name);
        }
    }

    #[test]
    fn joins_form_a_semilattice(a in 0usize..26, b in 0usize..26, c in 0usize..26) {
        let all = varieties::all();
        let (a, b, c) = (&all[a], &all[b], &all[c]);
        prop_assert_eq!(join(a, b).properties, join(b, a).properties);
        prop_assert_eq!(join(&join(a, b), c).name, join(a, &join(b, c)).name);
        prop_assert!(join(a, b).is_canonical());
    }
}

#[test]
fn descriptor_bounds_match_the_third_lattice() {
    let l3 = build(LatticeName::L3);
    let all: BTreeMap<String, _> = varieties::all().into_iter().map(|v| (v.name.clone(), v)).collect();
    for a in &l3.nodes {
        for b in &l3.nodes {
            assert_eq!(meet(&all[a], &all[b]).unwrap().name, l3.meet(a, b).unwrap(), "{a} ^ {b}");
            assert_eq!(join(&all[a], &all[b]).name, l3.join(a, b).unwrap(), "{a} v {b}");
        }
    }
}

#[test]
fn smaller_lattices_are_sublattices() {
    let l3 = build(LatticeName::L3);
    for l in [LatticeName::L1, LatticeName::L2] {
        let lat = build(l);
        for a in &lat.nodes {
            for b in &lat.nodes {
                assert_eq!(lat.meet(a, b).unwrap(), l3.meet(a, b).unwrap());
                assert_eq!(lat.join(a, b).unwrap(), l3.join(a, b).unwrap());
            }
        }
    }
}

#[test]
fn named_identities_classify_as_documented() {
    use NamedIdentity::*;
    let m3 = varieties::classify(&M3.identity());
    assert!(m3.contains(&"hypo") && !m3.contains(&"S") && !m3.contains(&"sylv"));
    assert!(!m3.contains(&"sylvh") && !m3.contains(&"baxt"));
}

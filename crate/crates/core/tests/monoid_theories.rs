//! Small monoids against the property characterizations of the theories they generate.

use plm_core::monoids::{builtin, satisfies};
use plm_core::properties::{clause, PropertyKind};
use plm_core::varieties::{self, com_join_generator, descriptor, theory_satisfies};
use plm_core::word::{partitions, var_content, words_up_to};
use plm_core::{Identity, Var};

fn balanced_identities(max_len: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    for len in 2..=max_len {
        for counts in partitions(len, 3) {
            let words = var_content(&counts).words();
            for (i, u) in words.iter().enumerate() {
                for w in &words[i + 1..] {
                    out.push(Identity::new(u.clone(), w.clone()));
                }
            }
        }
    }
    out
}

#[test]
fn com_joins_match_property_theories() {
    let ids = balanced_identities(5);
    let mut covered = 0;
    for v in varieties::all() {
        let Some(generator) = com_join_generator(&v.name) else { continue };
        let m = builtin(generator).unwrap();
        for id in &ids {
            assert_eq!(satisfies(&m, id).unwrap(), theory_satisfies(&v, id), "{} via {generator}: {id}", v.name);
        }
        covered += 1;
    }
    assert_eq!(covered, 13);
}

#[test]
fn left_flip_flop_needs_equal_support_and_first_occurrences() {
    let flip = builtin("FlipL").unwrap();
    let words = words_up_to(&[Var(0), Var(1), Var(2)], 4);
    for u in &words {
        for w in &words {
            let id = Identity::new(u.clone(), w.clone());
            let expected = u.support() == w.support() && clause(u, w, PropertyKind::SPre);
            assert_eq!(satisfies(&flip, &id).unwrap(), expected, "{id}");
        }
    }
    // not balanced, yet satisfied
    assert!(satisfies(&flip, &Identity::from_strs("x", "xx")).unwrap());
    assert!(!theory_satisfies(&descriptor("lst").unwrap(), &Identity::from_strs("x", "xx")));
}

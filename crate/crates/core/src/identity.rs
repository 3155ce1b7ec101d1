//! Monoid identities `u ≈ v` over variables, canonical forms, and the named identities.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::word::{Var, Word};

/// A formal equality of two variable words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Identity {
    pub lhs: Word<Var>,
    pub rhs: Word<Var>,
}

impl Identity {
    /// Builds the identity as given, without canonicalizing.
    pub fn new(lhs: Word<Var>, rhs: Word<Var>) -> Identity {
        Identity { lhs, rhs }
    }

    /// Shorthand for literals over `x y z t r s`.
    pub fn from_strs(lhs: &str, rhs: &str) -> Identity {
        Identity::new(Word::vars(lhs), Word::vars(rhs))
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn is_balanced(&self) -> bool {
        self.lhs.content() == self.rhs.content()
    }

    /// Variables occurring on either side.
    pub fn support(&self) -> BTreeSet<Var> {
        let mut s = self.lhs.support();
        s.extend(self.rhs.support());
        s
    }

    pub fn swapped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    /// Renames variables in order of first appearance (left side, then right),
    /// tries both orientations, and keeps the lexicographically smaller result.
    pub fn canonical(&self) -> Identity {
        let a = rename(&self.lhs, &self.rhs);
        let b = rename(&self.rhs, &self.lhs);
        a.min(b)
    }

    /// Equivalence up to renaming and swapping sides.
    pub fn equivalent_to(&self, other: &Identity) -> bool {
        self.canonical() == other.canonical()
    }

    /// Removes every occurrence of `x` from both sides.
    pub fn delete_var(&self, x: Var) -> Identity {
        let keep: BTreeSet<Var> = self.support().into_iter().filter(|&v| v != x).collect();
        Identity::new(self.lhs.restrict_to(&keep), self.rhs.restrict_to(&keep))
    }
}

fn rename(first: &Word<Var>, second: &Word<Var>) -> Identity {
    let mut map: HashMap<Var, Var> = HashMap::new();
    let mut f = |v: Var| {
        let next = Var(map.len() as u32);
        *map.entry(v).or_insert(next)
    };
    let l: Word<Var> = first.iter().map(|&v| f(v)).collect();
    let r: Word<Var> = second.iter().map(|&v| f(v)).collect();
    Identity::new(l, r)
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The thirteen identities that appear in the finite bases.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NamedIdentity {
    L1,
    R1,
    L2,
    R2,
    M2,
    M3,
    M4,
    O21,
    E21,
    O12,
    E12,
    O22,
    T22,
}

impl NamedIdentity {
    pub const ALL: [NamedIdentity; 13] = [
        NamedIdentity::L1,
        NamedIdentity::R1,
        NamedIdentity::L2,
        NamedIdentity::R2,
        NamedIdentity::M2,
        NamedIdentity::M3,
        NamedIdentity::M4,
        NamedIdentity::O21,
        NamedIdentity::E21,
        NamedIdentity::O12,
        NamedIdentity::E12,
        NamedIdentity::O22,
        NamedIdentity::T22,
    ];

    pub fn tag(self) -> &'static str {
        use NamedIdentity::*;
        match self {
            L1 => "L1",
            R1 => "R1",
            L2 => "L2",
            R2 => "R2",
            M2 => "M2",
            M3 => "M3",
            M4 => "M4",
            O21 => "O21",
            E21 => "E21",
            O12 => "O12",
            E12 => "E12",
            O22 => "O22",
            T22 => "T22",
        }
    }

    pub fn sides(self) -> (&'static str, &'static str) {
        use NamedIdentity::*;
        match self {
            L1 => ("xyx", "xxy"),
            R1 => ("xyx", "yxx"),
            L2 => ("xzytxy", "xzytyx"),
            R2 => ("xyzxty", "yxzxty"),
            M2 => ("xzxyty", "xzyxty"),
            M3 => ("xyxzx", "xxyzx"),
            M4 => ("xxyy", "yyxx"),
            O21 => ("xzytxyry", "xzytyxry"),
            E21 => ("xzytxyrx", "xzytyxrx"),
            O12 => ("xzxytxry", "xzyxtxry"),
            E12 => ("xzxytyrx", "xzyxtyrx"),
            O22 => ("xzytxyrxsy", "xzytyxrxsy"),
            T22 => ("xzytxyrysx", "xzytyxrysx"),
        }
    }

    /// The identity with its usual variable names, not canonicalized.
    pub fn identity(self) -> Identity {
        let (l, r) = self.sides();
        Identity::from_strs(l, r)
    }

    pub fn from_tag(tag: &str) -> Option<NamedIdentity> {
        NamedIdentity::ALL.into_iter().find(|n| n.tag().eq_ignore_ascii_case(tag))
    }
}

impl fmt::Display for NamedIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for NamedIdentity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_identifies_renaming_and_swap() {
        let a = Identity::from_strs("xzytxy", "xzytyx");
        let b = Identity::from_strs("yxtzyt", "yxtzty").swapped();
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.canonical().canonical(), a.canonical());
        assert!(a.equivalent_to(&NamedIdentity::L2.identity()));
    }

    #[test]
    fn balance_and_triviality() {
        assert!(NamedIdentity::L2.identity().is_balanced());
        assert!(!Identity::from_strs("xy", "x").is_balanced());
        assert!(NamedIdentity::M4.identity().is_balanced());
        assert!(Identity::from_strs("x", "x").is_trivial());
    }

    #[test]
    fn named_identities_display_verbatim() {
        assert_eq!(NamedIdentity::O22.identity().to_string(), "xzytxyrxsy = xzytyxrxsy");
        assert_eq!(NamedIdentity::from_tag("m3"), Some(NamedIdentity::M3));
        for n in NamedIdentity::ALL {
            assert!(n.identity().is_balanced(), "{n}");
            assert!(!n.identity().is_trivial(), "{n}");
        }
    }

    #[test]
    fn deleting_a_variable() {
        let id = NamedIdentity::L2.identity().delete_var(Var(2));
        assert_eq!(id, Identity::from_strs("xytxy", "xytyx"));
    }
}

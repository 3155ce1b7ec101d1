//! Identities, congruences and variety lattices of plactic-like monoids.
//!
//! The crate decides word equivalence for the sylvester, #-sylvester, Baxter,
//! hypoplactic and stalactic congruences, evaluates identities against the
//! property characterizations of 26 overcommutative monoid varieties, searches
//! bounded equational consequences, and builds the three variety lattices.

pub mod congruences;
pub mod deduction;
pub mod error;
pub mod identity;
pub mod lattice;
pub mod monoids;
pub mod parse;
pub mod properties;
pub mod suite;
pub mod varieties;
pub mod word;

pub use error::{Error, Result};
pub use identity::{Identity, NamedIdentity};
pub use word::{Content, Letter, Var, Word};

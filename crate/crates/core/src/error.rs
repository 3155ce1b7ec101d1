use thiserror::Error;

/// Errors raised by the library. Every fallible operation returns [`Result`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {0} does not occur in the word")]
    SymbolAbsent(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("the two sides differ in support or in simple variables")]
    PreconditionViolated,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("content class has {size} words, above the cap of {cap}")]
    CapExceeded { size: u128, cap: usize },
    #[error("congruence {0} has no invariant characterization")]
    UnsupportedKind(String),
    #[error("unknown monoid: {0}")]
    UnknownMonoid(String),
    #[error("unknown variety: {0}")]
    UnknownVariety(String),
    #[error("{0} is not a node of lattice {1}")]
    UnknownNode(String, String),
    #[error("{0} and {1} are comparable")]
    ComparablePair(String, String),
    #[error("monoid construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

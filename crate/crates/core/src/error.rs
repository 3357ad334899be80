use thiserror::Error;

use crate::root_system::Weight;

/// Errors produced by the character, data and verification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),

    #[error("Cartan matrix is not valid: {0}")]
    InvalidCartan(String),

    #[error("weight {0} is not in the root lattice")]
    NotInRootLattice(Weight),

    #[error("{0} is not a root")]
    NotARoot(String),

    #[error("weight {0} is not restricted")]
    NotRestricted(Weight),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {weight} has rank {found}, expected {expected}")]
    RankMismatch {
        weight: Weight,
        expected: usize,
        found: usize,
    },

    #[error("characters live over different root systems")]
    MixedRootSystem,

    #[error("twist factor {0} is not a prime power")]
    BadTwist(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("character is not Weyl-invariant")]
    NotInvariant,

    #[error("invalid decomposition or tilting table: {0}")]
    InvalidTable(String),

    #[error("invalid fact registry: {0}")]
    InvalidRegistry(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("inconsistent facts: {0}")]
    InconsistentFacts(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown atom `{name}` at byte {offset}")]
    UnknownAtom { offset: usize, name: String },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("hyperplane {index} has a zero normal vector")]
    ZeroNormal { index: usize },

    #[error("hyperplane {second} duplicates hyperplane {first}")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("degenerate hyperplane (zero normal) is not allowed here")]
    DegenerateHyperplane,

    #[error("arrangement is not essential: normals span rank {rank} in dimension {dim}")]
    NonEssential { rank: usize, dim: usize },

    #[error("unknown hyperplane label {0}")]
    UnknownLabel(usize),

    #[error("flat is not an element of the intersection semi-lattice")]
    NotAFlat,

    #[error("{x:?} is not below {y:?} in the semi-lattice")]
    NotComparable { x: usize, y: usize },

    #[error("invalid label order: {0}")]
    InvalidOrder(String),

    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },

    #[error("point enumeration of {points} points exceeds the budget of {budget}")]
    BudgetExceeded { points: u128, budget: u64 },

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error("arrangement must be two-dimensional to render, got dimension {0}")]
    NotPlanar(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

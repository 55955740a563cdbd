use thiserror::Error;

use crate::ketlang::SyntaxError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    /// Two surds with distinct radicands cannot be summed into a single surd.
    #[error("incompatible radicands {0} and {1}")]
    IncompatibleRadicands(String, String),

    #[error("incompatible dimensions: expected {expected}, found {found}")]
    IncompatibleDimensions { expected: String, found: String },

    #[error("{0} is outside the exact path")]
    UnsupportedSpin(String),

    #[error("basis {basis} is not available for spin {spin}")]
    UnsupportedBasis { basis: String, spin: String },

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zero vector has no Schmidt decomposition")]
    ZeroVector,

    #[error("dimension {0} is not the square of a single-particle dimension {1}")]
    NonSquareComposite(usize, usize),

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("ket label chi({label}) is out of range for spin {spin}")]
    LabelOutOfRange { label: String, spin: String },

    #[error("sum mixes radicands sqrt({0}) and sqrt({1}); no single surd prefactor exists")]
    MixedRadicand(String, String),

    #[error("type error: {0}")]
    Type(String),
}

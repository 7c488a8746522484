use thiserror::Error;

/// Unified error type for the whole crate.
///
/// Operations that can fail return `Result<T>`; the CLI maps
/// `BallTooLarge` to exit code 2 and `Parse`/`Validation` to exit code 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("polynomial {0} is not irreducible over the rationals")]
    NotIrreducible(String),

    #[error("valuation {valuation} does not apply to elements of the {family} family")]
    IncompatibleValuation { valuation: String, family: String },

    #[error("elements of the {0} and {1} families cannot be combined")]
    IncompatibleFamilies(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix has determinant {0}, expected 1")]
    NotSpecialLinear(String),

    #[error("matrix is not uni-upper-triangular")]
    NotUnipotentForm,

    #[error("matrix is not diagonal")]
    NotDiagonal,

    #[error("non-rational entries need a configured evaluation point")]
    NeedsEvaluationPoint,

    #[error("word ball exceeded the element cap of {cap} (radius {radius})")]
    BallTooLarge { cap: usize, radius: usize },

    #[error("operation requires {required}x{required} matrices, got {got}x{got}")]
    UnsupportedDimension { required: usize, got: usize },

    #[error("residue field of {0} is infinite; the vertex link is not enumerable")]
    InfiniteResidueField(String),

    #[error("evaluation hit a pole at t = {0}")]
    EvaluationPole(String),

    #[error("span matrix is degenerate: {0}")]
    DegenerateSpan(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

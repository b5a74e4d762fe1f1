use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("degree {degree} is too small (need at least {min})")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("degree {degree} outside supported range {min}..={max}")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },
    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },
    #[error("constant coefficient is zero; strip zero roots first")]
    ZeroConstantTerm,
    #[error("every coefficient is zero: all roots are 0")]
    AllRootsZero,
    #[error("shape does not match: {0}")]
    ShapeMismatch(String),
    #[error("index {index} outside {min}..={max}")]
    IndexOutOfRange { index: usize, min: usize, max: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix is not a unit lower Hessenberg sparse companion matrix: {0}")]
    NotHessenbergSparse(String),
    #[error("matrix order {order} exceeds limit {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("matrix entry ({row}, {col}) is not an integer")]
    NonIntegerEntry { row: usize, col: usize },
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

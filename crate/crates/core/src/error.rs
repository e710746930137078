use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("kernel is {dim}-dimensional, expected exactly one dimension")]
    RankDeficient { dim: usize },

    #[error("monomial degrees differ: row sums {0:?}")]
    InconsistentDegree(Vec<u64>),

    #[error("coefficients must all be 1 for this operation; rescale the coordinates first")]
    NeedsNormalization,

    #[error("exponent matrix has determinant zero")]
    DegenerateInput,

    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("no isotrivial normal form matches: {0}")]
    NoIsotrivialMatch(String),

    #[error("degree {degree} exceeds supported limit {limit}")]
    DegreeOverflow { degree: u32, limit: u32 },

    #[error("generic member of the pencil is singular away from the coordinate vertices")]
    GenericallySingular,

    #[error("not convertible to Weierstrass form: {0}")]
    NotConvertible(String),

    #[error("discriminant vanishes identically")]
    ZeroDiscriminant,

    #[error("invalid family parameters p={p}, a={a}: {reason}")]
    InvalidFamily { p: u64, a: u64, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

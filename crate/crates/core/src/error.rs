use thiserror::Error;

/// Errors raised by the group engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("group is not simple: normal subgroup of order {witness_order}")]
    NotSimple { witness_order: u64 },
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("element is not contained in the group: {0}")]
    NotContained(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid construction: {0}")]
    Semantic(String),
    #[error("carter certificate failed: {0}")]
    Certificate(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

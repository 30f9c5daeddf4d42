use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("element does not belong to ring {ring}")]
    NotInRing { ring: String },

    #[error("{op} is not supported over {ring}")]
    Unsupported { op: &'static str, ring: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("lift of {map} has no solution at degree {degree}")]
    LiftFailed { map: &'static str, degree: usize },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("the two resolutions do not present the same module")]
    PresentationMismatch,

    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),

    #[error("orientation mismatch: expected {expected}")]
    Orientation { expected: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("unknown canonical resolution {0:?}")]
    UnknownResolution(String),
}

impl Error {
    pub(crate) fn shape(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::ShapeMismatch { op, left, right }
    }
}

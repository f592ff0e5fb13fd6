use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid closed path: {0}")]
    InvalidPath(String),

    #[error("qubit index {index} out of range for {qubits} qubits")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("gate sequence does not preserve the stabilizer group")]
    GroupNotPreserved,

    #[error("operator is not in the normalizer: {0}")]
    NotLogical(String),

    #[error("enumeration of {count} patterns exceeds the limit of {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },

    #[error("construction check failed: {0}")]
    CheckFailed(String),

    #[error("csv output failed: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

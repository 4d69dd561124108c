use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count must be in 1..={max}, got {got}")]
    InvalidQubitCount { got: usize, max: usize },

    #[error("malformed Pauli string {text:?}: {reason}")]
    MalformedPauli { text: String, reason: String },

    #[error("qubit index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid bit string {0:?}")]
    InvalidBitString(String),

    #[error("control qubit {0} is also a target")]
    ControlTargetOverlap(usize),

    #[error("expectation requires a Hermitian Pauli (phase +1 or -1), got phase {0}")]
    NonHermitian(String),

    #[error("projection has zero probability")]
    ZeroProbability,

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("state is not a Pauli eigenstate: <H{stabilizer}> = {value}")]
    NotPauliEigenstate { stabilizer: usize, value: f64 },

    #[error("syndrome {0} has no entry in the decoding table")]
    UncorrectableSyndrome(String),

    #[error("state lies outside the code space (overlap weight {0})")]
    StateOutsideCodeSpace(f64),

    #[error("{0} stabilizers cannot be drawn as a Venn diagram")]
    TooManySets(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown code {0:?} (expected five, rep3 or shor9)")]
    UnknownCode(String),
}

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bit index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length {0} exceeds the supported maximum of 128 bits (64 qubits)")]
    CapacityExceeded(usize),

    #[error("symplectic vectors need an even length, got {0}")]
    OddLength(usize),

    #[error("rows {0} and {1} of the check matrix anticommute")]
    SelfOrthogonalityViolation(usize, usize),

    #[error("check matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("code encodes no logical qubits")]
    ZeroLogicalQubits,

    #[error("enumeration of 2^{exponent} vectors exceeds the guard 2^{guard}")]
    TooLarge { exponent: usize, guard: usize },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("shape error: {0}")]
    Shape(String),

    #[error("lift contract violated: {0}")]
    LiftContractViolation(String),

    #[error("weight {weight} out of range for {n} qubits")]
    WeightOutOfRange { weight: usize, n: usize },

    #[error("invalid channel parameter: {0}")]
    InvalidEpsilon(String),

    #[error("invalid Pauli string: {0}")]
    PauliSyntax(String),

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("instance is missing `{0}`")]
    MissingField(&'static str),

    #[error("unknown code `{0}`")]
    UnknownCode(String),

    #[error("code generation failed: {0}")]
    GenerationFailed(String),
}

impl Error {
    /// Whether the error reports an input that fails validation (as opposed
    /// to a resource guard or a usage problem).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::SelfOrthogonalityViolation(..)
                | Error::RankDeficient { .. }
                | Error::Syntax { .. }
                | Error::OddLength(_)
                | Error::Shape(_)
                | Error::InvalidEpsilon(_)
                | Error::PauliSyntax(_)
                | Error::MissingField(_)
                | Error::LengthMismatch { .. }
                | Error::DimensionMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid bit string {0:?}")]
    InvalidBitString(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("state has no qubits")]
    NoQubits,
    #[error("too many qubits: {0}")]
    TooManyQubits(usize),
    #[error("empty tensor product")]
    EmptyProduct,
    #[error("non-finite amplitude")]
    NonFinite,
    #[error("state is identically zero")]
    ZeroState,
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("state is entangled (criterion fails at {alpha})")]
    Entangled { alpha: String },
    #[error("expected a {expected}-qubit state, got {got}")]
    WrongQubitCount { expected: usize, got: usize },
    #[error("local unitary is not unitary: |λ|² + |μ|² = {0}")]
    NotUnitary(f64),
    #[error("invalid minor specification: {0}")]
    InvalidMinor(String),
    #[error("phase matrix entry ({alpha}, {beta}) has modulus {modulus}, expected 1")]
    NotUnitModulus { alpha: usize, beta: usize, modulus: f64 },
    #[error("phase matrix diagonal entry {alpha} differs from λ")]
    DiagonalMismatch { alpha: usize },
    #[error("phase matrix has no constant diagonal λ")]
    MissingLambda,
    #[error("braid generator σ_{index} invalid on {strands} strands")]
    InvalidGenerator { index: usize, strands: usize },
    #[error("operator dimension 2^{0} exceeds the supported 2^12")]
    DimensionOverflow(usize),
    #[error("odd sum of inter-component crossing signs ({0}); linking number is not an integer")]
    OddLinking(i64),
    #[error("invalid observable {name}: {reason}")]
    InvalidObservable { name: &'static str, reason: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by malformed input text rather than domain conditions.
    pub fn is_format_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

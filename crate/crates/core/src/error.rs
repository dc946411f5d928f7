use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("integer bound must be at least 1, got {0}")]
    InvalidBound(i64),

    #[error("power-set ground size must be in 1..=26, got {0}")]
    InvalidGroundSize(u32),

    #[error("value {value} leaves the integer window [-{bound}, {bound}]")]
    Overflow { value: i128, bound: i64 },

    #[error("element does not belong to ring {0}")]
    RingMismatch(String),

    #[error("ring {0} is infinite")]
    InfiniteRing(String),

    #[error("ring {ring} is too large for this operation ({size} elements)")]
    TooLarge { ring: String, size: u128 },

    #[error("tuple must not be empty")]
    EmptyTuple,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("tuple is not a lambda-quiddity")]
    NotQuiddity,

    #[error("compute budget exhausted")]
    BudgetExhausted,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }
}

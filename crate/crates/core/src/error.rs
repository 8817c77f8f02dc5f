use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational {text:?}: {reason}")]
    ParseRational { text: String, reason: String },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("mixed cyclotomic levels {0} and {1}")]
    MixedLevels(u32, u32),

    #[error("cyclotomic level {0} outside supported range 1..=210")]
    LevelOutOfRange(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid hyperplane: {0}")]
    Hyperplane(String),

    #[error("invalid arrangement: {0}")]
    Arrangement(String),

    #[error("invalid flat: {0}")]
    Flat(String),

    #[error("index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid local system: {0}")]
    LocalSystem(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("requires a line arrangement (ambient dimension 2), got dimension {0}")]
    NotLineArrangement(usize),

    #[error("index mismatch: expected {expected} values, got {got}")]
    IndexMismatch { expected: usize, got: usize },

    #[error("linear program: {0}")]
    Lp(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("oracle requires complexified real input")]
    NonReal,

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

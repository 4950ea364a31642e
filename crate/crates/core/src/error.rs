use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("width mismatch: expected {expected} bits, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Neither the generator seeds nor the random fallback produced a balanced split.
    #[error("no balanced partition after {seeds} generator seeds and {random} random draws")]
    SeedsExhausted { seeds: u64, random: u32 },

    #[error("seed space of {bits} bits exceeds the enumeration cap of {cap} bits")]
    SeedCapExceeded { bits: u32, cap: u32 },

    #[error("seed {seed} out of range for a {bits}-bit seed space")]
    SeedOutOfRange { seed: u64, bits: u32 },

    #[error("label value does not fit the solver's integer type; use big integers")]
    LabelOverflow,

    #[error("no prime field satisfies the design parameters: {0}")]
    NoPrimeField(String),

    #[error("pairwise verification of {sets} sets exceeds the cap of {cap}")]
    VerificationCap { sets: usize, cap: usize },

    #[error("all {rounds} rounds returned witnesses that failed verification")]
    RoundsExhausted { rounds: u32 },

    #[error("decoded witness failed verification: {0}")]
    Soundness(String),

    #[error("transform width {width} exceeds the cap of {cap} bits")]
    WidthCap { width: usize, cap: usize },

    #[error("solver failed: {0}")]
    Solver(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

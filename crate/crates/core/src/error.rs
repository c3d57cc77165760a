use thiserror::Error;

#[derive(Debug, Error)]
pub enum QhaError {
    #[error("modulus must be odd and at least 3, got {0}")]
    EvenOrSmallModulus(u32),

    #[error("number of degrees of freedom must be positive")]
    ZeroDegrees,

    #[error("model too large: N^n = {0}^{1} overflows the supported dimension")]
    ModelTooLarge(u32, u32),

    #[error("model parameters differ: {left} vs {right}")]
    ParamsMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("exponent p must satisfy p >= 1 (or be infinite), got {0}")]
    InvalidExponent(f64),

    #[error("weights must be nonnegative and finite")]
    NegativeWeights,

    #[error("window or reference operator must be nonzero")]
    ZeroWindow,

    #[error("operator is not regular: min |F_W(A)| = {min_modulus:e} <= {tol:e}")]
    NotRegular { min_modulus: f64, tol: f64 },

    #[error("{k} does not divide the modulus {modulus}")]
    NotADivisor { k: u32, modulus: u32 },

    #[error("unknown fixture kind `{0}`")]
    UnknownFixture(String),

    #[error("unknown suite `{name}`; known suites: {known}")]
    UnknownSuite { name: String, known: String },

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = QhaError> = std::result::Result<T, E>;

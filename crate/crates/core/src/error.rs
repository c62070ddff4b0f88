use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("spectral parameter must be negative, got {0} (point-interaction operators only have negative eigenvalues)")]
    NonNegativeLambda(f64),

    #[error("unsupported truncation of {0} part inside its support")]
    UnsupportedTruncation(&'static str),

    #[error("continuous part is not supported inside [-{k}, {k}]; truncate the measure first")]
    SupportExceedsGrid { k: u32 },

    #[error("cantor level {requested} exceeds the depth cap {cap}")]
    DepthCap { requested: u32, cap: u32 },

    #[error("lambda = {lambda} is not an eigenvalue (relative decay residual {residual:e})")]
    NotAnEigenvalue { lambda: f64, residual: f64 },

    #[error("form distance s = {0} is not below 1; the resolvent estimate requires s < 1")]
    FormDistanceTooLarge(f64),

    #[error("eigenvalue window precondition violated: {0}")]
    WindowPrecondition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

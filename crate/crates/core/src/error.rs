use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested moment does not exist (Beta-prime tails).
    #[error("moment diverges: {0}")]
    MomentDivergence(String),

    /// The model is not covered by the requested operation.
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    /// The (model, regime) pair or case is not covered.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Invalid dimensions or parameters of the point model.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A sampled configuration is numerically rank deficient.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// The result is not representable as a finite f64.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use domain;

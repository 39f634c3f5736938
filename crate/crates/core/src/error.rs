use thiserror::Error;

/// Errors raised by the numerical kernels and the constructions built on them.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument hit a pole of gamma, a Pochhammer denominator or a
    /// hypergeometric lower parameter.
    #[error("pole: {0}")]
    Pole(String),

    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature did not reach its tolerance within the cutoff.
    #[error("no convergence: {0}")]
    Convergence(String),

    /// A Cholesky pivot or Cramer denominator collapsed at the working precision.
    #[error("ill-conditioned at {digits} digits: {message} (rerun with at least {required_digits} digits)")]
    Conditioning {
        message: String,
        digits: u32,
        required_digits: u32,
    },

    /// No admissible sign choice for a normalization radicand.
    #[error("sign convention violated: {0}")]
    SignConvention(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

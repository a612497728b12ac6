use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the admissible parameter domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bi(x) would leave the double-precision range.
    #[error("Airy argument {x} exceeds |x| <= {limit}: Bi overflows")]
    AiryOverflow { x: f64, limit: f64 },

    /// The ODE oracle only certifies a bounded range.
    #[error("Airy oracle supports |x| <= {limit}, got {x}")]
    OracleRange { x: f64, limit: f64 },

    #[error("empty or inverted theta window ({lo}, {hi})")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("no determinant root for branch {branch} in window ({lo}, {hi})")]
    NoRoot { branch: usize, lo: f64, hi: f64 },

    /// A bracketed sign change could not be refined below tolerance.
    #[error("root near theta = {theta} not certified: |det| = {residual:e} > {tolerance:e}")]
    Unconverged {
        theta: f64,
        residual: f64,
        tolerance: f64,
    },

    /// The coefficient system at a root is singular.
    #[error("degenerate root: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

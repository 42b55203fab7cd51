use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps variants to process exit codes: bad input or bad usage
/// (`Domain`, `Unsupported`, `NoStationaryPoint`, `Usage`) exits 2, `Io`
/// exits 3, and `InvariantViolation` exits 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Input lies outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Operation is only defined for a restricted parameter range.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Legendre target is infeasible: the transform has no interior
    /// stationary point unless `beta > exp(p * alpha)`.
    #[error("no stationary point: beta = {beta} does not exceed exp(p*alpha) = {bound}")]
    NoStationaryPoint { beta: f64, bound: f64 },

    /// An internal invariant failed. Indicates a bug, not bad input.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// Malformed command line or config file.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Unsupported(_)
            | Error::NoStationaryPoint { .. }
            | Error::Usage(_) => 2,
            Error::Io(_) => 3,
            Error::InvariantViolation(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A domain parameter violated its contract (negative density,
    /// pathloss exponent not above 2, empty theta grid, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An experiment configuration could not be assembled or parsed.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A numeric result escaped its analytic bounds by more than rounding
    /// allows; indicates a formula bug, not an input problem.
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code by error class: 2 for configuration problems,
    /// 3 for runtime numeric failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::InvalidConfig(_) => 2,
            Error::Numeric(_) => 3,
            Error::Io(_) => 1,
        }
    }
}

use thiserror::Error;

/// Errors raised by evaluators, validators and integrators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A state, frame or grid description failed validation.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An intermediate quantity exceeds the representable range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A series, continued fraction or quadrature did not meet its tolerance
    /// within the configured budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// The reference frame (mu, nu) = (0, 0) carries no information.
    #[error("degenerate frame (mu, nu) = ({mu}, {nu})")]
    DegenerateFrame { mu: f64, nu: f64 },

    /// A linear matching system is singular.
    #[error("singular system: {0}")]
    Singular(String),
}

impl Error {
    /// Short machine-readable tag, used by the command-line diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Domain(_) => "domain",
            Error::Overflow(_) => "overflow",
            Error::NonConvergence(_) => "non_convergence",
            Error::DegenerateFrame { .. } => "degenerate_frame",
            Error::Singular(_) => "singular",
        }
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Overflow(_) | Error::NonConvergence(_) | Error::Singular(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

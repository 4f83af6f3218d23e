use thiserror::Error;

/// Errors raised by the exact arithmetic, geometry and reduction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a quadratic irrational")]
    NotQuadraticIrrational,
    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),
    #[error("coincident points")]
    CoincidentPoints,
    #[error("angle not normalized")]
    AngleNotNormalized,
    #[error("collinear rays")]
    CollinearRays,
    #[error("bound insufficient")]
    BoundInsufficient,
    #[error("invalid vertex chain: {0}")]
    InvalidChain(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("operator is not hyperbolic (trace = {0})")]
    NotHyperbolic(String),
    #[error("operator is not reduced")]
    NotReduced,
    #[error("invalid period: {0}")]
    InvalidPeriod(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("sample too small: need at least {needed} observations, got {got}")]
    SampleTooSmall { needed: usize, got: usize },

    #[error("zero variance: bandwidth undefined for a constant sample")]
    ZeroVariance,

    #[error("invalid divergence order {0}: must be finite and not 0 or 1")]
    InvalidOrder(f64),

    #[error("divergence order {0} outside (0, 1); use DivergenceOrder::new_unchecked")]
    UncheckedOrder(f64),

    #[error("order outside admissible range: mixed variance {0} is not positive")]
    InadmissibleOrder(f64),

    #[error("unbounded likelihood ratio: model density vanishes at x = {0}")]
    UnboundedLikelihoodRatio(f64),

    #[error("integral diverged: non-finite integrand at x = {0}")]
    IntegralDiverged(f64),

    #[error("log of nonpositive integral {0}")]
    LogOfNonpositive(f64),

    #[error("density vanishes at x = {0}")]
    DensityVanishes(f64),

    #[error("stationarity violated: |phi| = {0} must be < 1")]
    StationarityViolated(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no rows to emit")]
    EmptyRows,

    #[error("replication {replication} at n = {n} failed (replication seed {seed}): {source}")]
    ReplicationFailed {
        n: usize,
        replication: usize,
        seed: u64,
        source: Box<Error>,
    },

    #[error("serialization failed: {0}")]
    Serialization(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics (quadrature, density evaluation)
    /// rather than of the caller's configuration.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::UnboundedLikelihoodRatio(_)
            | Error::IntegralDiverged(_)
            | Error::LogOfNonpositive(_)
            | Error::DensityVanishes(_) => true,
            Error::ReplicationFailed { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

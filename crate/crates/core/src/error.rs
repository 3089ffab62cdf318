use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("eigenstate index must be 1 or 2, got {0}")]
    InvalidIndex(u8),

    #[error("Hamiltonian period is undefined for a static field (omega' = 0)")]
    UndefinedPeriod,

    #[error("|C1| = {modulus:e} at t = {t} is below the phase extraction threshold")]
    AmplitudeVanished { t: f64, modulus: f64 },

    #[error("lambda = {lambda:e} is degenerate; the state period is undefined")]
    DegenerateLambda { lambda: f64 },

    #[error("initial state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("trajectories are sampled on different time grids")]
    MismatchedGrids,

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),

    #[error("no real solution: (n/m)^2 = {ratio_sqr} < sin^2(beta) = {sin_sqr}")]
    NoSolution { ratio_sqr: f64, sin_sqr: f64 },

    #[error("both commensurability roots are non-positive")]
    NoPositiveRoot,

    #[error("limit extrapolation did not converge (last step {last_change:e})")]
    ExtrapolationFailed { last_change: f64 },
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::InvalidIndex(_) => "invalid_index",
            Error::UndefinedPeriod => "undefined_period",
            Error::AmplitudeVanished { .. } => "amplitude_vanished",
            Error::DegenerateLambda { .. } => "degenerate_lambda",
            Error::NotNormalized { .. } => "not_normalized",
            Error::MismatchedGrids => "mismatched_grids",
            Error::InvalidConfig(_) => "invalid_config",
            Error::NoSolution { .. } => "no_solution",
            Error::NoPositiveRoot => "no_positive_root",
            Error::ExtrapolationFailed { .. } => "extrapolation_failed",
        }
    }
}

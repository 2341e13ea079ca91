//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("time {t} s outside trajectory span [{start}, {end}] s")]
    TimeOutOfRange { t: f64, start: f64, end: f64 },

    #[error("trajectories are not comparable: {0}")]
    MismatchedTrajectories(String),

    #[error(
        "interferometer is open under the reference Hamiltonian \
         (dz = {dz:.3e} m, dv = {dv:.3e} m/s); use the direct-propagation \
         phase, which handles open endpoints with the midpoint separation rule"
    )]
    OpenGeometry { dz: f64, dv: f64 },

    #[error("phase breakdowns come from incompatible runs: {0}")]
    RunMismatch(String),

    #[error(
        "singular extraction system (condition number {cond:.3e}); \
         at least two distinct central-segment durations are required"
    )]
    SingularSystem { cond: f64 },

    #[error(
        "violation parameter |beta| = {value:.3e} outside the linear-model \
         validity range (< {limit:.0e})"
    )]
    BetaOutOfRange { value: f64, limit: f64 },

    #[error("averaging time {t_avg} s is shorter than one measurement cycle ({cycle} s)")]
    AveragingTooShort { t_avg: f64, cycle: f64 },

    #[error("{0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

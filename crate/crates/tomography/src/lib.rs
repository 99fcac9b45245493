//! Scheme-agnostic tomography experiments: exact joint outcome
//! distributions, finite-shot coincidence sampling, round-trip
//! reconstructions with conditioning diagnostics, and parameter sweeps.

mod distribution;
mod report;
mod scheme;
mod sweep;

pub use distribution::{joint_distribution, sample, JointDistribution, OutcomeCell, ShotRecord};
pub use report::{roundtrip, RoundTripReport, Shots};
pub use scheme::Scheme;
pub use sweep::{sweep, SweepRow, SWEEP_AXES};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TomographyError {
    #[error("unknown sweep axis '{axis}'; valid axes: {valid}")]
    UnknownAxis { axis: String, valid: String },
    #[error("axis '{0}' needs canonical spin parameters, but this scheme was built from a raw unitary")]
    AxisNeedsParams(String),
    #[error("axis '{axis}' does not apply to a {kind} scheme")]
    AxisKindMismatch { axis: String, kind: &'static str },
    #[error("probability {0:.3e} is too negative for rounding noise; propagator bug suspected")]
    NegativeProbability(f64),
    #[error("need at least one shot")]
    NoShots,
    #[error(transparent)]
    Spin(#[from] spin_assistant::SpinError),
    #[error(transparent)]
    Jcm(#[from] jcm_assistant::JcmError),
    #[error(transparent)]
    Math(#[from] qmath::QmathError),
}

pub type Result<T> = std::result::Result<T, TomographyError>;

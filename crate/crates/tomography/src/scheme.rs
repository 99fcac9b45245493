//! One description for both measurement schemes.

use crate::Result;
use jcm_assistant::JcmConfig;
use qmath::{BlochState, CMatrix, LinearSystem, MeasurementTriple, Reconstruction};
use spin_assistant::{AssistantPurity, SpinSchemeParams};

/// A fully specified measurement scheme: which assistant, its state, and
/// the interaction.
#[derive(Debug, Clone)]
pub enum Scheme {
    Spin {
        unitary: CMatrix,
        purity: AssistantPurity,
        /// Canonical parameters when the scheme was built from them;
        /// schemes defined by a raw Hamiltonian or unitary leave this empty
        /// and fall back to probe assembly for their linear system.
        params: Option<SpinSchemeParams>,
    },
    Jcm {
        config: JcmConfig,
        /// Interaction time in seconds.
        time: f64,
        /// Variance of the Gaussian interaction-time jitter (s^2); only
        /// the averaged-determinant sweeps read it.
        timing_variance: f64,
    },
}

impl Scheme {
    pub fn spin(params: SpinSchemeParams, purity: AssistantPurity) -> Result<Self> {
        let unitary = spin_assistant::build_unitary(&params)?;
        Ok(Self::Spin { unitary, purity, params: Some(params) })
    }

    pub fn spin_from_unitary(unitary: CMatrix, purity: AssistantPurity) -> Self {
        Self::Spin { unitary, purity, params: None }
    }

    pub fn jcm(config: JcmConfig, time: f64) -> Self {
        Self::Jcm { config, time, timing_variance: 0.0 }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Spin { .. } => "spin-assistant",
            Self::Jcm { .. } => "jcm-assistant",
        }
    }

    /// The measurement map this scheme inverts. Canonical spin schemes use
    /// the closed form; raw-unitary spin schemes assemble it by probing the
    /// direct evolution (exact, the map is affine).
    pub fn linear_system(&self) -> Result<LinearSystem> {
        match self {
            Self::Spin { unitary, purity, params } => match params {
                Some(p) => Ok(spin_assistant::coefficient_system(p, *purity)?),
                None => Ok(spin_assistant::linear_system_from_unitary(unitary, *purity)?),
            },
            Self::Jcm { config, time, .. } => {
                Ok(jcm_assistant::measurement_matrix(config, *time)?)
            }
        }
    }

    /// Noise-free measured averages for a planted state.
    pub fn analytic_triple(&self, r: &BlochState) -> Result<MeasurementTriple> {
        match self {
            Self::Spin { unitary, purity, .. } => {
                Ok(spin_assistant::simulate_expectations(unitary, r, *purity)?)
            }
            Self::Jcm { config, time, .. } => {
                Ok(jcm_assistant::expectation_series(config, r, *time)?)
            }
        }
    }

    /// Triple -> vector in this scheme's row convention.
    pub fn triple_as_vector(&self, m: &MeasurementTriple) -> [f64; 3] {
        match self {
            Self::Spin { .. } => spin_assistant::triple_as_vector(m),
            Self::Jcm { .. } => jcm_assistant::triple_as_vector(m),
        }
    }

    pub fn reconstruct(&self, m: &MeasurementTriple) -> Result<Reconstruction> {
        match self {
            Self::Spin { unitary, purity, params } => {
                let system = match params {
                    Some(p) => spin_assistant::coefficient_system(p, *purity)?,
                    None => spin_assistant::linear_system_from_unitary(unitary, *purity)?,
                };
                Ok(spin_assistant::reconstruct_with_system(m, &system)?)
            }
            Self::Jcm { config, time, .. } => {
                Ok(jcm_assistant::reconstruct(m, config, *time)?)
            }
        }
    }
}

//! Field/atom configuration, Poisson weights, Rabi frequencies, and the
//! truncated coherent state.

use crate::{JcmError, Result, TAIL_MASS};
use qmath::Complex64;

/// Parameters of the cavity scheme: detuning (atom minus field frequency),
/// coupling, coherent amplitude, and the Fock truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcmConfig {
    /// Detuning in rad/s.
    pub detuning: f64,
    /// Coupling strength in rad/s, strictly positive.
    pub coupling: f64,
    /// Coherent amplitude of the initial field state (dimensionless).
    pub alpha: Complex64,
    /// Number of Fock levels kept (0..fock_dim-1).
    pub fock_dim: usize,
}

/// Smallest adequate truncation for mean photon number `n_bar`.
pub fn min_fock_dim(n_bar: f64) -> usize {
    (n_bar + 10.0 * (n_bar + 1.0).sqrt()).ceil() as usize
}

/// Default truncation: the adequacy bound plus a 20-level cushion.
pub fn default_fock_dim(n_bar: f64) -> usize {
    min_fock_dim(n_bar) + 20
}

impl JcmConfig {
    pub fn new(detuning: f64, coupling: f64, alpha: Complex64, fock_dim: usize) -> Result<Self> {
        let cfg = Self { detuning, coupling, alpha, fock_dim };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Convenience constructor with a real amplitude and default truncation.
    pub fn with_mean_photons(detuning: f64, coupling: f64, n_bar: f64) -> Result<Self> {
        Self::new(
            detuning,
            coupling,
            Complex64::new(n_bar.sqrt(), 0.0),
            default_fock_dim(n_bar),
        )
    }

    pub fn n_bar(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.coupling > 0.0) {
            return Err(JcmError::InvalidConfig(format!(
                "coupling must be positive, got {}",
                self.coupling
            )));
        }
        if !self.detuning.is_finite() || !self.alpha.is_finite() {
            return Err(JcmError::InvalidConfig("non-finite parameter".into()));
        }
        let needed = min_fock_dim(self.n_bar());
        if self.fock_dim < needed {
            return Err(JcmError::InvalidConfig(format!(
                "fock_dim = {} below the adequacy bound {} for mean photon number {:.3}",
                self.fock_dim,
                needed,
                self.n_bar()
            )));
        }
        let tail = 1.0 - poisson_weights(self.n_bar(), self.fock_dim).iter().sum::<f64>();
        if tail > TAIL_MASS {
            return Err(JcmError::InvalidConfig(format!(
                "Poisson tail mass {tail:.3e} beyond the truncation exceeds {TAIL_MASS:.0e}"
            )));
        }
        Ok(())
    }

    pub fn derived(&self) -> JcmDerived {
        JcmDerived::of(self)
    }
}

fn poisson_weights(n_bar: f64, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    let mut current = (-n_bar).exp();
    for n in 0..count {
        w.push(current);
        current *= n_bar / (n + 1) as f64;
    }
    w
}

/// Per-level quantities the series are built from.
#[derive(Debug, Clone)]
pub struct JcmDerived {
    /// Poisson weights c_0 .. c_N (one past the truncation, so sums may
    /// reference c_{n+1} at the top level).
    pub weights: Vec<f64>,
    /// Generalized Rabi frequencies Omega_n = sqrt(4 (n+1) g^2 + Delta^2),
    /// n = 0 .. N-1.
    pub rabi: Vec<f64>,
    /// Spectral values of the dressing operator, g^2 n + Delta^2 / 4 for
    /// n = 0 .. N.
    pub dressing: Vec<f64>,
}

impl JcmDerived {
    fn of(cfg: &JcmConfig) -> Self {
        let n = cfg.fock_dim;
        let g2 = cfg.coupling * cfg.coupling;
        let quarter = cfg.detuning * cfg.detuning / 4.0;
        let weights = poisson_weights(cfg.n_bar(), n + 1);
        let rabi = (0..n)
            .map(|k| (4.0 * (k as f64 + 1.0) * g2 + cfg.detuning * cfg.detuning).sqrt())
            .collect();
        let dressing = (0..=n).map(|k| g2 * k as f64 + quarter).collect();
        Self { weights, rabi, dressing }
    }
}

/// Coherent-state amplitudes on the truncated Fock basis, renormalized.
///
/// Errors if the norm defect before renormalization exceeds the tail budget,
/// naming the truncation that would be adequate.
pub fn coherent_state(alpha: Complex64, dim: usize) -> Result<Vec<Complex64>> {
    let mut amps = Vec::with_capacity(dim);
    let mut current = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..dim {
        amps.push(current);
        current = current * alpha / Complex64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let defect = 1.0 - norm_sq;
    if defect > TAIL_MASS {
        return Err(JcmError::Truncation(format!(
            "coherent state norm defect {defect:.3e} at {dim} levels; need at least {}",
            min_fock_dim(alpha.norm_sqr())
        )));
    }
    let scale = Complex64::new(1.0 / norm_sq.sqrt(), 0.0);
    Ok(amps.into_iter().map(|a| a * scale).collect())
}

//! Closed-form Jaynes-Cummings propagator on the truncated Fock space.

use crate::config::JcmConfig;
use crate::Result;
use qmath::{CMatrix, Complex64};

/// sin(sqrt(x) t) / sqrt(x), continuous through x = 0.
fn sinc_sqrt(x: f64, t: f64) -> f64 {
    let root = x.abs().sqrt();
    if root * t.abs() < 1e-8 {
        t * (1.0 - x * t * t / 6.0)
    } else {
        (root * t).sin() / root
    }
}

/// The interaction propagator at cavity frequency zero: the operator acts on
/// field ⊗ atom and couples each |+, n> to |-, n+1> at the generalized Rabi
/// frequency of its doublet. The full propagator at cavity frequency nu
/// differs only by number-dependent phases that no measured observable sees.
///
/// On the truncated space the top Fock level lacks its doublet partner, so
/// unitarity holds on the subspace that excludes the two highest levels.
pub fn jc_propagator(cfg: &JcmConfig, t: f64) -> Result<CMatrix> {
    cfg.validate()?;
    let n = cfg.fock_dim;
    let derived = cfg.derived();
    let g = cfg.coupling;
    let half_det = 0.5 * cfg.detuning;
    let mut u = CMatrix::zeros(2 * n, 2 * n);
    let idx = |level: usize, atom: usize| level * 2 + atom;

    for m in 0..n {
        // Upper component |+, m>: dressed frequency Omega_m / 2.
        let half = 0.5 * derived.rabi[m];
        u[(idx(m, 0), idx(m, 0))] = Complex64::new(
            (half * t).cos(),
            -half_det * (half * t).sin() / half,
        );
        // Lower component |-, m>: dressed by the sector below.
        let phi = derived.dressing[m];
        let cos_part = (phi.sqrt() * t).cos();
        let sin_part = sinc_sqrt(phi, t);
        u[(idx(m, 1), idx(m, 1))] = Complex64::new(cos_part, half_det * sin_part);
    }
    for m in 0..n - 1 {
        let half = 0.5 * derived.rabi[m];
        let amp = -g * ((m + 1) as f64).sqrt() * (half * t).sin() / half;
        let entry = Complex64::new(0.0, amp);
        u[(idx(m, 0), idx(m + 1, 1))] = entry;
        u[(idx(m + 1, 1), idx(m, 0))] = entry;
    }
    Ok(u)
}

/// Largest |(U^dag U - 1)| entry over the subspace excluding the top
/// `guard` Fock levels.
pub fn unitarity_defect_interior(u: &CMatrix, fock_dim: usize, guard: usize) -> f64 {
    let gram = u.dagger().mul(u);
    let keep = 2 * (fock_dim - guard);
    let mut worst = 0.0f64;
    for i in 0..keep {
        for j in 0..keep {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

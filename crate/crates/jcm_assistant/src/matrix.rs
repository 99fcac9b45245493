//! The 3x3 measurement map (atom, photons, correlator) <- Bloch vector, its
//! closed-form determinant D(t), the Gaussian time average of D, and the
//! inversion.

use crate::config::JcmConfig;
use crate::series::series_sums;
use crate::{JcmError, Result, INCONSISTENT_NORM, SINGULAR_REL_DET};
use qmath::{LinearSystem, MeasurementTriple, Reconstruction};

pub fn triple_as_vector(m: &MeasurementTriple) -> [f64; 3] {
    [m.sys_avg, m.assist_avg, m.correlator]
}

pub fn vector_as_triple(v: [f64; 3]) -> MeasurementTriple {
    MeasurementTriple { sys_avg: v[0], assist_avg: v[1], correlator: v[2] }
}

/// Assemble (M, B) with (atom, photons, correlator) = M r + B, the
/// coefficients read off the expectation series.
pub fn measurement_matrix(cfg: &JcmConfig, t: f64) -> Result<LinearSystem> {
    cfg.validate()?;
    let derived = cfg.derived();
    let sums = series_sums(cfg, &derived, t);
    let g = cfg.coupling;
    let g2 = g * g;
    let n_bar = cfg.n_bar();
    let coeffs = [
        [
            4.0 * g * sums.coh_im,
            4.0 * g * sums.coh_re,
            1.0 - g2 * sums.transfer_sum,
        ],
        [
            -2.0 * g * sums.coh_im,
            -2.0 * g * sums.coh_re,
            0.5 * g2 * sums.transfer_sum,
        ],
        [
            2.0 * g * sums.coh_im_weighted,
            2.0 * g * sums.coh_re_weighted,
            n_bar - 0.5 * g2 * sums.weighted_sum,
        ],
    ];
    let offset = [
        g2 * sums.transfer_diff,
        n_bar - 0.5 * g2 * sums.transfer_diff,
        0.5 * g2 * sums.weighted_diff,
    ];
    Ok(LinearSystem::new(coeffs, offset))
}

/// Closed-form determinant D(t) of the measurement matrix.
///
/// A Poisson-weighted double sum over photon sectors; the diagonal n = m
/// terms cancel identically and are skipped. The normalization is pinned to
/// the measured triple and equals det of [`measurement_matrix`] exactly
/// (conventions that fold the photon row differently scale this by 2).
pub fn determinant_series(cfg: &JcmConfig, t: f64) -> Result<f64> {
    cfg.validate()?;
    let derived = cfg.derived();
    let prefactor =
        2.0 * cfg.detuning * cfg.coupling * cfg.coupling * cfg.n_bar();
    Ok(prefactor * antisymmetric_double_sum(cfg, &derived.weights, &derived.rabi, |n, m| {
        let sn = (0.5 * derived.rabi[n] * t).sin();
        sn * sn * (derived.rabi[m] * t).sin() / (derived.rabi[n] * derived.rabi[n] * derived.rabi[m])
    }))
}

/// Gaussian time average of D over interaction times t ~ N(t0, sigma),
/// sigma a variance in s^2. At sigma = 0 this is D(t0) exactly; growing
/// sigma suppresses every oscillatory term by exp(-sigma omega^2 / 2).
pub fn averaged_determinant(cfg: &JcmConfig, t0: f64, sigma: f64) -> Result<f64> {
    cfg.validate()?;
    if sigma < 0.0 {
        return Err(JcmError::InvalidConfig(format!(
            "sigma must be nonnegative, got {sigma}"
        )));
    }
    let derived = cfg.derived();
    let damped_sin = |omega: f64| (-0.5 * sigma * omega * omega).exp() * (omega * t0).sin();
    let prefactor =
        2.0 * cfg.detuning * cfg.coupling * cfg.coupling * cfg.n_bar();
    Ok(prefactor * antisymmetric_double_sum(cfg, &derived.weights, &derived.rabi, |n, m| {
        let on = derived.rabi[n];
        let om = derived.rabi[m];
        (2.0 * damped_sin(om) - damped_sin(om + on) - damped_sin(om - on)) / (4.0 * on * on * om)
    }))
}

/// sum_{n != m} c_n c_m (n - m) [f(n, m) - f(m, n)], exploiting the
/// antisymmetry to run over ordered pairs once.
fn antisymmetric_double_sum<F: Fn(usize, usize) -> f64>(
    cfg: &JcmConfig,
    weights: &[f64],
    rabi: &[f64],
    f: F,
) -> f64 {
    let _ = rabi;
    let mut total = 0.0;
    let mut carry = 0.0;
    let cutoff = 1e-16;
    let past_peak = cfg.n_bar().ceil() as usize + 1;
    for n in 0..cfg.fock_dim {
        if n > past_peak && weights[n] < cutoff {
            break;
        }
        for m in 0..n {
            let weight = weights[n] * weights[m] * (n as f64 - m as f64);
            if weight == 0.0 {
                continue;
            }
            // Both ordered pairs at once; (m, n) flips both factors.
            let term = 2.0 * weight * (f(n, m) - f(m, n));
            let y = term - carry;
            let t = total + y;
            carry = (t - total) - y;
            total = t;
        }
    }
    total
}

/// Invert the measurement map at (cfg, t): r = M^{-1} (m - B).
///
/// Refuses when |det M| falls below the relative singularity threshold
/// (scaled by the product of row norms); recovered vectors outside the
/// Bloch ball by more than 5% are flagged, not rejected.
pub fn reconstruct(
    m: &MeasurementTriple,
    cfg: &JcmConfig,
    t: f64,
) -> Result<Reconstruction> {
    let system = measurement_matrix(cfg, t)?;
    reconstruct_with_system(m, &system)
}

pub fn reconstruct_with_system(
    m: &MeasurementTriple,
    system: &LinearSystem,
) -> Result<Reconstruction> {
    let scale = system.row_norm_scale();
    if system.det.abs() <= SINGULAR_REL_DET * scale {
        return Err(JcmError::SingularScheme { det: system.det });
    }
    let r = system.solve(triple_as_vector(m));
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    Ok(Reconstruction { r, inconsistent_data: norm > INCONSISTENT_NORM })
}

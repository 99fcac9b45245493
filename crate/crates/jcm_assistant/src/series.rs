//! Closed-form expectation series for the three measured observables.
//!
//! Each observable is an affine function of the initial Bloch vector with
//! coefficients given by Poisson-weighted sums over the photon-number
//! sectors. The population-transfer terms follow from the doublet dynamics;
//! the coherence terms enter through chi_n(t) = alpha (cos(Omega_n t / 2) +
//! i Delta sin(Omega_n t / 2) / Omega_n). Sums are accumulated with Kahan
//! compensation in ascending n and cut off once the Poisson weight falls
//! below 1e-16.

use crate::config::{JcmConfig, JcmDerived};
use crate::Result;
use qmath::{BlochState, Complex64, MeasurementTriple};

const WEIGHT_CUTOFF: f64 = 1e-16;

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// The level sums every row of the measurement map is assembled from.
pub(crate) struct SeriesSums {
    /// sum (n+1)(c_{n+1} - c_n) X_n with X_n = sin^2(Omega_n t/2)/(Omega_n/2)^2.
    pub transfer_diff: f64,
    /// sum (n+1)(c_{n+1} + c_n) X_n.
    pub transfer_sum: f64,
    /// sum (n+1)(2n+1)(c_{n+1} - c_n) X_n.
    pub weighted_diff: f64,
    /// sum (n+1)(2n+1)(c_{n+1} + c_n) X_n.
    pub weighted_sum: f64,
    /// sum c_n (sin(Omega_n t/2)/Omega_n) Im chi_n and the Re partner.
    pub coh_im: f64,
    pub coh_re: f64,
    /// (2n+1)-weighted coherence sums.
    pub coh_im_weighted: f64,
    pub coh_re_weighted: f64,
}

pub(crate) fn series_sums(cfg: &JcmConfig, derived: &JcmDerived, t: f64) -> SeriesSums {
    let mut acc = [Kahan::default(); 8];
    let past_peak = cfg.n_bar().ceil() as usize + 1;
    for n in 0..cfg.fock_dim {
        let c_n = derived.weights[n];
        let c_np1 = derived.weights[n + 1];
        if n > past_peak && c_n < WEIGHT_CUTOFF && c_np1 < WEIGHT_CUTOFF {
            break;
        }
        let omega = derived.rabi[n];
        let half = 0.5 * omega * t;
        let s = half.sin();
        let x = s * s / (0.5 * omega) / (0.5 * omega);
        let np1 = (n + 1) as f64;
        let odd = (2 * n + 1) as f64;
        acc[0].add(np1 * (c_np1 - c_n) * x);
        acc[1].add(np1 * (c_np1 + c_n) * x);
        acc[2].add(np1 * odd * (c_np1 - c_n) * x);
        acc[3].add(np1 * odd * (c_np1 + c_n) * x);
        let chi = cfg.alpha
            * Complex64::new(half.cos(), cfg.detuning * s / omega);
        let base = c_n * s / omega;
        acc[4].add(base * chi.im);
        acc[5].add(base * chi.re);
        acc[6].add(base * odd * chi.im);
        acc[7].add(base * odd * chi.re);
    }
    SeriesSums {
        transfer_diff: acc[0].sum,
        transfer_sum: acc[1].sum,
        weighted_diff: acc[2].sum,
        weighted_sum: acc[3].sum,
        coh_im: acc[4].sum,
        coh_re: acc[5].sum,
        coh_im_weighted: acc[6].sum,
        coh_re_weighted: acc[7].sum,
    }
}

/// The three series evaluated for one initial state: atomic population
/// difference, mean photon number, and their correlator.
pub fn expectation_series(cfg: &JcmConfig, r: &BlochState, t: f64) -> Result<MeasurementTriple> {
    cfg.validate()?;
    let derived = cfg.derived();
    let sums = series_sums(cfg, &derived, t);
    let [rx, ry, rz] = r.components();
    let g = cfg.coupling;
    let g2 = g * g;
    let n_bar = cfg.n_bar();
    let coh = rx * sums.coh_im + ry * sums.coh_re;
    let coh_weighted = rx * sums.coh_im_weighted + ry * sums.coh_re_weighted;

    let sys_avg = g2 * sums.transfer_diff + 4.0 * g * coh + rz * (1.0 - g2 * sums.transfer_sum);
    let assist_avg =
        n_bar - 0.5 * g2 * sums.transfer_diff - 2.0 * g * coh + rz * 0.5 * g2 * sums.transfer_sum;
    let correlator = 0.5 * g2 * sums.weighted_diff
        + 2.0 * g * coh_weighted
        + rz * (n_bar - 0.5 * g2 * sums.weighted_sum);
    Ok(MeasurementTriple { sys_avg, assist_avg, correlator })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(r: [f64; 3]) -> BlochState {
        BlochState::new(r).unwrap()
    }

    #[test]
    fn factorized_start() {
        let cfg = JcmConfig::with_mean_photons(1e5, 5e4, 2.0).unwrap();
        let r = state([0.3, -0.1, 0.4]);
        let t = expectation_series(&cfg, &r, 0.0).unwrap();
        assert!((t.sys_avg - 0.4).abs() < 1e-14);
        assert!((t.assist_avg - 2.0).abs() < 1e-12);
        assert!((t.correlator - 0.8).abs() < 1e-12);
    }

    #[test]
    fn empty_cavity_ground_atom_is_stationary() {
        let cfg = JcmConfig::new(1e5, 5e4, Complex64::new(0.0, 0.0), 12).unwrap();
        let r = state([0.0, 0.0, -1.0]);
        for &t in &[0.0, 3e-6, 1.7e-5, 9e-5] {
            let m = expectation_series(&cfg, &r, t).unwrap();
            assert!((m.sys_avg + 1.0).abs() < 1e-12, "t = {t}");
            assert!(m.assist_avg.abs() < 1e-12);
            assert!((m.correlator).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_rabi_oscillation() {
        // |+, 0>: population difference follows the detuned Rabi formula.
        let cfg = JcmConfig::new(7e4, 5e4, Complex64::new(0.0, 0.0), 12).unwrap();
        let r = state([0.0, 0.0, 1.0]);
        let omega0 = (4.0 * cfg.coupling * cfg.coupling + cfg.detuning * cfg.detuning).sqrt();
        for &t in &[1.3e-6, 7.7e-6, 2.9e-5] {
            let m = expectation_series(&cfg, &r, t).unwrap();
            let transfer =
                4.0 * cfg.coupling.powi(2) / (omega0 * omega0) * (0.5 * omega0 * t).sin().powi(2);
            assert!((m.sys_avg - (1.0 - 2.0 * transfer)).abs() < 1e-12);
            assert!((m.assist_avg - transfer).abs() < 1e-12);
            assert!((m.correlator + transfer).abs() < 1e-12);
        }
    }

    #[test]
    fn excitation_number_is_conserved() {
        let cfg = JcmConfig::with_mean_photons(3e4, 5e4, 1.7).unwrap();
        let r = state([0.5, 0.2, -0.3]);
        let start = expectation_series(&cfg, &r, 0.0).unwrap();
        let invariant = start.assist_avg + 0.5 * start.sys_avg;
        for &t in &[2e-6, 1.1e-5, 6e-5] {
            let m = expectation_series(&cfg, &r, t).unwrap();
            assert!((m.assist_avg + 0.5 * m.sys_avg - invariant).abs() < 1e-10);
        }
    }
}

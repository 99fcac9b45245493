//! One-parameter scans of the scheme's determinant and conditioning.

use crate::scheme::Scheme;
use crate::{Result, TomographyError};
use jcm_assistant::JcmConfig;
use qmath::Complex64;
use serde::Serialize;

pub const SWEEP_AXES: [&str; 9] =
    ["t", "delta", "alpha", "lambda", "theta", "phi", "psi", "t0", "sigma"];

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub parameter: f64,
    pub determinant: f64,
    pub condition_number: f64,
}

fn jcm_row(config: &JcmConfig, time: f64, det: f64) -> Result<SweepRow> {
    let sys = jcm_assistant::measurement_matrix(config, time)?;
    Ok(SweepRow {
        parameter: 0.0,
        determinant: det,
        condition_number: sys.condition_number,
    })
}

/// Scan one named parameter over a grid; each row carries the determinant
/// and condition number of the scheme at that grid point, in grid order.
///
/// Cavity axes: `t` (interaction time, s), `delta` (detuning, rad/s),
/// `alpha` (real coherent amplitude), `t0`/`sigma` (Gaussian-jitter center
/// and variance; the determinant column is the time-averaged determinant
/// and the condition number refers to the nominal-time map). Spin axes:
/// `lambda`, `theta`, `phi`, `psi` (need canonical parameters).
pub fn sweep(scheme: &Scheme, axis: &str, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if !SWEEP_AXES.contains(&axis) {
        return Err(TomographyError::UnknownAxis {
            axis: axis.to_string(),
            valid: SWEEP_AXES.join(", "),
        });
    }
    let mut rows = Vec::with_capacity(grid.len());
    match scheme {
        Scheme::Jcm { config, time, timing_variance } => {
            for &value in grid {
                let mut row = match axis {
                    "t" => {
                        let sys = jcm_assistant::measurement_matrix(config, value)?;
                        SweepRow {
                            parameter: value,
                            determinant: sys.det,
                            condition_number: sys.condition_number,
                        }
                    }
                    "delta" => {
                        let cfg = JcmConfig::new(
                            value,
                            config.coupling,
                            config.alpha,
                            config.fock_dim,
                        )?;
                        let sys = jcm_assistant::measurement_matrix(&cfg, *time)?;
                        SweepRow {
                            parameter: value,
                            determinant: sys.det,
                            condition_number: sys.condition_number,
                        }
                    }
                    "alpha" => {
                        let n_bar = value * value;
                        let cfg = JcmConfig::new(
                            config.detuning,
                            config.coupling,
                            Complex64::new(value, 0.0),
                            config.fock_dim.max(jcm_assistant::default_fock_dim(n_bar)),
                        )?;
                        let sys = jcm_assistant::measurement_matrix(&cfg, *time)?;
                        SweepRow {
                            parameter: value,
                            determinant: sys.det,
                            condition_number: sys.condition_number,
                        }
                    }
                    "t0" => {
                        let det =
                            jcm_assistant::averaged_determinant(config, value, *timing_variance)?;
                        let mut row = jcm_row(config, value, det)?;
                        row.parameter = value;
                        row
                    }
                    "sigma" => {
                        let det = jcm_assistant::averaged_determinant(config, *time, value)?;
                        let mut row = jcm_row(config, *time, det)?;
                        row.parameter = value;
                        row
                    }
                    other => {
                        return Err(TomographyError::AxisKindMismatch {
                            axis: other.to_string(),
                            kind: "jcm-assistant",
                        })
                    }
                };
                row.parameter = value;
                rows.push(row);
            }
        }
        Scheme::Spin { purity, params, .. } => {
            let base = params
                .as_ref()
                .ok_or_else(|| TomographyError::AxisNeedsParams(axis.to_string()))?;
            for &value in grid {
                let mut p = *base;
                let mut lam = *purity;
                match axis {
                    "lambda" => lam = spin_assistant::AssistantPurity::new(value)?,
                    "theta" => p.theta = value,
                    "phi" => p.phi = value,
                    "psi" => p.psi = value,
                    other => {
                        return Err(TomographyError::AxisKindMismatch {
                            axis: other.to_string(),
                            kind: "spin-assistant",
                        })
                    }
                }
                let sys = spin_assistant::coefficient_system(&p, lam)?;
                rows.push(SweepRow {
                    parameter: value,
                    determinant: sys.det,
                    condition_number: sys.condition_number,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_assistant::{AssistantPurity, SpinSchemeParams};

    #[test]
    fn unknown_axis_lists_the_valid_ones() {
        let scheme = Scheme::spin(
            SpinSchemeParams::disordered_optimal(),
            AssistantPurity::disordered(),
        )
        .unwrap();
        match sweep(&scheme, "Q", &[1.0]) {
            Err(TomographyError::UnknownAxis { valid, .. }) => {
                assert!(valid.contains("psi") && valid.contains("t0"));
            }
            other => panic!("expected UnknownAxis, got {other:?}"),
        }
    }

    #[test]
    fn psi_scan_peaks_at_quarter_pi() {
        let scheme = Scheme::spin(
            SpinSchemeParams::disordered_optimal(),
            AssistantPurity::disordered(),
        )
        .unwrap();
        // |D| goes as sin^2(2 psi) on this slice; scan the first period half.
        let grid: Vec<f64> = (1..40)
            .map(|i| i as f64 * std::f64::consts::FRAC_PI_2 / 40.0)
            .collect();
        let rows = sweep(&scheme, "psi", &grid).unwrap();
        let best = rows
            .iter()
            .max_by(|a, b| a.determinant.abs().total_cmp(&b.determinant.abs()))
            .unwrap();
        assert!((best.parameter - std::f64::consts::FRAC_PI_4).abs() < 0.05);
    }
}

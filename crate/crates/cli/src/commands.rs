//! The five subcommands, each returning the text artifact to write.

use crate::config::{ConfigError, RunConfig};
use crate::output::{averaged_sweep_csv, json_line, sweep_csv};
use serde_json::json;
use tomography::{roundtrip, sweep, Scheme, TomographyError};

pub enum CmdError {
    /// Usage or configuration problem (exit 1).
    Usage(String),
    /// Mathematically singular scheme (exit 2).
    Singular(String),
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        CmdError::Usage(e.to_string())
    }
}

impl From<TomographyError> for CmdError {
    fn from(e: TomographyError) -> Self {
        match &e {
            TomographyError::Spin(spin_assistant::SpinError::SingularScheme { .. })
            | TomographyError::Jcm(jcm_assistant::JcmError::SingularScheme { .. }) => {
                CmdError::Singular(e.to_string())
            }
            _ => CmdError::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<String, CmdError>;

fn run_roundtrip(scheme: &Scheme, cfg: &RunConfig) -> CmdResult {
    let planted = cfg.planted_state()?;
    let shots = cfg.shots()?;
    let seed = cfg.seed()?;
    let report = roundtrip(scheme, &planted, shots, seed)?;
    Ok(json_line(&report))
}

pub fn spin_recover(cfg: &RunConfig) -> CmdResult {
    let scheme = cfg.spin_scheme()?;
    run_roundtrip(&scheme, cfg)
}

pub fn jcm_recover(cfg: &RunConfig) -> CmdResult {
    let scheme = cfg.jcm_scheme()?;
    run_roundtrip(&scheme, cfg)
}

pub fn roundtrip_cmd(cfg: &RunConfig) -> CmdResult {
    let scheme = match cfg.string("scheme")? {
        "spin" => cfg.spin_scheme()?,
        "jcm" => cfg.jcm_scheme()?,
        other => {
            return Err(CmdError::Usage(format!(
                "config error: key 'scheme' must be 'spin' or 'jcm', got '{other}'"
            )))
        }
    };
    run_roundtrip(&scheme, cfg)
}

pub fn spin_optimize(cfg: &RunConfig) -> CmdResult {
    let purity = cfg.purity()?;
    let budget = cfg.integer_or("budget", 50_000)? as usize;
    let seed = cfg.seed()?;
    let outcome = spin_assistant::optimize_determinant(purity, budget, seed)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let p = outcome.params;
    let report = json!({
        "lambda": purity.lambda(),
        "det": outcome.det,
        "abs_det": outcome.det.abs(),
        "evaluations": outcome.evaluations,
        "theta_rad": p.theta,
        "phi_rad": p.phi,
        "psi_rad": p.psi,
        "eta": p.eta,
        "zeta": p.zeta,
    });
    Ok(json_line(&report))
}

pub fn jcm_sweep(cfg: &RunConfig) -> CmdResult {
    let config = cfg.jcm_config()?;
    let format = cfg.string_opt("format")?.unwrap_or("csv");
    if cfg.has("t0_start_us") {
        // Averaged-determinant scan over the jitter center.
        let sigma_us2 = cfg.number("sigma_us2")?;
        let sigma = cfg.timing_variance()?;
        let grid = cfg.center_time_grid()?;
        let mut scheme = Scheme::jcm(config, 0.0);
        if let Scheme::Jcm { timing_variance, .. } = &mut scheme {
            *timing_variance = sigma;
        }
        let rows = sweep(&scheme, "t0", &grid)?;
        match format {
            "csv" => {
                let table: Vec<(f64, f64, f64)> = rows
                    .iter()
                    .map(|r| (r.parameter * 1e6, sigma_us2, r.determinant))
                    .collect();
                Ok(averaged_sweep_csv(&table))
            }
            "json" => Ok(json_line(&serde_json::json!({
                "sigma_us2": sigma_us2,
                "rows": rows
                    .iter()
                    .map(|r| serde_json::json!({
                        "t0_us": r.parameter * 1e6,
                        "det_avg": r.determinant,
                    }))
                    .collect::<Vec<_>>(),
            }))),
            other => Err(CmdError::Usage(format!(
                "config error: key 'format' must be 'csv' or 'json', got '{other}'"
            ))),
        }
    } else {
        let grid = cfg.time_grid()?;
        let scheme = Scheme::jcm(config, 0.0);
        let rows = sweep(&scheme, "t", &grid)?;
        match format {
            "csv" => {
                let table: Vec<(f64, f64)> = rows
                    .iter()
                    .map(|r| (r.parameter * 1e6, r.determinant))
                    .collect();
                Ok(sweep_csv(&table))
            }
            "json" => Ok(json_line(&serde_json::json!({
                "rows": rows
                    .iter()
                    .map(|r| serde_json::json!({
                        "t_us": r.parameter * 1e6,
                        "det": r.determinant,
                        "condition_number": condition_for_json(r.condition_number),
                    }))
                    .collect::<Vec<_>>(),
            }))),
            other => Err(CmdError::Usage(format!(
                "config error: key 'format' must be 'csv' or 'json', got '{other}'"
            ))),
        }
    }
}

/// Infinite condition numbers (exactly singular grid points) serialize as a
/// string so the JSON stays valid.
fn condition_for_json(value: f64) -> serde_json::Value {
    if value.is_finite() {
        serde_json::json!(value)
    } else {
        serde_json::json!("inf")
    }
}

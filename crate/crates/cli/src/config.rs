//! Flat key-value JSON configuration with field-level error messages.
//! Command-line flags override file values. All physical quantities carry
//! explicit unit suffixes in their key names.

use num_complex::Complex64;
use serde_json::Value;
use spin_assistant::{AssistantPurity, SpinSchemeParams};
use std::collections::BTreeMap;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

const US: f64 = 1e-6;
const US2: f64 = 1e-12;

/// Parsed configuration: raw key-value map plus typed accessors.
#[derive(Debug, Clone)]
pub struct RunConfig {
    values: BTreeMap<String, Value>,
}

impl RunConfig {
    pub fn from_file(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read '{path}': {e}")))?;
        Self::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| ConfigError(format!("invalid JSON: {e}")))?;
        let map = value
            .as_object()
            .ok_or_else(|| ConfigError("top level must be a JSON object".into()))?;
        Ok(Self {
            values: map.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        })
    }

    pub fn empty() -> Self {
        Self { values: BTreeMap::new() }
    }

    /// Flag overrides: later sources win.
    pub fn set(&mut self, key: &str, value: Value) {
        self.values.insert(key.to_string(), value);
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn number(&self, key: &str) -> Result<f64> {
        self.values
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing key '{key}'")))?
            .as_f64()
            .ok_or_else(|| ConfigError(format!("key '{key}' must be a number")))
    }

    pub fn number_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_f64()
                .ok_or_else(|| ConfigError(format!("key '{key}' must be a number"))),
        }
    }

    pub fn integer_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .ok_or_else(|| ConfigError(format!("key '{key}' must be a nonnegative integer"))),
        }
    }

    pub fn string(&self, key: &str) -> Result<&str> {
        self.values
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing key '{key}'")))?
            .as_str()
            .ok_or_else(|| ConfigError(format!("key '{key}' must be a string")))
    }

    pub fn string_opt(&self, key: &str) -> Result<Option<&str>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_str()
                .map(Some)
                .ok_or_else(|| ConfigError(format!("key '{key}' must be a string"))),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_bool()
                .ok_or_else(|| ConfigError(format!("key '{key}' must be a boolean"))),
        }
    }

    pub fn vec3(&self, key: &str) -> Result<[f64; 3]> {
        let arr = self
            .values
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing key '{key}'")))?
            .as_array()
            .ok_or_else(|| ConfigError(format!("key '{key}' must be a 3-element array")))?;
        if arr.len() != 3 {
            return Err(ConfigError(format!(
                "key '{key}' must have exactly 3 elements, got {}",
                arr.len()
            )));
        }
        let mut out = [0.0; 3];
        for (i, v) in arr.iter().enumerate() {
            out[i] = v
                .as_f64()
                .ok_or_else(|| ConfigError(format!("key '{key}' element {i} must be a number")))?;
        }
        Ok(out)
    }

    pub fn vec3_or(&self, key: &str, default: [f64; 3]) -> Result<[f64; 3]> {
        if self.has(key) {
            self.vec3(key)
        } else {
            Ok(default)
        }
    }

    // ── Typed scheme assembly ──────────────────────────────────────────

    pub fn planted_state(&self) -> Result<qmath::BlochState> {
        let r = self.vec3("r")?;
        qmath::BlochState::new(r).map_err(|e| ConfigError(format!("key 'r': {e}")))
    }

    pub fn shots(&self) -> Result<tomography::Shots> {
        let exact = self.bool_or("exact", false)?;
        if exact {
            return Ok(tomography::Shots::Exact);
        }
        match self.values.get("shots") {
            None => Ok(tomography::Shots::Exact),
            Some(v) => {
                let n = v
                    .as_u64()
                    .ok_or_else(|| ConfigError("key 'shots' must be a nonnegative integer".into()))?;
                if n == 0 {
                    return Err(ConfigError("key 'shots' must be at least 1".into()));
                }
                Ok(tomography::Shots::Count(n))
            }
        }
    }

    pub fn seed(&self) -> Result<u64> {
        self.integer_or("seed", 0)
    }

    pub fn purity(&self) -> Result<AssistantPurity> {
        let lambda = self.number("lambda")?;
        AssistantPurity::new(lambda).map_err(|e| ConfigError(format!("key 'lambda': {e}")))
    }

    /// Spin scheme: a named preset or explicit canonical parameters.
    pub fn spin_scheme(&self) -> Result<tomography::Scheme> {
        if let Some(preset) = self.string_opt("preset")? {
            return match preset {
                "disordered-optimal" => Ok(tomography::Scheme::spin(
                    SpinSchemeParams::disordered_optimal(),
                    AssistantPurity::disordered(),
                )
                .expect("preset is valid")),
                "pure-optimal" => Ok(tomography::Scheme::spin(
                    SpinSchemeParams::pure_optimal(),
                    AssistantPurity::pure(),
                )
                .expect("preset is valid")),
                "pure-hamiltonian" => {
                    let u = qmath::unitary_exp(&spin_assistant::pure_hamiltonian(), 1.0)
                        .expect("fixed generator");
                    Ok(tomography::Scheme::spin_from_unitary(u, AssistantPurity::pure()))
                }
                other => Err(ConfigError(format!(
                    "key 'preset': unknown preset '{other}' (disordered-optimal, pure-optimal, pure-hamiltonian)"
                ))),
            };
        }
        let purity = self.purity()?;
        let eta = self.vec3("eta")?;
        let zeta = self.vec3("zeta")?;
        let xi = self.vec3_or("xi", [1.0, 0.0, 0.0])?;
        let chi = self.vec3_or("chi", [0.0, 1.0, 0.0])?;
        let params = SpinSchemeParams::new(
            self.number("theta_rad")?,
            self.number("phi_rad")?,
            self.number("psi_rad")?,
            xi,
            chi,
            eta,
            zeta,
        )
        .map_err(|e| ConfigError(format!("spin parameters: {e}")))?;
        tomography::Scheme::spin(params, purity).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn jcm_config(&self) -> Result<jcm_assistant::JcmConfig> {
        let detuning = self.number("delta_rad_per_s")?;
        let coupling = self.number("g_rad_per_s")?;
        let alpha = if self.has("alpha_re") || self.has("alpha_im") {
            Complex64::new(
                self.number_or("alpha_re", 0.0)?,
                self.number_or("alpha_im", 0.0)?,
            )
        } else {
            let n_bar = self.number("n_bar")?;
            if n_bar < 0.0 {
                return Err(ConfigError("key 'n_bar' must be nonnegative".into()));
            }
            Complex64::new(n_bar.sqrt(), 0.0)
        };
        let fock_dim = self.integer_or(
            "fock_dim",
            jcm_assistant::default_fock_dim(alpha.norm_sqr()) as u64,
        )? as usize;
        jcm_assistant::JcmConfig::new(detuning, coupling, alpha, fock_dim)
            .map_err(|e| ConfigError(format!("cavity parameters: {e}")))
    }

    pub fn jcm_scheme(&self) -> Result<tomography::Scheme> {
        let config = self.jcm_config()?;
        let time = self.number("t_us")? * US;
        let mut scheme = tomography::Scheme::jcm(config, time);
        if let tomography::Scheme::Jcm { timing_variance, .. } = &mut scheme {
            *timing_variance = self.number_or("sigma_us2", 0.0)? * US2;
        }
        Ok(scheme)
    }

    /// A linear grid over interaction time, in seconds.
    pub fn time_grid(&self) -> Result<Vec<f64>> {
        linear_grid(
            self.number("t_start_us")? * US,
            self.number("t_stop_us")? * US,
            self.integer_or("t_points", 200)?,
            "t",
        )
    }

    pub fn center_time_grid(&self) -> Result<Vec<f64>> {
        linear_grid(
            self.number("t0_start_us")? * US,
            self.number("t0_stop_us")? * US,
            self.integer_or("t0_points", 200)?,
            "t0",
        )
    }

    pub fn timing_variance(&self) -> Result<f64> {
        let sigma = self.number("sigma_us2")? * US2;
        if sigma < 0.0 {
            return Err(ConfigError("key 'sigma_us2' must be nonnegative".into()));
        }
        Ok(sigma)
    }
}

fn linear_grid(start: f64, stop: f64, points: u64, what: &str) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(ConfigError(format!(
            "key '{what}_points' must be at least 2"
        )));
    }
    if !(stop > start) {
        return Err(ConfigError(format!(
            "'{what}_stop_us' must exceed '{what}_start_us'"
        )));
    }
    let n = points as usize;
    Ok((0..n)
        .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
        .collect())
}

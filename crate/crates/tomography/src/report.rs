//! Round-trip experiments: plant a state, measure (exactly or with finite
//! shots), reconstruct, and report errors with conditioning diagnostics.

use crate::distribution::sample;
use crate::scheme::Scheme;
use crate::Result;
use qmath::BlochState;
use serde::Serialize;

/// Exact expectation values or a finite shot budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shots {
    Exact,
    Count(u64),
}

impl Serialize for Shots {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Shots::Exact => s.serialize_str("exact"),
            Shots::Count(n) => s.serialize_u64(*n),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundTripReport {
    pub scheme: &'static str,
    pub planted: [f64; 3],
    pub recovered: [f64; 3],
    pub abs_error: [f64; 3],
    pub determinant: f64,
    pub condition_number: f64,
    pub n_shots: Shots,
    /// Set when the recovered vector left the Bloch ball (expected under
    /// shot noise).
    pub inconsistent_data: bool,
    /// Shot mode only: standard errors of the recovered components,
    /// propagated from the empirical averages through the inverse map.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovered_std_errors: Option<[f64; 3]>,
}

/// Run one experiment end to end.
pub fn roundtrip(
    scheme: &Scheme,
    planted: &BlochState,
    shots: Shots,
    seed: u64,
) -> Result<RoundTripReport> {
    let system = scheme.linear_system()?;
    let (triple, std_errors) = match shots {
        Shots::Exact => (scheme.analytic_triple(planted)?, None),
        Shots::Count(n) => {
            let record = sample(scheme, planted, n, seed)?;
            (record.triple(), Some(record.standard_errors()))
        }
    };
    let rec = scheme.reconstruct(&triple)?;

    // Propagate measurement standard errors through the inverse map:
    // sigma_r_i^2 = sum_j (Cinv_ij sigma_m_j)^2.
    let recovered_std_errors = std_errors.map(|se| {
        let mut out = [0.0; 3];
        for i in 0..3 {
            let mut unit = [0.0; 3];
            // Column j of the inverse is solve(e_j + offset).
            for j in 0..3 {
                let mut m = system.offset;
                m[j] += 1.0;
                let col = system.solve(m);
                unit[j] = col[i];
            }
            out[i] = (0..3).map(|j| (unit[j] * se[j]).powi(2)).sum::<f64>().sqrt();
        }
        out
    });

    let planted = planted.components();
    Ok(RoundTripReport {
        scheme: scheme.kind(),
        planted,
        recovered: rec.r,
        abs_error: rec.abs_error(planted),
        determinant: system.det,
        condition_number: system.condition_number,
        n_shots: shots,
        inconsistent_data: rec.inconsistent_data,
        recovered_std_errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_assistant::{AssistantPurity, SpinSchemeParams};

    #[test]
    fn exact_roundtrip_is_tight() {
        let scheme = Scheme::spin(
            SpinSchemeParams::disordered_optimal(),
            AssistantPurity::disordered(),
        )
        .unwrap();
        let r = BlochState::new([0.2, 0.1, 0.5]).unwrap();
        let report = roundtrip(&scheme, &r, Shots::Exact, 0).unwrap();
        assert!(report.abs_error.iter().all(|e| *e < 1e-10));
        assert!((report.determinant - (-0.125)).abs() < 1e-12);
        assert!((report.condition_number - 1.0).abs() < 1e-9);
        assert!(!report.inconsistent_data);
    }

    #[test]
    fn shot_roundtrip_reports_errors() {
        let scheme = Scheme::spin(
            SpinSchemeParams::disordered_optimal(),
            AssistantPurity::disordered(),
        )
        .unwrap();
        let r = BlochState::new([0.2, 0.1, 0.5]).unwrap();
        let report = roundtrip(&scheme, &r, Shots::Count(200_000), 3).unwrap();
        let se = report.recovered_std_errors.unwrap();
        for i in 0..3 {
            assert!(se[i] > 0.0);
            assert!(report.abs_error[i] < 6.0 * se[i], "component {i}");
        }
    }
}

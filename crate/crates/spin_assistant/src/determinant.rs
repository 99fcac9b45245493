//! Closed-form determinant of the spin-scheme coefficient system.

use crate::params::{AssistantPurity, SpinSchemeParams};
use crate::Result;

/// Determinant of the (s_z, sigma_z, s_z sigma_z) coefficient matrix as a
/// closed trigonometric form in the scheme parameters.
///
/// Agrees with `det(coefficient_system(p, lam).coeffs)` to machine
/// precision; the normalization is pinned to the actual measured triple and
/// cross-checked against the brute-force probe assembly in the tests.
/// (Conventions that fold the correlator rows differently scale this value
/// by -1/4.)
pub fn determinant_closed_form(p: &SpinSchemeParams, lam: AssistantPurity) -> Result<f64> {
    p.validate()?;
    let l = lam.lambda();
    let s2t = (2.0 * p.theta).sin();
    let c2t = (2.0 * p.theta).cos();
    let s2f = (2.0 * p.phi).sin();
    let c2f = (2.0 * p.phi).cos();
    let s2p = (2.0 * p.psi).sin();
    let c2p = (2.0 * p.psi).cos();
    let s4p = (4.0 * p.psi).sin();
    let (eta, zeta) = p.frame_components();

    let mix = l * l * c2p * c2p + s2p * s2p;
    let bracket = 0.5
        * (1.0 - l * l)
        * s4p
        * ((c2f + l * c2t) * eta[0] * zeta[1] - (c2f - l * c2t) * eta[1] * zeta[0])
        + eta[2] * zeta[0] * (c2f - l * c2t) * (l * c2f + c2t * mix)
        - eta[0] * zeta[2] * (c2f + l * c2t) * (l * c2f - c2t * mix);

    // The row-normalized determinant: -(1/2) sin2theta sin2phi * bracket.
    Ok(-0.5 * s2t * s2f * bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_8;

    #[test]
    fn vanishes_at_zero_phase_disordered() {
        let s = 1.0 / 2.0f64.sqrt();
        let p = SpinSchemeParams::in_standard_frame(
            FRAC_PI_8,
            FRAC_PI_8,
            0.0,
            [s, 0.0, s],
            [s, 0.0, s],
        )
        .unwrap();
        let d = determinant_closed_form(&p, AssistantPurity::disordered()).unwrap();
        assert!(d.abs() < 1e-15);
    }

    #[test]
    fn disordered_preset_value() {
        let p = SpinSchemeParams::disordered_optimal();
        let d = determinant_closed_form(&p, AssistantPurity::disordered()).unwrap();
        assert!((d - (-0.125)).abs() < 1e-14, "got {d}");
    }

    #[test]
    fn pure_preset_value() {
        let p = SpinSchemeParams::pure_optimal();
        let d = determinant_closed_form(&p, AssistantPurity::pure()).unwrap();
        let want = 1.0 / (3.0 * 3.0f64.sqrt());
        assert!((d - want).abs() < 1e-14, "got {d}, want {want}");
    }
}

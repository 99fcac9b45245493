//! Scheme parameters: the angles and unit vectors of the canonical 4x4
//! unitary, and the assistant's initial purity.

use crate::{Result, SpinError};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

const UNIT_TOL: f64 = 1e-12;

/// Parameters of the canonical two-spin unitary.
///
/// `theta`, `phi` parametrize the positive block K = cos(theta)cos(phi) +
/// sin(theta)sin(phi) chi.sigma; `psi`, `xi` the phase block X =
/// exp(i psi xi.sigma); `eta`, `zeta` fix how the two outer unitaries carry
/// sigma_z. The angle domain is the positivity region of K: theta, phi > 0
/// with theta + phi <= pi/2. (The symmetric-ordering convention phi <= theta
/// is deliberately not enforced — the pure-assistant optimum lives on the
/// other branch, and the two are related by an exact symmetry of the
/// determinant.)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSchemeParams {
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
    pub xi: [f64; 3],
    pub chi: [f64; 3],
    pub eta: [f64; 3],
    pub zeta: [f64; 3],
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl SpinSchemeParams {
    /// Full constructor; validates every bound and names the violated one.
    pub fn new(
        theta: f64,
        phi: f64,
        psi: f64,
        xi: [f64; 3],
        chi: [f64; 3],
        eta: [f64; 3],
        zeta: [f64; 3],
    ) -> Result<Self> {
        let p = Self { theta, phi, psi, xi, chi, eta, zeta };
        p.validate()?;
        Ok(p)
    }

    /// Constructor in the standard frame xi = x, chi = y.
    pub fn in_standard_frame(
        theta: f64,
        phi: f64,
        psi: f64,
        eta: [f64; 3],
        zeta: [f64; 3],
    ) -> Result<Self> {
        Self::new(theta, phi, psi, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], eta, zeta)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(SpinError::InvalidParams(msg));
        if !(self.theta > 0.0 && self.theta < FRAC_PI_2) {
            return err(format!("theta = {} outside (0, pi/2)", self.theta));
        }
        if !(self.phi > 0.0 && self.phi < FRAC_PI_2) {
            return err(format!("phi = {} outside (0, pi/2)", self.phi));
        }
        if self.theta + self.phi > FRAC_PI_2 + 1e-12 {
            return err(format!(
                "theta + phi = {} exceeds pi/2 (K loses positivity)",
                self.theta + self.phi
            ));
        }
        if !(0.0..=PI).contains(&self.psi) {
            return err(format!("psi = {} outside [0, pi]", self.psi));
        }
        for (name, v) in [
            ("xi", self.xi),
            ("chi", self.chi),
            ("eta", self.eta),
            ("zeta", self.zeta),
        ] {
            if (norm3(v) - 1.0).abs() > UNIT_TOL {
                return err(format!("{name} is not a unit vector (|{name}| = {})", norm3(v)));
            }
        }
        if dot3(self.xi, self.chi).abs() > UNIT_TOL {
            return err(format!(
                "xi and chi must be perpendicular (xi.chi = {:.3e})",
                dot3(self.xi, self.chi)
            ));
        }
        Ok(())
    }

    /// Components of eta and zeta in the (xi, chi, xi x chi) frame.
    pub(crate) fn frame_components(&self) -> ([f64; 3], [f64; 3]) {
        let z_axis = cross3(self.xi, self.chi);
        let comp = |v: [f64; 3]| [dot3(self.xi, v), dot3(self.chi, v), dot3(z_axis, v)];
        (comp(self.eta), comp(self.zeta))
    }

    /// Rotation with rows (xi, chi, xi x chi); maps lab components to frame
    /// components.
    pub(crate) fn frame_rotation(&self) -> [[f64; 3]; 3] {
        let z_axis = cross3(self.xi, self.chi);
        [self.xi, self.chi, z_axis]
    }

    /// The disordered-assistant optimum: theta = phi = pi/8, psi = pi/4,
    /// eta = zeta = (1, 0, 1)/sqrt(2).
    pub fn disordered_optimal() -> Self {
        let s = 1.0 / 2.0f64.sqrt();
        Self::in_standard_frame(FRAC_PI_8, FRAC_PI_8, FRAC_PI_4, [s, 0.0, s], [s, 0.0, s])
            .expect("preset is valid")
    }

    /// The pure-assistant optimum with the phase fixed at psi = pi/4:
    /// sin^2(2 theta) = 1/3, phi = pi/4, eta and zeta perpendicular.
    pub fn pure_optimal() -> Self {
        let s = 1.0 / 2.0f64.sqrt();
        let theta = 0.5 * (1.0 / 3.0f64.sqrt()).asin();
        Self::in_standard_frame(theta, FRAC_PI_4, FRAC_PI_4, [s, 0.0, s], [s, 0.0, -s])
            .expect("preset is valid")
    }
}

/// Purity of the assistant's initial state, rho_A = (1 + lambda s_z)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssistantPurity {
    lambda: f64,
}

impl AssistantPurity {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(SpinError::InvalidParams(format!(
                "lambda = {lambda} outside [0, 1]"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn disordered() -> Self {
        Self { lambda: 0.0 }
    }

    pub fn pure() -> Self {
        Self { lambda: 1.0 }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        SpinSchemeParams::disordered_optimal().validate().unwrap();
        SpinSchemeParams::pure_optimal().validate().unwrap();
    }

    #[test]
    fn positivity_bound_enforced() {
        let s = 1.0 / 2.0f64.sqrt();
        let bad = SpinSchemeParams::in_standard_frame(1.2, 0.6, 0.1, [s, 0.0, s], [s, 0.0, s]);
        assert!(matches!(bad, Err(SpinError::InvalidParams(msg)) if msg.contains("theta + phi")));
    }

    #[test]
    fn non_unit_eta_named() {
        let bad =
            SpinSchemeParams::in_standard_frame(0.3, 0.3, 0.1, [1.0, 0.0, 1.0], [0.0, 0.0, 1.0]);
        assert!(matches!(bad, Err(SpinError::InvalidParams(msg)) if msg.contains("eta")));
    }

    #[test]
    fn purity_bounds() {
        assert!(AssistantPurity::new(-0.1).is_err());
        assert!(AssistantPurity::new(1.1).is_err());
        assert_eq!(AssistantPurity::new(1.0).unwrap().lambda(), 1.0);
    }
}

//! Bloch-vector representation of a qubit state.

use crate::cmatrix::{dot_sigma, sigma_x, sigma_y, sigma_z};
use crate::{herm_eig, tol, CMatrix, Complex64, QmathError, Result};

/// A qubit state as its real polarization vector, |r| <= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    r: [f64; 3],
}

impl BlochState {
    /// Validates the purity bound; |r| beyond 1 is physically excluded.
    pub fn new(r: [f64; 3]) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if norm > 1.0 + tol::POLARIZATION {
            return Err(QmathError::UnphysicalPolarization { norm });
        }
        Ok(Self { r })
    }

    pub fn components(&self) -> [f64; 3] {
        self.r
    }

    pub fn norm(&self) -> f64 {
        (self.r[0] * self.r[0] + self.r[1] * self.r[1] + self.r[2] * self.r[2]).sqrt()
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() < tol::POLARIZATION
    }
}

/// rho = (1 + r . sigma) / 2.
pub fn density_from_bloch(state: &BlochState) -> CMatrix {
    let half = Complex64::new(0.5, 0.0);
    CMatrix::identity(2)
        .add(&dot_sigma(state.components()))
        .scale(half)
}

/// Inverse map r_a = tr[rho sigma_a], validating that rho is a state.
pub fn bloch_from_density(rho: &CMatrix) -> Result<BlochState> {
    if rho.rows != 2 || rho.cols != 2 {
        return Err(QmathError::DimensionMismatch(format!(
            "qubit density matrix must be 2x2, got {}x{}",
            rho.rows, rho.cols
        )));
    }
    let defect = rho.hermiticity_defect();
    if defect >= tol::HERMITICITY {
        return Err(QmathError::NotHermitian { defect, tol: tol::HERMITICITY });
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol::TRACE || tr.im.abs() > tol::TRACE {
        return Err(QmathError::NotDensity(format!("trace = {tr}")));
    }
    let (vals, _) = herm_eig(rho)?;
    if vals.iter().any(|&v| v < -tol::EIGENVALUE_FLOOR) {
        return Err(QmathError::NotDensity(format!(
            "negative eigenvalue {:.3e}",
            vals[0]
        )));
    }
    let r = [
        rho.mul(&sigma_x()).trace().re,
        rho.mul(&sigma_y()).trace().re,
        rho.mul(&sigma_z()).trace().re,
    ];
    BlochState::new(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed() {
        let rho = density_from_bloch(&BlochState::new([0.0; 3]).unwrap());
        let half = CMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
        assert!(rho.max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn pure_excited_state() {
        let rho = density_from_bloch(&BlochState::new([0.0, 0.0, 1.0]).unwrap());
        let want = CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert!(rho.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn overlong_polarization_rejected() {
        assert!(matches!(
            BlochState::new([1.2, 0.0, 0.0]),
            Err(QmathError::UnphysicalPolarization { .. })
        ));
    }

    #[test]
    fn density_eigenvalues_follow_purity() {
        let r = [0.3, -0.2, 0.4];
        let state = BlochState::new(r).unwrap();
        let rho = density_from_bloch(&state);
        let (vals, _) = herm_eig(&rho).unwrap();
        let norm = state.norm();
        assert!((vals[0] - (1.0 - norm) / 2.0).abs() < 1e-12);
        assert!((vals[1] - (1.0 + norm) / 2.0).abs() < 1e-12);
    }
}

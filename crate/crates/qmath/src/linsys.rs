//! The 3x3 real linear system both assistant schemes invert: measured triple
//! = coeffs * r + offset.

use crate::{herm_eig, CMatrix, Complex64};

/// The three simultaneously measurable averages: one observable of the
/// system, one of the assistant, and their coincidence correlator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementTriple {
    /// System observable average (sigma_z of the probed qubit).
    pub sys_avg: f64,
    /// Assistant observable average (s_z of a spin assistant, photon number
    /// of a field assistant).
    pub assist_avg: f64,
    /// Average of the product of the two commuting observables.
    pub correlator: f64,
}

/// Result of inverting a measurement map. The recovered vector is reported
/// even when it falls outside the Bloch ball (expected under shot noise);
/// `inconsistent_data` marks that case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconstruction {
    pub r: [f64; 3],
    pub inconsistent_data: bool,
}

impl Reconstruction {
    pub fn abs_error(&self, planted: [f64; 3]) -> [f64; 3] {
        [
            (self.r[0] - planted[0]).abs(),
            (self.r[1] - planted[1]).abs(),
            (self.r[2] - planted[2]).abs(),
        ]
    }
}

/// Coefficient matrix and constant offset of a measurement map, together
/// with its determinant and 2-norm condition number.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub coeffs: [[f64; 3]; 3],
    pub offset: [f64; 3],
    pub det: f64,
    pub condition_number: f64,
}

impl LinearSystem {
    pub fn new(coeffs: [[f64; 3]; 3], offset: [f64; 3]) -> Self {
        let det = det3(&coeffs);
        let condition_number = condition_number(&coeffs);
        Self { coeffs, offset, det, condition_number }
    }

    /// Apply the forward map coeffs * r + offset.
    pub fn apply(&self, r: [f64; 3]) -> [f64; 3] {
        let mut out = self.offset;
        for i in 0..3 {
            for j in 0..3 {
                out[i] += self.coeffs[i][j] * r[j];
            }
        }
        out
    }

    /// Solve coeffs * r = m - offset by the adjugate; caller checks det.
    pub fn solve(&self, m: [f64; 3]) -> [f64; 3] {
        let b = [
            m[0] - self.offset[0],
            m[1] - self.offset[1],
            m[2] - self.offset[2],
        ];
        let c = &self.coeffs;
        let adj = [
            [
                c[1][1] * c[2][2] - c[1][2] * c[2][1],
                c[0][2] * c[2][1] - c[0][1] * c[2][2],
                c[0][1] * c[1][2] - c[0][2] * c[1][1],
            ],
            [
                c[1][2] * c[2][0] - c[1][0] * c[2][2],
                c[0][0] * c[2][2] - c[0][2] * c[2][0],
                c[0][2] * c[1][0] - c[0][0] * c[1][2],
            ],
            [
                c[1][0] * c[2][1] - c[1][1] * c[2][0],
                c[0][1] * c[2][0] - c[0][0] * c[2][1],
                c[0][0] * c[1][1] - c[0][1] * c[1][0],
            ],
        ];
        let mut out = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i] += adj[i][j] * b[j];
            }
            out[i] /= self.det;
        }
        out
    }

    /// Product of row 2-norms, the scale used for relative singularity tests.
    pub fn row_norm_scale(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|row| (row[0] * row[0] + row[1] * row[1] + row[2] * row[2]).sqrt())
            .product()
    }
}

pub fn det3(c: &[[f64; 3]; 3]) -> f64 {
    c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
        - c[0][1] * (c[1][0] * c[2][2] - c[1][2] * c[2][0])
        + c[0][2] * (c[1][0] * c[2][1] - c[1][1] * c[2][0])
}

/// 2-norm condition number via the singular values of the 3x3 matrix,
/// obtained from the spectrum of M^T M. Singular matrices report infinity.
fn condition_number(c: &[[f64; 3]; 3]) -> f64 {
    let mut gram = CMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += c[k][i] * c[k][j];
            }
            gram[(i, j)] = Complex64::new(acc, 0.0);
        }
    }
    let (vals, _) = herm_eig(&gram).expect("Gram matrix is symmetric");
    let smin = vals[0].max(0.0).sqrt();
    let smax = vals[2].max(0.0).sqrt();
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

//! Dense complex matrices in row-major order, plus the tensor-algebra
//! operations (Kronecker product, partial traces) the assistant schemes rely
//! on.

use crate::{tol, Complex64, QmathError, Result, ONE, ZERO};

/// A dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Build from a nested array of complex entries (row per inner slice).
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    /// Build from real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(rows * cols, entries.len());
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let lhs = k * other.cols;
                let dst = i * other.cols;
                for j in 0..other.cols {
                    out.data[dst + j] += a * other.data[lhs + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude of self - other.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermiticity defect max |M - M^dag|.
    pub fn hermiticity_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.is_square() && self.hermiticity_defect() < tolerance
    }

    /// Unitarity defect max |U^dag U - 1|.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().mul(self).max_abs_diff(&CMatrix::identity(self.cols))
    }

    /// Extract the 2x2 block at block position (bi, bj) of a matrix viewed as
    /// 2x2 blocks over the assistant index.
    pub fn block2(&self, bi: usize, bj: usize) -> CMatrix {
        assert_eq!(self.rows, 4);
        assert_eq!(self.cols, 4);
        let mut out = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = self[(2 * bi + i, 2 * bj + j)];
            }
        }
        out
    }

    /// Assemble a 4x4 matrix from 2x2 blocks (block index = assistant index).
    pub fn from_blocks2(b00: &CMatrix, b01: &CMatrix, b10: &CMatrix, b11: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(4, 4);
        for (bi, bj, b) in [(0, 0, b00), (0, 1, b01), (1, 0, b10), (1, 1, b11)] {
            for i in 0..2 {
                for j in 0..2 {
                    out[(2 * bi + i, 2 * bj + j)] = b[(i, j)];
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product, assistant-space factor first.
///
/// The ordering convention is fixed project-wide: `kron(a, b)` places `a` on
/// the slow (assistant) index and `b` on the fast (system) index, so a joint
/// state of assistant R and system rho is `kron(&r_mat, &rho)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let f = a[(ia, ja)];
            if f == ZERO {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out[(ia * b.rows + ib, ja * b.cols + jb)] = f * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Reduce a joint density matrix (assistant ⊗ system, system dimension 2)
/// to its marginals. Returns `(rho_system, rho_assistant)`.
pub fn partial_traces(omega: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    if !omega.is_square() || omega.rows % 2 != 0 || omega.rows == 0 {
        return Err(QmathError::DimensionMismatch(format!(
            "partial trace needs a square matrix of even dimension, got {}x{}",
            omega.rows, omega.cols
        )));
    }
    let defect = omega.hermiticity_defect();
    if defect >= tol::HERMITICITY {
        return Err(QmathError::NotHermitian { defect, tol: tol::HERMITICITY });
    }
    let tr = omega.trace();
    if (tr.re - 1.0).abs() > tol::TRACE || tr.im.abs() > tol::TRACE {
        return Err(QmathError::NotDensity(format!("trace = {tr}")));
    }
    let da = omega.rows / 2;
    let mut system = CMatrix::zeros(2, 2);
    let mut assistant = CMatrix::zeros(da, da);
    for a in 0..da {
        for b in 0..da {
            let mut acc = ZERO;
            for s in 0..2 {
                acc += omega[(a * 2 + s, b * 2 + s)];
            }
            assistant[(a, b)] = acc;
        }
    }
    for s in 0..2 {
        for t in 0..2 {
            let mut acc = ZERO;
            for a in 0..da {
                acc += omega[(a * 2 + s, a * 2 + t)];
            }
            system[(s, t)] = acc;
        }
    }
    Ok((system, assistant))
}

/// Pauli matrices (system or assistant copies are obtained by `kron`).
pub fn sigma_x() -> CMatrix {
    CMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_rows(&[
        &[ZERO, Complex64::new(0.0, -1.0)],
        &[Complex64::new(0.0, 1.0), ZERO],
    ])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]])
}

/// n . sigma for a real 3-vector n.
pub fn dot_sigma(n: [f64; 3]) -> CMatrix {
    let mut m = sigma_x().scale(Complex64::new(n[0], 0.0));
    m = m.add(&sigma_y().scale(Complex64::new(n[1], 0.0)));
    m.add(&sigma_z().scale(Complex64::new(n[2], 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_identity_case() {
        let i2 = CMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4));
    }

    #[test]
    fn kron_diag_with_identity() {
        let d = CMatrix::diag(&[ONE, -ONE]);
        let got = kron(&d, &CMatrix::identity(2));
        let want = CMatrix::diag(&[ONE, ONE, -ONE, -ONE]);
        assert!(got.max_abs_diff(&want) == 0.0);
    }

    #[test]
    fn kron_sigma_x_sigma_z() {
        // Anti-block matrix with +sigma_z in the off-diagonal blocks.
        let got = kron(&sigma_x(), &sigma_z());
        assert_eq!(got.block2(0, 0).max_abs(), 0.0);
        assert_eq!(got.block2(1, 1).max_abs(), 0.0);
        assert!(got.block2(0, 1).max_abs_diff(&sigma_z()) == 0.0);
        assert!(got.block2(1, 0).max_abs_diff(&sigma_z()) == 0.0);
    }

    #[test]
    fn partial_trace_product_state() {
        let rho = CMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3]);
        let r = CMatrix::from_real(2, 2, &[0.6, 0.0, 0.0, 0.4]);
        let omega = kron(&r, &rho);
        let (sys, assist) = partial_traces(&omega).unwrap();
        assert!(sys.max_abs_diff(&rho) < 1e-15);
        assert!(assist.max_abs_diff(&r) < 1e-15);
    }

    #[test]
    fn partial_trace_maximally_mixed() {
        let omega = CMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
        let (sys, assist) = partial_traces(&omega).unwrap();
        let half = CMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
        assert!(sys.max_abs_diff(&half) < 1e-15);
        assert!(assist.max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_odd_dimension() {
        let m = CMatrix::identity(3).scale(Complex64::new(1.0 / 3.0, 0.0));
        assert!(matches!(partial_traces(&m), Err(QmathError::DimensionMismatch(_))));
    }
}

//! Canonical form of the two-spin unitary: U = diag(V, W) . [[K, K'], [K', -K]]
//! . diag(X, X^dag), and its recovery from an arbitrary 4x4 unitary via polar
//! decomposition of the diagonal blocks.

use crate::params::SpinSchemeParams;
use crate::{Result, SpinError, POLAR_BLOCK_MIN_SV};
use qmath::cmatrix::dot_sigma;
use qmath::{herm_eig, CMatrix, Complex64, ONE, ZERO};

/// Unitary rotation taking sigma_z to target.sigma under conjugation:
/// V^dag sigma_z V = target . sigma.
pub(crate) fn carrier_rotation(target: [f64; 3]) -> CMatrix {
    let axis = [-target[1], target[0], 0.0]; // z x target
    let sin_angle = (axis[0] * axis[0] + axis[1] * axis[1]).sqrt();
    if sin_angle < 1e-12 {
        if target[2] > 0.0 {
            return CMatrix::identity(2);
        }
        // Antipode: a fixed pi rotation about x.
        return dot_sigma([1.0, 0.0, 0.0]).scale(Complex64::new(0.0, -1.0));
    }
    let angle = sin_angle.atan2(target[2]);
    let unit = [axis[0] / sin_angle, axis[1] / sin_angle, 0.0];
    let half = angle / 2.0;
    CMatrix::identity(2)
        .scale(Complex64::new(half.cos(), 0.0))
        .add(&dot_sigma(unit).scale(Complex64::new(0.0, half.sin())))
}

pub(crate) fn positive_block(theta: f64, phi: f64, chi: [f64; 3]) -> CMatrix {
    CMatrix::identity(2)
        .scale(Complex64::new(theta.cos() * phi.cos(), 0.0))
        .add(&dot_sigma(chi).scale(Complex64::new(theta.sin() * phi.sin(), 0.0)))
}

pub(crate) fn complement_block(theta: f64, phi: f64, chi: [f64; 3]) -> CMatrix {
    CMatrix::identity(2)
        .scale(Complex64::new(theta.sin() * phi.cos(), 0.0))
        .sub(&dot_sigma(chi).scale(Complex64::new(theta.cos() * phi.sin(), 0.0)))
}

pub(crate) fn phase_block(psi: f64, xi: [f64; 3]) -> CMatrix {
    CMatrix::identity(2)
        .scale(Complex64::new(psi.cos(), 0.0))
        .add(&dot_sigma(xi).scale(Complex64::new(0.0, psi.sin())))
}

/// Assemble the canonical 4x4 unitary from scheme parameters.
pub fn build_unitary(p: &SpinSchemeParams) -> Result<CMatrix> {
    p.validate()?;
    let k = positive_block(p.theta, p.phi, p.chi);
    let kp = complement_block(p.theta, p.phi, p.chi);
    let x = phase_block(p.psi, p.xi);
    let xd = x.dagger();
    let v = carrier_rotation(p.eta);
    let w = carrier_rotation(p.zeta);
    let u = CMatrix::from_blocks2(
        &v.mul(&k).mul(&x),
        &v.mul(&kp).mul(&xd),
        &w.mul(&kp).mul(&x),
        &w.mul(&k).mul(&xd).scale(-ONE),
    );
    debug_assert!(u.unitarity_defect() < 1e-12);
    Ok(u)
}

/// Full canonical data recovered from a 4x4 unitary.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub v: CMatrix,
    pub w: CMatrix,
    pub k: CMatrix,
    pub k_prime: CMatrix,
    pub x: CMatrix,
    /// Angles recovered from the spectrum of K (theta >= phi branch).
    pub theta: f64,
    pub phi: f64,
}

impl CanonicalForm {
    /// Reassemble diag(V, W) . [[K, K'], [K', -K]] . diag(X, X^dag).
    pub fn rebuild(&self) -> CMatrix {
        CMatrix::from_blocks2(
            &self.v.mul(&self.k).mul(&self.x),
            &self.v.mul(&self.k_prime).mul(&self.x.dagger()),
            &self.w.mul(&self.k_prime).mul(&self.x),
            &self.w.mul(&self.k).mul(&self.x.dagger()).scale(-ONE),
        )
    }

    /// How sigma_z is carried by the outer unitaries: (eta, zeta).
    pub fn carried_axes(&self) -> ([f64; 3], [f64; 3]) {
        (conjugated_z_axis(&self.v), conjugated_z_axis(&self.w))
    }
}

fn conjugated_z_axis(v: &CMatrix) -> [f64; 3] {
    let m = v.dagger().mul(&qmath::cmatrix::sigma_z()).mul(v);
    [
        m.mul(&qmath::cmatrix::sigma_x()).trace().re / 2.0,
        m.mul(&qmath::cmatrix::sigma_y()).trace().re / 2.0,
        m.mul(&qmath::cmatrix::sigma_z()).trace().re / 2.0,
    ]
}

/// Positive square root of a PSD Hermitian 2x2 matrix, plus its smallest
/// eigenvalue square root (the block's smallest singular value).
fn sqrt_psd(m: &CMatrix) -> Result<(CMatrix, f64)> {
    let (vals, vecs) = herm_eig(m)?;
    let roots: Vec<f64> = vals.iter().map(|&v| v.max(0.0).sqrt()).collect();
    let mut out = CMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = ZERO;
            for (kk, &root) in roots.iter().enumerate() {
                acc += vecs[(i, kk)] * Complex64::new(root, 0.0) * vecs[(j, kk)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok((out, roots[0]))
}

fn invert_pos(m: &CMatrix) -> Result<CMatrix> {
    let (vals, vecs) = herm_eig(m)?;
    let mut out = CMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = ZERO;
            for (kk, &v) in vals.iter().enumerate() {
                acc += vecs[(i, kk)] * Complex64::new(1.0 / v, 0.0) * vecs[(j, kk)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Eigen pairs of a 2x2 normal (here: unitary) matrix.
fn eig2_normal(m: &CMatrix) -> [(Complex64, [Complex64; 2]); 2] {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * Complex64::new(4.0, 0.0)).sqrt();
    let l1 = (tr + disc) * Complex64::new(0.5, 0.0);
    let l2 = (tr - disc) * Complex64::new(0.5, 0.0);
    if (l1 - l2).norm() < 1e-12 {
        // Scalar matrix: any orthonormal basis works.
        return [(l1, [ONE, ZERO]), (l2, [ZERO, ONE])];
    }
    let vec_for = |lam: Complex64, other: Complex64| -> [Complex64; 2] {
        // Columns of (M - other I) span the lam eigenspace.
        let c0 = [m[(0, 0)] - other, m[(1, 0)]];
        let c1 = [m[(0, 1)], m[(1, 1)] - other];
        let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
        let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
        let c = if n0 >= n1 { c0 } else { c1 };
        let n = if n0 >= n1 { n0 } else { n1 };
        let _ = lam;
        [c[0] / Complex64::new(n, 0.0), c[1] / Complex64::new(n, 0.0)]
    };
    [(l1, vec_for(l1, l2)), (l2, vec_for(l2, l1))]
}

/// Principal square root of a 2x2 unitary, with the sign convention
/// (X + X^dag) >= 0: each unit-modulus eigenvalue e^{i b}, b in (-pi, pi],
/// maps to e^{i b / 2}.
fn unitary_sqrt(m: &CMatrix) -> CMatrix {
    let pairs = eig2_normal(m);
    let mut out = CMatrix::zeros(2, 2);
    for (lam, vec) in pairs {
        let unit = lam / Complex64::new(lam.norm(), 0.0);
        let root = Complex64::from_polar(1.0, unit.arg() / 2.0);
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] += root * vec[i] * vec[j].conj();
            }
        }
    }
    out
}

/// Recover the canonical form of a 4x4 unitary.
///
/// Requires both diagonal polar blocks to be safely non-singular; at or
/// below [`POLAR_BLOCK_MIN_SV`] the representation stops being unique and
/// the decomposition refuses rather than picking a branch silently.
pub fn decompose_unitary(u: &CMatrix) -> Result<CanonicalForm> {
    if u.rows != 4 || u.cols != 4 {
        return Err(SpinError::Math(qmath::QmathError::DimensionMismatch(
            format!("expected a 4x4 unitary, got {}x{}", u.rows, u.cols),
        )));
    }
    let defect = u.unitarity_defect();
    if defect >= 1e-10 {
        return Err(SpinError::NotUnitary(defect));
    }
    let a = u.block2(0, 0);
    let b = u.block2(1, 0);
    let c = u.block2(0, 1);

    let (k_small, min_sv_a) = sqrt_psd(&a.dagger().mul(&a))?;
    if min_sv_a <= POLAR_BLOCK_MIN_SV {
        return Err(SpinError::DegeneratePolarBlock {
            min_sv: min_sv_a,
            threshold: POLAR_BLOCK_MIN_SV,
        });
    }
    let (kp_small, min_sv_b) = sqrt_psd(&b.dagger().mul(&b))?;
    if min_sv_b <= POLAR_BLOCK_MIN_SV {
        return Err(SpinError::DegeneratePolarBlock {
            min_sv: min_sv_b,
            threshold: POLAR_BLOCK_MIN_SV,
        });
    }

    let v_small = a.mul(&invert_pos(&k_small)?);
    let w_small = b.mul(&invert_pos(&kp_small)?);
    // C = v k' x fixes the phase block.
    let x_small = invert_pos(&kp_small)?.mul(&v_small.dagger()).mul(&c);
    let x_cap = unitary_sqrt(&x_small.dagger());

    let k = x_cap.mul(&k_small).mul(&x_cap.dagger());
    let k_prime = x_cap.mul(&kp_small).mul(&x_cap.dagger());
    let v = v_small.mul(&x_cap.dagger());
    let w = w_small.mul(&x_cap.dagger());

    // K has spectrum {cos(theta - phi), cos(theta + phi)}.
    let (kvals, _) = herm_eig(&k)?;
    let sum = kvals[0].clamp(-1.0, 1.0).acos();
    let diff = kvals[1].clamp(-1.0, 1.0).acos();
    let theta = (sum + diff) / 2.0;
    let phi = (sum - diff) / 2.0;

    Ok(CanonicalForm { v, w, k, k_prime, x: x_cap, theta, phi })
}

//! Hermitian eigendecomposition (cyclic complex Jacobi) and the unitary
//! exponential built on top of it.

use crate::{tol, CMatrix, Complex64, QmathError, Result, ZERO};

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// columns of a unitary matrix. Degenerate spectra are fine; the returned
/// basis is orthonormal but otherwise arbitrary within each eigenspace.
pub fn herm_eig(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !h.is_square() {
        return Err(QmathError::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows, h.cols
        )));
    }
    let defect = h.hermiticity_defect();
    if defect >= tol::HERMITICITY {
        return Err(QmathError::NotHermitian { defect, tol: tol::HERMITICITY });
    }

    let n = h.rows;
    let mut a = h.clone();
    // Symmetrize exactly so rounding in the input cannot bias the sweeps.
    for i in 0..n {
        for j in 0..n {
            if i < j {
                let avg = (a[(i, j)] + a[(j, i)].conj()) * Complex64::new(0.5, 0.0);
                a[(i, j)] = avg;
                a[(j, i)] = avg.conj();
            } else if i == j {
                a[(i, j)] = Complex64::new(a[(i, j)].re, 0.0);
            }
        }
    }
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let stop = tol::JACOBI_CONVERGENCE * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= stop {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(QmathError::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| evals[i].total_cmp(&evals[j]));

    let mut sorted_vals = Vec::with_capacity(n);
    let mut sorted_vecs = CMatrix::zeros(n, n);
    for (col, &idx) in order.iter().enumerate() {
        sorted_vals.push(evals[idx]);
        for row in 0..n {
            sorted_vecs[(row, col)] = v[(row, idx)];
        }
    }
    Ok((sorted_vals, sorted_vecs))
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows;
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc += 2.0 * a[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

/// One complex Jacobi rotation annihilating a[(p, q)].
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / Complex64::new(r, 0.0);
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column rotation J: col_p' = c*col_p - s*conj(phase)*col_q,
    //                    col_q' = s*phase*col_p + c*col_q.
    let cp = Complex64::new(c, 0.0);
    let sp = phase * Complex64::new(s, 0.0);
    let n = a.rows;
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * cp - aiq * sp.conj();
        a[(i, q)] = aip * sp + aiq * cp;
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * cp - viq * sp.conj();
        v[(i, q)] = vip * sp + viq * cp;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * cp - aqj * sp;
        a[(q, j)] = apj * sp.conj() + aqj * cp;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// exp(-i h t) for Hermitian h, via the eigendecomposition.
pub fn unitary_exp(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let (vals, vecs) = herm_eig(h)?;
    let phases: Vec<Complex64> = vals
        .iter()
        .map(|&e| Complex64::from_polar(1.0, -e * t))
        .collect();
    let mut out = CMatrix::zeros(h.rows, h.rows);
    // V diag(e^{-i E t}) V^dag without forming the diagonal matrix.
    for i in 0..h.rows {
        for j in 0..h.rows {
            let mut acc = ZERO;
            for k in 0..h.rows {
                acc += vecs[(i, k)] * phases[k] * vecs[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Hermitian generator H of a unitary: exp(-i H) = u, with the spectrum of
/// H on the principal branch (-pi, pi].
///
/// Computed by repeated principal square roots (each taken through the polar
/// form of 1 + u) followed by a log series; fails if an eigenvalue of u sits
/// at the branch cut -1.
pub fn unitary_log(u: &CMatrix) -> Result<CMatrix> {
    if !u.is_square() {
        return Err(QmathError::DimensionMismatch(format!(
            "unitary log needs a square matrix, got {}x{}",
            u.rows, u.cols
        )));
    }
    let n = u.rows;
    let defect = u.unitarity_defect();
    if defect >= 1e-10 {
        return Err(QmathError::DimensionMismatch(format!(
            "unitary log needs a unitary input (defect {defect:.3e})"
        )));
    }
    let mut root = u.clone();
    let mut halvings = 0u32;
    while root.max_abs_diff(&CMatrix::identity(n)) > 0.25 {
        if halvings > 60 {
            return Err(QmathError::NoConvergence { sweeps: 60, off: f64::NAN });
        }
        let s = CMatrix::identity(n).add(&root);
        let gram = s.dagger().mul(&s);
        let (vals, vecs) = herm_eig(&gram)?;
        if vals[0] < 1e-12 {
            return Err(QmathError::NotDensity(
                "eigenvalue at the log branch cut (-1)".into(),
            ));
        }
        let mut inv_sqrt = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for m in 0..n {
                    acc += vecs[(i, m)]
                        * Complex64::new(1.0 / vals[m].sqrt(), 0.0)
                        * vecs[(j, m)].conj();
                }
                inv_sqrt[(i, j)] = acc;
            }
        }
        root = s.mul(&inv_sqrt);
        halvings += 1;
    }
    // log(1 + x) series; |x| <= 0.25 entrywise keeps it fast and exact.
    let x = root.sub(&CMatrix::identity(n));
    let mut log = CMatrix::zeros(n, n);
    let mut term = CMatrix::identity(n);
    for k in 1..=64 {
        term = term.mul(&x);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        log = log.add(&term.scale(Complex64::new(sign / k as f64, 0.0)));
    }
    let h = log.scale(Complex64::new(0.0, 2.0f64.powi(halvings as i32)));
    // Symmetrize away series rounding.
    Ok(h.add(&h.dagger()).scale(Complex64::new(0.5, 0.0)))
}

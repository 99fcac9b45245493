//! The measurement map of the spin-assistant scheme: direct simulation of
//! the three averages, the closed-form coefficient system relating them to
//! the unknown Bloch vector, and its inversion.
//!
//! Vector order for this scheme is (assistant average, system average,
//! correlator).

use crate::params::{AssistantPurity, SpinSchemeParams};
use crate::{Result, SpinError, SINGULAR_DET};
use qmath::cmatrix::{sigma_z, CMatrix};
use qmath::{
    bloch, kron, tol, BlochState, Complex64, LinearSystem, MeasurementTriple, Reconstruction,
};

pub fn triple_as_vector(m: &MeasurementTriple) -> [f64; 3] {
    [m.assist_avg, m.sys_avg, m.correlator]
}

pub fn vector_as_triple(v: [f64; 3]) -> MeasurementTriple {
    MeasurementTriple { assist_avg: v[0], sys_avg: v[1], correlator: v[2] }
}

/// Evolve the factorized initial state through `u` and read off the three
/// commuting averages (s_z, sigma_z, s_z sigma_z).
pub fn simulate_expectations(
    u: &CMatrix,
    r: &BlochState,
    lam: AssistantPurity,
) -> Result<MeasurementTriple> {
    let defect = u.unitarity_defect();
    if defect >= 1e-10 {
        return Err(SpinError::NotUnitary(defect));
    }
    let half = Complex64::new(0.5, 0.0);
    let assistant = CMatrix::diag(&[
        Complex64::new(1.0 + lam.lambda(), 0.0),
        Complex64::new(1.0 - lam.lambda(), 0.0),
    ])
    .scale(half);
    let rho = bloch::density_from_bloch(r);
    let omega0 = kron(&assistant, &rho);
    let omega_f = u.mul(&omega0).mul(&u.dagger());

    let id2 = CMatrix::identity(2);
    let sz = sigma_z();
    let assist_avg = omega_f.mul(&kron(&sz, &id2)).trace().re;
    let sys_avg = omega_f.mul(&kron(&id2, &sz)).trace().re;
    let correlator = omega_f.mul(&kron(&sz, &sz)).trace().re;
    Ok(MeasurementTriple { sys_avg, assist_avg, correlator })
}

/// Measurement map assembled by probing the direct evolution with the zero
/// vector and the three basis Bloch vectors. The map is affine, so four
/// probes determine it exactly; this is the brute-force reference the closed
/// form is checked against.
pub fn linear_system_from_unitary(u: &CMatrix, lam: AssistantPurity) -> Result<LinearSystem> {
    let origin = triple_as_vector(&simulate_expectations(
        u,
        &BlochState::new([0.0; 3]).unwrap(),
        lam,
    )?);
    let mut coeffs = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut r = [0.0; 3];
        r[j] = 1.0;
        let probe = triple_as_vector(&simulate_expectations(u, &BlochState::new(r).unwrap(), lam)?);
        for i in 0..3 {
            coeffs[i][j] = probe[i] - origin[i];
        }
    }
    Ok(LinearSystem::new(coeffs, origin))
}

/// Row coefficients contributed by one carried axis v, before the half-sum /
/// half-difference split. `sgn` is +1 for the eta row family and -1 for the
/// zeta family (the latter absorbs the 2theta -> 2theta + pi shift).
fn carried_row(v: [f64; 3], sgn: f64, lam: f64, ang: &Angles) -> ([f64; 3], f64) {
    let Angles { s2t, c2t, s2f, c2f, s2p, c2p } = *ang;
    let gx = v[0] * (c2f + sgn * lam * c2t);
    let gy = v[1] * c2p * (1.0 + sgn * lam * c2t * c2f) - v[2] * s2p * (lam * c2f + sgn * c2t);
    let gz = v[1] * s2p * (lam + sgn * c2t * c2f) + v[2] * c2p * (c2f + sgn * lam * c2t);
    let constant = lam * v[1] * sgn * s2t * s2f;
    ([gx, gy, gz], constant)
}

struct Angles {
    s2t: f64,
    c2t: f64,
    s2f: f64,
    c2f: f64,
    s2p: f64,
    c2p: f64,
}

impl Angles {
    fn of(p: &SpinSchemeParams) -> Self {
        Self {
            s2t: (2.0 * p.theta).sin(),
            c2t: (2.0 * p.theta).cos(),
            s2f: (2.0 * p.phi).sin(),
            c2f: (2.0 * p.phi).cos(),
            s2p: (2.0 * p.psi).sin(),
            c2p: (2.0 * p.psi).cos(),
        }
    }
}

/// Closed-form coefficient system (C, F) with (s_z, sigma_z, s_z sigma_z) =
/// C r + F for every Bloch vector r.
///
/// The assistant row follows directly from the canonical-form algebra; the
/// system and correlator rows are the half-sum and half-difference of the
/// two carried-axis row families. F vanishes identically at lambda = 0 and
/// c11 = 0 always.
pub fn coefficient_system(p: &SpinSchemeParams, lam: AssistantPurity) -> Result<LinearSystem> {
    p.validate()?;
    let l = lam.lambda();
    let ang = Angles::of(p);
    let (eta_f, zeta_f) = p.frame_components();

    let row1 = [0.0, l * ang.s2t * ang.s2f * ang.c2p, ang.s2t * ang.s2f * ang.s2p];
    let f1 = l * ang.c2t * ang.c2f;

    let (ga, ka) = carried_row(eta_f, 1.0, l, &ang);
    let (gb, kb) = carried_row(zeta_f, -1.0, l, &ang);
    let row2 = [
        0.5 * (ga[0] + gb[0]),
        0.5 * (ga[1] + gb[1]),
        0.5 * (ga[2] + gb[2]),
    ];
    let f2 = 0.5 * (ka + kb);
    let row3 = [
        0.5 * (ga[0] - gb[0]),
        0.5 * (ga[1] - gb[1]),
        0.5 * (ga[2] - gb[2]),
    ];
    let f3 = 0.5 * (ka - kb);

    // Rows above act on Bloch components in the (xi, chi, xi x chi) frame;
    // compose with the frame rotation to act on lab components.
    let rot = p.frame_rotation();
    let mut coeffs = [[0.0; 3]; 3];
    for (i, row) in [row1, row2, row3].iter().enumerate() {
        for j in 0..3 {
            coeffs[i][j] = row[0] * rot[0][j] + row[1] * rot[1][j] + row[2] * rot[2][j];
        }
    }
    Ok(LinearSystem::new(coeffs, [f1, f2, f3]))
}

/// Invert the scheme: r = C^{-1} (m - F).
pub fn reconstruct(
    m: &MeasurementTriple,
    p: &SpinSchemeParams,
    lam: AssistantPurity,
) -> Result<Reconstruction> {
    let system = coefficient_system(p, lam)?;
    reconstruct_with_system(m, &system)
}

/// Inversion against a precomputed system (used for schemes defined by a raw
/// Hamiltonian rather than canonical parameters).
pub fn reconstruct_with_system(
    m: &MeasurementTriple,
    system: &LinearSystem,
) -> Result<Reconstruction> {
    if system.det.abs() <= SINGULAR_DET {
        return Err(SpinError::SingularScheme { det: system.det });
    }
    let r = system.solve(triple_as_vector(m));
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    Ok(Reconstruction { r, inconsistent_data: norm > 1.0 + tol::POLARIZATION })
}

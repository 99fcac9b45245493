//! Complex dense linear algebra for small Hilbert spaces.
//!
//! Everything here operates on [`CMatrix`], a row-major dense complex matrix
//! sized for two-level systems, pairs of two-level systems, and truncated
//! Fock spaces (a few hundred levels at most). The crate provides the
//! primitives the assistant schemes are built from: Kronecker products,
//! partial traces, Hermitian eigendecomposition, unitary exponentials, and
//! the Bloch-vector representation of qubit states.
//!
//! Tensor-product ordering is fixed project-wide as assistant ⊗ system: the
//! first (slow) index always belongs to the assistant, the second (fast)
//! index to the two-level system of interest.

pub mod bloch;
pub mod cmatrix;
pub mod eig;
pub mod fock;
pub mod linsys;
pub mod tol;

pub use bloch::BlochState;
pub use cmatrix::{kron, partial_traces, CMatrix};
pub use eig::{herm_eig, unitary_exp, unitary_log};
pub use fock::FockSpace;
pub use linsys::{LinearSystem, MeasurementTriple, Reconstruction};

use thiserror::Error;

pub type Complex64 = num_complex::Complex<f64>;

/// One complex unit, handy when assembling operators.
pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmathError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not Hermitian: max |M - M^dag| = {defect:.3e} exceeds {tol:.1e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("unphysical polarization: |r| = {norm} exceeds 1")]
    UnphysicalPolarization { norm: f64 },
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
}

pub type Result<T> = std::result::Result<T, QmathError>;

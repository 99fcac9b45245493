//! Centralized numerical tolerances.
//!
//! Every validation threshold used across the workspace is defined here so
//! there is a single tuning point for the truncation-sensitive cavity tests.

/// Maximum |M - M^dag| entry for a matrix accepted as Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Maximum |U^dag U - 1| entry for a matrix accepted as unitary.
pub const UNITARITY: f64 = 1e-12;

/// Allowed deviation of a density-matrix trace from one.
pub const TRACE: f64 = 1e-10;

/// Eigenvalues of a density matrix may undershoot zero by this much.
pub const EIGENVALUE_FLOOR: f64 = 1e-10;

/// Bloch vectors longer than 1 by more than this are rejected.
pub const POLARIZATION: f64 = 1e-9;

/// Probabilities may undershoot zero by this much before clipping; anything
/// more negative signals a propagator bug rather than rounding noise.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// Off-diagonal mass at which the Jacobi eigensolver declares convergence,
/// relative to the Frobenius norm of the input.
pub const JACOBI_CONVERGENCE: f64 = 1e-14;

//! Qubit tomography with a spin-1/2 assistant.
//!
//! The probed qubit is coupled to an auxiliary spin through an arbitrary 4x4
//! unitary, after which the z-polarizations of both spins and their
//! coincidence correlator are measured simultaneously. This crate provides
//! the canonical parametrization of such unitaries, the closed-form linear
//! system relating the measured triple to the unknown Bloch vector, the
//! determinant of that system (the scheme's figure of merit), its
//! maximization, and the explicit two-spin Hamiltonians that realize the
//! optima.
//!
//! Conventions: tensor order is assistant ⊗ system, the interaction time is
//! absorbed into the unitary (t = 1), and the measured triple is ordered
//! (assistant, system, correlator) when written as a vector.

mod determinant;
mod hamiltonian;
mod optimize;
mod params;
mod system;
mod unitary;

pub use determinant::determinant_closed_form;
pub use hamiltonian::{
    hamiltonian_determinant, hamiltonian_determinant_numeric, heisenberg_hamiltonian,
    pure_hamiltonian, HeisenbergParams,
};
pub use optimize::{optimize_determinant, OptimizeOutcome};
pub use params::{AssistantPurity, SpinSchemeParams};
pub use system::{
    coefficient_system, linear_system_from_unitary, reconstruct, reconstruct_with_system,
    simulate_expectations, triple_as_vector, vector_as_triple,
};
pub use unitary::{build_unitary, decompose_unitary, CanonicalForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinError {
    #[error("parameter bounds violated: {0}")]
    InvalidParams(String),
    #[error("degenerate polar block: smallest singular value {min_sv:.3e} <= {threshold:.1e}")]
    DegeneratePolarBlock { min_sv: f64, threshold: f64 },
    #[error("not unitary: defect {0:.3e}")]
    NotUnitary(f64),
    #[error("singular scheme: determinant {det:.3e}")]
    SingularScheme { det: f64 },
    #[error("optimization budget {budget} below minimum {minimum}")]
    BudgetTooSmall { budget: usize, minimum: usize },
    #[error(transparent)]
    Math(#[from] qmath::QmathError),
}

pub type Result<T> = std::result::Result<T, SpinError>;

/// Smallest |det| the reconstruction accepts before declaring the scheme
/// singular.
pub const SINGULAR_DET: f64 = 1e-9;

/// Polar-decomposition blocks with a singular value at or below this are
/// rejected as degenerate (the canonical form is no longer unique there).
pub const POLAR_BLOCK_MIN_SV: f64 = 1e-6;

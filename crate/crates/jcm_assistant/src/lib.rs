//! Qubit tomography with a single coherent cavity mode as the assistant.
//!
//! A two-level system interacts with one field mode under the
//! Jaynes-Cummings coupling; measuring the atomic population difference, the
//! photon number, and their coincidence correlator at a known interaction
//! time determines the initial Bloch vector by linear inversion. This crate
//! carries the truncated-Fock propagator, the closed-form expectation
//! series, the 3x3 measurement matrix with its determinant D(t), the
//! Gaussian time average of D, and a brute-force matrix-exponential oracle
//! everything is verified against.
//!
//! Conventions: tensor order is field ⊗ atom, frequencies are angular
//! (rad/s), times are seconds, and only the detuning enters any closed form.
//! The measured triple is ordered (atom, photon number, correlator) when
//! written as a vector.

mod config;
mod matrix;
mod oracle;
mod propagator;
mod series;

pub use config::{coherent_state, default_fock_dim, JcmConfig, JcmDerived};
pub use matrix::{
    averaged_determinant, determinant_series, measurement_matrix, reconstruct,
    triple_as_vector, vector_as_triple,
};
pub use oracle::{oracle_evolve, oracle_evolve_with_cavity_freq};
pub use propagator::{jc_propagator, unitarity_defect_interior};
pub use series::expectation_series;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JcmError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("increase fock_dim: {0}")]
    Truncation(String),
    #[error("singular scheme at this (detuning, t): determinant {det:.3e}")]
    SingularScheme { det: f64 },
    #[error(transparent)]
    Math(#[from] qmath::QmathError),
}

pub type Result<T> = std::result::Result<T, JcmError>;

/// Relative determinant threshold below which inversion refuses, scaled by
/// the product of row norms.
pub const SINGULAR_REL_DET: f64 = 1e-12;

/// Recovered Bloch vectors longer than this are flagged as inconsistent
/// data (expected under shot noise).
pub const INCONSISTENT_NORM: f64 = 1.05;

/// Poisson tail mass allowed beyond the truncation.
pub const TAIL_MASS: f64 = 1e-12;

/// Population allowed in the two guard levels after oracle evolution.
pub const LEAKAGE: f64 = 1e-8;

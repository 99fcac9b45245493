//! Truncated Fock space: ladder operators on the photon-number basis
//! {|0>, ..., |dim-1>}.

use crate::{CMatrix, Complex64};

#[derive(Debug, Clone)]
pub struct FockSpace {
    pub dim: usize,
    pub annihilator: CMatrix,
    pub creator: CMatrix,
    pub number_op: CMatrix,
}

impl FockSpace {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "Fock space needs at least the vacuum level");
        let mut a = CMatrix::zeros(dim, dim);
        for n in 1..dim {
            a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
        }
        let creator = a.dagger();
        let number_op = CMatrix::diag(
            &(0..dim)
                .map(|n| Complex64::new(n as f64, 0.0))
                .collect::<Vec<_>>(),
        );
        Self { dim, annihilator: a, creator, number_op }
    }
}

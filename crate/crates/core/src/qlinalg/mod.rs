//! Exact linear algebra over a [`Field`]: row reduction, kernels, images,
//! subspace sums and intersections, quotients, and cohomology of finite
//! cochain complexes.

mod matrix;
mod subspace;

pub use matrix::{rref, Matrix};
pub use subspace::{image, kernel_basis, quotient_map, sum_and_intersect, Quotient, Subspace, SubspaceError};

use crate::scalar::Field;

/// One degree of `ker d / im d`.
#[derive(Clone)]
pub struct CohomologyDegree<F> {
    pub cocycles: Subspace<F>,
    pub coboundaries: Subspace<F>,
    pub quotient: Quotient<F>,
}

impl<F: Field> CohomologyDegree<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Representative cocycles, one per row.
    pub fn reps(&self) -> &Matrix<F> {
        &self.quotient.reps
    }
}

/// Cohomology of `C^0 -> C^1 -> ...` where `d[k]: C^k -> C^{k+1}`.
///
/// Missing trailing maps are treated as zero.
pub fn complex_cohomology<F: Field>(dims: &[usize], d: &[Matrix<F>]) -> Vec<CohomologyDegree<F>> {
    (0..dims.len())
        .map(|k| {
            let cocycles = match d.get(k) {
                Some(m) => {
                    assert_eq!(m.cols(), dims[k], "differential domain mismatch in degree {k}");
                    kernel_basis(m)
                }
                None => Subspace::full(dims[k]),
            };
            let coboundaries = match k.checked_sub(1).and_then(|j| d.get(j)) {
                Some(m) => {
                    assert_eq!(m.rows(), dims[k], "differential codomain mismatch in degree {k}");
                    image(m)
                }
                None => Subspace::zero(dims[k]),
            };
            let quotient = quotient_map(&cocycles, &coboundaries).expect("d o d = 0 is required for cohomology");
            CohomologyDegree { cocycles, coboundaries, quotient }
        })
        .collect()
}

pub fn cohomology_dims<F: Field>(h: &[CohomologyDegree<F>]) -> Vec<usize> {
    h.iter().map(CohomologyDegree::dim).collect()
}

//! Certifies `E_2^{p,q} ≅ H^p(B) (x) H^q(g)` by building the map
//! `[alpha] (x) beta -> class(alpha (x) beta)` on explicit cocycles and
//! checking that it has full rank in every cell, and reads the `d_2`
//! transgression off in the resulting tensor bases.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::ExteriorBasis;
use crate::model::EquivariantModel;
use crate::qlinalg::{cohomology_dims, complex_cohomology, CohomologyDegree, Matrix, Subspace};
use crate::scalar::Field;
use crate::specseq::SpectralPage;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("F is not an isomorphism at ({0},{1}); transgression cannot be expressed in tensor bases")]
    NotIsomorphism(usize, usize),
    #[error("expected page 2, got page {0}")]
    WrongPage(usize),
}

/// `H(B, d_hor)` in each degree `0..=max deg B`, coordinates in the
/// generators of that degree.
pub fn basic_cohomology<F: Field>(model: &EquivariantModel<F>) -> Vec<CohomologyDegree<F>> {
    let basic = model.basic();
    let top = basic.max_degree();
    let dims: Vec<usize> = (0..=top).map(|p| basic.degree_basis(p).len()).collect();
    let d: Vec<Matrix<F>> = (0..top).map(|p| basic.d_hor_block(p)).collect();
    complex_cohomology(&dims, &d)
}

/// `alpha (x) beta` as a vector in `C^{p+q}` for `alpha` in `B^p` and
/// `beta` in `Lambda^q`, both in coordinates.
pub fn tensor_vector<F: Field>(
    model: &EquivariantModel<F>,
    exterior: &ExteriorBasis,
    p: usize,
    alpha: &[F],
    q: usize,
    beta: &[F],
) -> Vec<F> {
    let gens = model.basic().degree_basis(p);
    let mut out = vec![F::zero(); model.basis(p + q).len()];
    for (a, &g) in gens.iter().zip(alpha.iter()).filter(|(_, c)| !c.is_zero()).map(|(g, c)| (c, g)) {
        for (mono_chi, b) in exterior.degree(q).iter().zip(beta) {
            if b.is_zero() {
                continue;
            }
            let idx = model
                .index_of(crate::model::Monomial::new(g, *mono_chi))
                .expect("tensor monomial belongs to the model basis");
            out[idx] = out[idx].clone() + a.clone() * b.clone();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Cell {
    pub p: usize,
    pub q: usize,
    pub basic_dim: usize,
    pub lie_dim: usize,
    pub product: usize,
    pub e2_dim: usize,
    pub rank_f: usize,
    pub isomorphism: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Report {
    pub cells: Vec<E2Cell>,
    /// Invariant subcomplex consists of cocycles mapping isomorphically onto `H(g)`.
    pub invariants_represent_cohomology: bool,
    pub isomorphism: bool,
}

impl E2Report {
    pub fn verdict(&self) -> &'static str {
        if self.isomorphism {
            "isomorphism"
        } else {
            "not an isomorphism"
        }
    }

    pub fn first_failure(&self) -> Option<&E2Cell> {
        self.cells.iter().find(|c| !c.isomorphism)
    }
}

/// The report together with the matrices of `F` (columns indexed by pairs
/// `(alpha_a, beta_b)`, `a` major).
#[derive(Clone)]
pub struct E2Check<F> {
    pub report: E2Report,
    pub f_matrices: BTreeMap<(usize, usize), Matrix<F>>,
    pub basic_reps: Vec<Matrix<F>>,
    pub invariant_bases: Vec<Subspace<F>>,
}

pub fn e2_tensor_check<F: Field>(
    model: &EquivariantModel<F>,
    page2: &SpectralPage<F>,
) -> Result<E2Check<F>, VerifyError> {
    if page2.r != 2 {
        return Err(VerifyError::WrongPage(page2.r));
    }
    let lie = model.lie();
    let exterior = lie.exterior_basis();
    let basic_h = basic_cohomology(model);
    let basic_dims = cohomology_dims(&basic_h);
    let lie_h = lie.lie_cohomology();
    let lie_dims = cohomology_dims(&lie_h);
    let invariants = lie.invariant_subcomplex();

    let mut invariants_ok = true;
    for (q, inv) in invariants.iter().enumerate() {
        let delta = lie.delta_matrix(&exterior, q);
        let closed = inv.basis().row_vectors().all(|b| delta.mul_vec(b).iter().all(|c| c.is_zero()));
        let in_h = Matrix::from_rows(lie_h[q].dim(), inv.basis().row_vectors().map(|b| lie_h[q].quotient.project(b)));
        invariants_ok &= closed && in_h.rows() == lie_h[q].dim() && in_h.inverse().is_some();
    }

    let basic_reps: Vec<Matrix<F>> = basic_h.iter().map(|h| h.reps().clone()).collect();
    let mut cells = Vec::new();
    let mut f_matrices = BTreeMap::new();
    for (&(p, q), cell) in &page2.cells {
        let alphas = basic_reps.get(p);
        let betas = invariants.get(q).map(Subspace::basis);
        let mut columns = Vec::new();
        if let (Some(alphas), Some(betas)) = (alphas, betas) {
            for alpha in alphas.row_vectors() {
                for beta in betas.row_vectors() {
                    let x = tensor_vector(model, &exterior, p, alpha, q, beta);
                    debug_assert!(cell.cycles.contains(&x));
                    columns.push(cell.quotient.project(&x));
                }
            }
        }
        let f = Matrix::from_rows(cell.dim(), columns).transpose();
        let f = if f.cols() == 0 { Matrix::zeros(cell.dim(), 0) } else { f };
        let basic_dim = basic_dims.get(p).copied().unwrap_or(0);
        let lie_dim = lie_dims.get(q).copied().unwrap_or(0);
        let rank_f = f.rank();
        let e2_dim = cell.dim();
        let product = basic_dim * lie_dim;
        cells.push(E2Cell {
            p,
            q,
            basic_dim,
            lie_dim,
            product,
            e2_dim,
            rank_f,
            isomorphism: rank_f == e2_dim && e2_dim == product && f.cols() == product,
        });
        f_matrices.insert((p, q), f);
    }
    let isomorphism = invariants_ok && cells.iter().all(|c| c.isomorphism);
    Ok(E2Check {
        report: E2Report { cells, invariants_represent_cohomology: invariants_ok, isomorphism },
        f_matrices,
        basic_reps,
        invariant_bases: invariants,
    })
}

/// `d_2` rewritten in the tensor bases `[alpha_a] (x) beta_b` on both sides:
/// `F_target * T = d_2 * F_source`.
pub fn d2_transgression<F: Field>(
    check: &E2Check<F>,
    page2: &SpectralPage<F>,
) -> Result<BTreeMap<(usize, usize), Matrix<F>>, VerifyError> {
    if page2.r != 2 {
        return Err(VerifyError::WrongPage(page2.r));
    }
    let mut out = BTreeMap::new();
    for (&(p, q), d2) in &page2.dr {
        let Some(target) = page2.target(p, q) else {
            continue;
        };
        let f_src = &check.f_matrices[&(p, q)];
        let f_tgt_inv = check.f_matrices[&target].inverse().ok_or(VerifyError::NotIsomorphism(target.0, target.1))?;
        if f_src.rows() != f_src.cols() {
            return Err(VerifyError::NotIsomorphism(p, q));
        }
        out.insert((p, q), f_tgt_inv.mul(d2).mul(f_src));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieData;
    use crate::model::{BasicComplex, Generator};
    use crate::specseq::cartan_filtration;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn hopf(w: i64) -> EquivariantModel<Rational> {
        let basic = BasicComplex::from_entries(
            vec![Generator::new("1", 0), Generator::new("v", 2)],
            1,
            &[],
            &[(0, 0, 1, q(w))],
        )
        .unwrap();
        EquivariantModel::new("hopf", LieData::abelian(1).unwrap(), basic).unwrap()
    }

    #[test]
    fn hopf_basic_cohomology() {
        assert_eq!(cohomology_dims(&basic_cohomology(&hopf(1))), vec![1, 0, 1]);
    }

    #[test]
    fn hopf_is_isomorphism_with_unit_transgression() {
        let m = hopf(1);
        let page2 = cartan_filtration(&m).page(2);
        let check = e2_tensor_check(&m, &page2).unwrap();
        assert!(check.report.isomorphism, "{:?}", check.report);
        let t = d2_transgression(&check, &page2).unwrap();
        assert_eq!(t[&(0, 1)], Matrix::from_ints(&[[1]]));
    }

    #[test]
    fn weighted_transgression_scales() {
        let m = hopf(-4);
        let page2 = cartan_filtration(&m).page(2);
        let check = e2_tensor_check(&m, &page2).unwrap();
        let t = d2_transgression(&check, &page2).unwrap();
        assert_eq!(t[&(0, 1)], Matrix::from_ints(&[[-4]]));
    }

    #[test]
    fn wrong_page_rejected() {
        let m = hopf(1);
        let page1 = cartan_filtration(&m).page(1);
        assert_eq!(e2_tensor_check(&m, &page1).err(), Some(VerifyError::WrongPage(1)));
    }
}

use std::collections::HashMap;

use thiserror::Error;

use super::{ChiElement, MultiIndex, MAX_GENERATORS};
use crate::qlinalg::{complex_cohomology, kernel_basis, CohomologyDegree, Matrix, Subspace};
use crate::scalar::{is_zero, Field};
use crate::validation::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Lie algebra dimension must be between 1 and {MAX_GENERATORS}, got {0}")]
    BadDimension(usize),
    #[error("structure constant array has {got} entries, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// Structure constants `c[a][b][k] = <[u_a, u_b], u_k>` in an orthonormal
/// basis `u_1..u_n` (0-based here).
#[derive(Clone, Debug, PartialEq)]
pub struct LieData<F> {
    n: usize,
    c: Vec<F>,
}

impl<F: Field> LieData<F> {
    pub fn new(n: usize, c: Vec<F>) -> Result<Self, LieError> {
        if n == 0 || n > MAX_GENERATORS {
            return Err(LieError::BadDimension(n));
        }
        if c.len() != n * n * n {
            return Err(LieError::BadLength { got: c.len(), expected: n * n * n });
        }
        Ok(LieData { n, c })
    }

    pub fn abelian(n: usize) -> Result<Self, LieError> {
        Self::new(n, vec![F::zero(); n * n * n])
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> F) -> Result<Self, LieError> {
        let mut c = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    c.push(f(a, b, k));
                }
            }
        }
        Self::new(n, c)
    }

    /// Fully antisymmetric constants with `value` on every listed triple
    /// `(a, b, k)` and its signed permutations.
    pub fn fully_antisymmetric(n: usize, triples: &[((usize, usize, usize), F)]) -> Result<Self, LieError> {
        let mut c = vec![F::zero(); n * n * n];
        for ((a, b, k), v) in triples {
            for &i in &[*a, *b, *k] {
                if i >= n {
                    return Err(LieError::IndexOutOfRange { index: i, n });
                }
            }
            for (perm, odd) in permutations3(*a, *b, *k) {
                let idx = (perm.0 * n + perm.1) * n + perm.2;
                c[idx] = if odd { -v.clone() } else { v.clone() };
            }
        }
        Self::new(n, c)
    }

    /// `su(2)`: `[u_1, u_2] = u_3` and cyclic.
    pub fn su2() -> Self {
        Self::fully_antisymmetric(3, &[((0, 1, 2), F::one())]).expect("valid su(2) data")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn c(&self, a: usize, b: usize, k: usize) -> &F {
        &self.c[(a * self.n + b) * self.n + k]
    }

    pub fn constants(&self) -> &[F] {
        &self.c
    }

    fn check_index(&self, i: usize) -> Result<(), LieError> {
        if i >= self.n {
            return Err(LieError::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }

    /// `delta chi_k = sum_{a<b} c[a][b][k] chi_a ^ chi_b`.
    pub fn delta_generator(&self, k: usize) -> ChiElement<F> {
        let mut out = ChiElement::zero();
        for a in 0..self.n {
            for b in a + 1..self.n {
                out.add_term(MultiIndex::new(&[a, b]), self.c(a, b, k).clone());
            }
        }
        out
    }

    /// Chevalley-Eilenberg differential, extended from generators as a
    /// graded derivation of degree +1.
    pub fn ce_delta(&self, x: &ChiElement<F>) -> ChiElement<F> {
        let gens: Vec<ChiElement<F>> = (0..self.n).map(|k| self.delta_generator(k)).collect();
        apply_derivation(x, |k| &gens[k], true)
    }

    /// Coadjoint derivation `chi_i -> sum_k c[l][i][k] chi_k`, extended as a
    /// degree-0 derivation.
    pub fn coadjoint(&self, l: usize, x: &ChiElement<F>) -> Result<ChiElement<F>, LieError> {
        self.check_index(l)?;
        let gens: Vec<ChiElement<F>> = (0..self.n)
            .map(|i| ChiElement::from_terms((0..self.n).map(|k| (MultiIndex::single(k), self.c(l, i, k).clone()))))
            .collect();
        Ok(apply_derivation(x, |k| &gens[k], false))
    }

    /// Lie derivative along the fundamental field of `u_l`, via Cartan's
    /// formula `L = i_l delta + delta i_l`. On generators this is
    /// `chi_i -> sum_b c[l][b][i] chi_b`, the negative of [`Self::coadjoint`]
    /// for fully antisymmetric constants.
    pub fn lie_derivative(&self, l: usize, x: &ChiElement<F>) -> Result<ChiElement<F>, LieError> {
        self.check_index(l)?;
        Ok(&self.ce_delta(x).contract(l) + &self.ce_delta(&x.contract(l)))
    }

    /// Matrix of `delta: Lambda^q -> Lambda^{q+1}` in canonical bases.
    pub fn delta_matrix(&self, basis: &ExteriorBasis, q: usize) -> Matrix<F> {
        basis.operator_matrix(q, q + 1, |x| self.ce_delta(x))
    }

    pub fn coadjoint_matrix(&self, basis: &ExteriorBasis, l: usize, q: usize) -> Matrix<F> {
        basis.operator_matrix(q, q, |x| self.coadjoint(l, x).expect("index checked by caller"))
    }

    pub fn exterior_basis(&self) -> ExteriorBasis {
        ExteriorBasis::new(self.n)
    }

    /// Cohomology `ker delta / im delta` in every degree `0..=n`.
    pub fn lie_cohomology(&self) -> Vec<CohomologyDegree<F>> {
        let basis = self.exterior_basis();
        let dims: Vec<usize> = (0..=self.n).map(|q| basis.dim(q)).collect();
        let d: Vec<Matrix<F>> = (0..self.n).map(|q| self.delta_matrix(&basis, q)).collect();
        complex_cohomology(&dims, &d)
    }

    /// Invariants of the coadjoint action, `Lambda^q` intersected with the
    /// common kernel of all coadjoint derivations, per degree.
    pub fn invariant_subcomplex(&self) -> Vec<Subspace<F>> {
        let basis = self.exterior_basis();
        (0..=self.n)
            .map(|q| {
                let dim = basis.dim(q);
                let stacked = (0..self.n)
                    .map(|l| self.coadjoint_matrix(&basis, l, q))
                    .fold(Matrix::zeros(0, dim), |acc, m| acc.vstack(&m));
                kernel_basis(&stacked)
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_lie(self)
    }
}

/// Applies the derivation determined by its values on generators, with
/// Koszul signs when `odd` (degree +1) and without when even (degree 0).
fn apply_derivation<'a, F: Field>(
    x: &ChiElement<F>,
    on_generator: impl Fn(usize) -> &'a ChiElement<F>,
    odd: bool,
) -> ChiElement<F> {
    let mut out = ChiElement::zero();
    for (m, c) in x.terms() {
        let idx: Vec<usize> = m.indices().collect();
        for (j, &i) in idx.iter().enumerate() {
            let left = ChiElement::basis(MultiIndex::new(&idx[..j]));
            let right = ChiElement::basis(MultiIndex::new(&idx[j + 1..]));
            let term = left.wedge(on_generator(i)).wedge(&right);
            let coeff = if odd && j % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_scaled(&term, &coeff);
        }
    }
    out
}

pub(crate) fn permutations3(a: usize, b: usize, k: usize) -> [((usize, usize, usize), bool); 6] {
    [
        ((a, b, k), false),
        ((b, k, a), false),
        ((k, a, b), false),
        ((b, a, k), true),
        ((a, k, b), true),
        ((k, b, a), true),
    ]
}

/// Canonical basis of `Lambda^*(chi_1..chi_n)`, graded by length.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n: usize,
    by_degree: Vec<Vec<MultiIndex>>,
    position: HashMap<MultiIndex, usize>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        let by_degree: Vec<Vec<MultiIndex>> = (0..=n).map(|q| MultiIndex::of_len(n, q)).collect();
        let position = by_degree.iter().flat_map(|v| v.iter().enumerate().map(|(i, m)| (*m, i))).collect();
        ExteriorBasis { n, by_degree, position }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, q: usize) -> usize {
        self.by_degree.get(q).map_or(0, Vec::len)
    }

    pub fn degree(&self, q: usize) -> &[MultiIndex] {
        self.by_degree.get(q).map_or(&[], Vec::as_slice)
    }

    /// Position of `m` within its degree.
    pub fn index_of(&self, m: MultiIndex) -> usize {
        self.position[&m]
    }

    pub fn to_vector<F: Field>(&self, q: usize, x: &ChiElement<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim(q)];
        for (m, c) in x.terms() {
            assert_eq!(m.len(), q, "element is not homogeneous of degree {q}");
            v[self.index_of(m)] = c.clone();
        }
        v
    }

    pub fn from_vector<F: Field>(&self, q: usize, v: &[F]) -> ChiElement<F> {
        ChiElement::from_terms(self.degree(q).iter().zip(v).map(|(m, c)| (*m, c.clone())))
    }

    pub fn operator_matrix<F: Field>(
        &self,
        from: usize,
        to: usize,
        op: impl Fn(&ChiElement<F>) -> ChiElement<F>,
    ) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(to), self.dim(from));
        for (j, src) in self.degree(from).iter().enumerate() {
            for (t, c) in op(&ChiElement::basis(*src)).terms() {
                m[(self.index_of(t), j)] = c.clone();
            }
        }
        m
    }
}

pub const CHECK_BRACKET_ANTISYMMETRY: &str = "bracket antisymmetry";
pub const CHECK_FULL_ANTISYMMETRY: &str = "full antisymmetry";
pub const CHECK_JACOBI: &str = "Jacobi identity";
pub const CHECK_DELTA_SQUARED: &str = "delta^2 = 0";

/// Checks bracket antisymmetry, full antisymmetry of `c`, the Jacobi
/// identity, and `delta^2 = 0` on every basis element.
pub fn validate_lie<F: Field>(lie: &LieData<F>) -> ValidationReport {
    let n = lie.n;
    let mut report = ValidationReport::default();

    let bracket = (|| {
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    if *lie.c(a, b, k) != -lie.c(b, a, k).clone() {
                        return Some(format!(
                            "c[{}][{}][{}] = {} but c[{}][{}][{}] = {}",
                            a + 1,
                            b + 1,
                            k + 1,
                            lie.c(a, b, k),
                            b + 1,
                            a + 1,
                            k + 1,
                            lie.c(b, a, k)
                        ));
                    }
                }
            }
        }
        None
    })();
    report.push(CHECK_BRACKET_ANTISYMMETRY, bracket);

    let full = (|| {
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    if lie.c(b, k, a) != lie.c(a, b, k) {
                        return Some(format!(
                            "c[{}][{}][{}] = {} differs from c[{}][{}][{}] = {}; the inner product is not \
                             ad-invariant (structure constants must come from a compact-type algebra in an \
                             orthonormal basis, e.g. Heisenberg is rejected)",
                            b + 1,
                            k + 1,
                            a + 1,
                            lie.c(b, k, a),
                            a + 1,
                            b + 1,
                            k + 1,
                            lie.c(a, b, k)
                        ));
                    }
                }
            }
        }
        None
    })();
    report.push(CHECK_FULL_ANTISYMMETRY, full);

    let jacobi = (|| {
        for a in 0..n {
            for b in 0..n {
                for e in 0..n {
                    for k in 0..n {
                        let mut s = F::zero();
                        for m in 0..n {
                            s = s
                                + lie.c(a, b, m).clone() * lie.c(m, e, k).clone()
                                + lie.c(b, e, m).clone() * lie.c(m, a, k).clone()
                                + lie.c(e, a, m).clone() * lie.c(m, b, k).clone();
                        }
                        if !is_zero(&s) {
                            return Some(format!(
                                "component {} of [[u{},u{}],u{}] + cyclic is {s}",
                                k + 1,
                                a + 1,
                                b + 1,
                                e + 1
                            ));
                        }
                    }
                }
            }
        }
        None
    })();
    report.push(CHECK_JACOBI, jacobi);

    let delta_sq = MultiIndex::all(n).into_iter().find_map(|m| {
        let x = ChiElement::basis(m);
        let dd = lie.ce_delta(&lie.ce_delta(&x));
        (!dd.is_zero()).then(|| format!("delta^2({m}) = {dd}"))
    });
    report.push(CHECK_DELTA_SQUARED, delta_sq);
    report
}

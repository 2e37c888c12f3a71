use thiserror::Error;

use super::matrix::{rref, Matrix};
use crate::scalar::{is_zero, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
}

/// A linear subspace of `F^ambient_dim`, stored as the RREF of its row space.
///
/// The RREF basis is canonical, so derived `PartialEq` is subspace equality.
#[derive(Clone, PartialEq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Row space of `rows`.
    pub fn span(rows: &Matrix<F>) -> Self {
        let (r, pivots) = rref(rows);
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace { ambient_dim: rows.cols(), basis, pivots }
    }

    pub fn span_vectors(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        Self::span(&Matrix::from_rows(ambient_dim, vectors))
    }

    /// Span of standard basis vectors.
    pub fn coordinate(ambient_dim: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let rows = coords.into_iter().map(|c| {
            let mut v = vec![F::zero(); ambient_dim];
            v[c] = F::one();
            v
        });
        Self::span(&Matrix::from_rows(ambient_dim, rows))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if is_zero(c) {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(self.basis.row(i)) {
                if !is_zero(b) {
                    *r = r.clone() - c.clone() * b.clone();
                }
            }
        }
        residual.iter().all(is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.row_vectors().all(|r| self.contains(r))
    }

    /// Matrix whose rows span the annihilator `{f : f(v) = 0 for all v in self}`.
    pub fn annihilator(&self) -> Matrix<F> {
        kernel_basis(&self.basis).basis
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, SubspaceError> {
        self.check_ambient(other)?;
        Ok(Self::span(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>, SubspaceError> {
        self.check_ambient(other)?;
        let constraints = self.annihilator().vstack(&other.annihilator());
        Ok(kernel_basis(&constraints))
    }

    /// Image of the subspace under the linear map `m` (column convention).
    pub fn image_under(&self, m: &Matrix<F>) -> Subspace<F> {
        assert_eq!(m.cols(), self.ambient_dim, "map domain mismatch");
        Self::span(&self.basis.mul(&m.transpose()))
    }

    /// `{x in self : m x in target}`.
    pub fn preimage_within(&self, m: &Matrix<F>, target: &Subspace<F>) -> Subspace<F> {
        assert_eq!(m.cols(), self.ambient_dim, "map domain mismatch");
        assert_eq!(m.rows(), target.ambient_dim, "map codomain mismatch");
        // coefficient vectors a with ann(target) * m * basis^T * a = 0
        let constraint = target.annihilator().mul(m).mul(&self.basis.transpose());
        let coeffs = kernel_basis(&constraint);
        Self::span(&coeffs.basis.mul(&self.basis))
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<(), SubspaceError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(SubspaceError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }
}

impl<F: std::fmt::Display> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.basis.rows(), self.ambient_dim, self.basis)
    }
}

impl<F: std::fmt::Display> std::fmt::Debug for Quotient<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quotient").field("reps", &self.reps).field("projection", &self.projection).finish()
    }
}

/// `{v : m v = 0}`.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let rows = (0..n).filter(|&j| !is_pivot[j]).map(|free| {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, free)].clone();
        }
        v
    });
    Subspace::span(&Matrix::from_rows(n, rows))
}

/// Column space of `m`.
pub fn image<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(&m.transpose())
}

pub fn sum_and_intersect<F: Field>(
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<(Subspace<F>, Subspace<F>), SubspaceError> {
    Ok((a.sum(b)?, a.intersect(b)?))
}

/// A quotient `v / w` with chosen coset representatives.
#[derive(Clone, PartialEq)]
pub struct Quotient<F> {
    /// Representatives completing a basis of `w` to one of `v`, one per row.
    pub reps: Matrix<F>,
    /// `dim(v/w) x ambient` matrix sending `x in v` to its coordinates in `v/w`.
    pub projection: Matrix<F>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn project(&self, x: &[F]) -> Vec<F> {
        self.projection.mul_vec(x)
    }
}

/// Representatives are taken greedily from the RREF basis of `v`, so the
/// choice is deterministic.
pub fn quotient_map<F: Field>(v: &Subspace<F>, w: &Subspace<F>) -> Result<Quotient<F>, SubspaceError> {
    v.check_ambient(w)?;
    if !v.contains_subspace(w) {
        return Err(SubspaceError::NotContained);
    }
    let n = v.ambient_dim;
    let mut echelon = Echelon::new(n);
    for r in w.basis.row_vectors() {
        echelon.insert(r.to_vec());
    }
    let mut reps = Vec::new();
    for r in v.basis.row_vectors() {
        if echelon.insert(r.to_vec()) {
            reps.push(r.to_vec());
        }
    }
    let k = reps.len();
    let mut frame: Vec<Vec<F>> = w.basis.row_vectors().map(|r| r.to_vec()).collect();
    frame.extend(reps.iter().cloned());
    for j in 0..n {
        let mut e = vec![F::zero(); n];
        e[j] = F::one();
        if echelon.insert(e.clone()) {
            frame.push(e);
        }
    }
    debug_assert_eq!(frame.len(), n);
    // x = frame^T c, so c = (frame^T)^{-1} x
    let frame_t = Matrix::from_rows(n, frame).transpose();
    let inv = frame_t.inverse().expect("completed frame is a basis");
    let offset = w.dim();
    let projection = inv.select_rows(&(offset..offset + k).collect::<Vec<_>>());
    Ok(Quotient { reps: Matrix::from_rows(n, reps), projection })
}

/// Incremental row echelon set used for independence tests.
struct Echelon<F> {
    rows: Vec<(usize, Vec<F>)>,
    n: usize,
}

impl<F: Field> Echelon<F> {
    fn new(n: usize) -> Self {
        Echelon { rows: Vec::new(), n }
    }

    /// Inserts `v` if independent of the current rows; returns whether it was.
    fn insert(&mut self, mut v: Vec<F>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        for (p, row) in &self.rows {
            if is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !is_zero(y) {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        let Some(p) = v.iter().position(|x| !is_zero(x)) else {
            return false;
        };
        let inv = F::one() / v[p].clone();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for (_, row) in self.rows.iter_mut() {
            if is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !is_zero(y) {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

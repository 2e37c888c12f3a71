//! Spectral sequence of a finite-dimensional filtered cochain complex.
//!
//! With `Z_r^{p,q} = {x in F^p C^{p+q} : dx in F^{p+r} C^{p+q+1}}` the pages are
//! `E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})`
//! and `d_r` is induced by `d` on representatives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Component, EquivariantModel};
use crate::qlinalg::{cohomology_dims, quotient_map, Matrix, Quotient, Subspace};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilteredError {
    #[error("differential in degree {0} has the wrong shape")]
    Shape(usize),
    #[error("d^2 != 0 at degree {0}")]
    NotComplex(usize),
    #[error("filtration of degree {degree} must list F^0..F^{degree}, got {got} subspaces")]
    FiltrationLength { degree: usize, got: usize },
    #[error("F^0 C^{0} must be all of C^{0}")]
    NotExhaustive(usize),
    #[error("F^{p} C^{m} does not contain F^{next} C^{m}", next = p + 1)]
    NotDecreasing { p: usize, m: usize },
    #[error("d does not map F^{p} C^{m} into F^{p} C^{m_next}", m_next = m + 1)]
    NotCompatible { p: usize, m: usize },
}

/// Cochain complex `C^0 .. C^top` with a decreasing filtration
/// `C^m = F^0 C^m ⊇ ... ⊇ F^m C^m`, and `F^p C^m = 0` for `p > m`.
#[derive(Clone)]
pub struct FilteredComplex<F> {
    dims: Vec<usize>,
    d: Vec<Matrix<F>>,
    filtration: Vec<Vec<Subspace<F>>>,
}

impl<F: Field> FilteredComplex<F> {
    /// `d[m]: C^m -> C^{m+1}`; a missing final map is taken to be zero.
    pub fn new(
        dims: Vec<usize>,
        mut d: Vec<Matrix<F>>,
        filtration: Vec<Vec<Subspace<F>>>,
    ) -> Result<Self, FilteredError> {
        let top = dims.len().saturating_sub(1);
        if d.len() + 1 == dims.len() {
            d.push(Matrix::zeros(0, dims[top]));
        }
        for (m, dm) in d.iter().enumerate() {
            let rows = dims.get(m + 1).copied().unwrap_or(0);
            if m >= dims.len() || dm.cols() != dims[m] || dm.rows() != rows {
                return Err(FilteredError::Shape(m));
            }
        }
        if d.len() != dims.len() {
            return Err(FilteredError::Shape(d.len()));
        }
        for m in 1..d.len() {
            if !d[m].mul(&d[m - 1]).is_zero() {
                return Err(FilteredError::NotComplex(m - 1));
            }
        }
        for (m, layers) in filtration.iter().enumerate() {
            if layers.len() != m + 1 {
                return Err(FilteredError::FiltrationLength { degree: m, got: layers.len() });
            }
            if layers[0] != Subspace::full(dims[m]) {
                return Err(FilteredError::NotExhaustive(m));
            }
            for p in 0..m {
                if !layers[p].contains_subspace(&layers[p + 1]) {
                    return Err(FilteredError::NotDecreasing { p, m });
                }
            }
        }
        if filtration.len() != dims.len() {
            return Err(FilteredError::FiltrationLength { degree: filtration.len(), got: 0 });
        }
        let fc = FilteredComplex { dims, d, filtration };
        for m in 0..fc.dims.len() {
            for p in 0..=m {
                let image = fc.filtration[m][p].image_under(&fc.d[m]);
                if !fc.f(p as isize, m as isize + 1).contains_subspace(&image) {
                    return Err(FilteredError::NotCompatible { p, m });
                }
            }
        }
        Ok(fc)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, m: usize) -> &Matrix<F> {
        &self.d[m]
    }

    fn dim(&self, m: isize) -> usize {
        if m < 0 {
            0
        } else {
            self.dims.get(m as usize).copied().unwrap_or(0)
        }
    }

    /// `F^p C^m`, extended by `C^m` for `p <= 0` and `0` for `p > m`.
    pub fn f(&self, p: isize, m: isize) -> Subspace<F> {
        let dim = self.dim(m);
        if m < 0 || m as usize >= self.dims.len() || p > m {
            Subspace::zero(dim)
        } else if p <= 0 {
            Subspace::full(dim)
        } else {
            self.filtration[m as usize][p as usize].clone()
        }
    }

    /// `d: C^m -> C^{m+1}` for any integer `m`, zero outside the range.
    fn d_map(&self, m: isize) -> Matrix<F> {
        if m >= 0 && (m as usize) < self.d.len() {
            self.d[m as usize].clone()
        } else {
            Matrix::zeros(self.dim(m + 1), self.dim(m))
        }
    }

    /// `Z_r^{p,q}`.
    pub fn z(&self, r: isize, p: isize, q: isize) -> Subspace<F> {
        let m = p + q;
        let fp = self.f(p, m);
        if r <= 0 {
            return fp;
        }
        fp.preimage_within(&self.d_map(m), &self.f(p + r, m + 1))
    }

    /// `Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}`.
    pub fn divisor(&self, r: isize, p: isize, q: isize) -> Subspace<F> {
        let lower = self.z(r - 1, p + 1, q - 1);
        let boundaries = self.z(r - 1, p - r + 1, q + r - 2).image_under(&self.d_map(p + q - 1));
        lower.sum(&boundaries).expect("both live in C^{p+q}")
    }

    pub fn cell(&self, r: usize, p: usize, q: usize) -> PageCell<F> {
        let (r, p, q) = (r as isize, p as isize, q as isize);
        let cycles = self.z(r, p, q);
        let divisor = self.divisor(r, p, q);
        let quotient = quotient_map(&cycles, &divisor).expect("divisor is contained in Z_r");
        PageCell { cycles, divisor, quotient }
    }

    pub fn page(&self, r: usize) -> SpectralPage<F> {
        let mut cells = BTreeMap::new();
        for m in 0..self.dims.len() {
            for p in 0..=m {
                cells.insert((p, m - p), self.cell(r, p, m - p));
            }
        }
        let mut dr = BTreeMap::new();
        for (&(p, q), cell) in &cells {
            let target = (q + 1).checked_sub(r).map(|tq| (p + r, tq)).and_then(|t| cells.get(&t));
            let matrix = match target {
                Some(t) => {
                    let images = self.d[p + q].mul(&cell.quotient.reps.transpose());
                    debug_assert!((0..images.cols()).all(|j| t.cycles.contains(&images.column(j))));
                    t.quotient.projection.mul(&images)
                }
                None => Matrix::zeros(0, cell.dim()),
            };
            dr.insert((p, q), matrix);
        }
        SpectralPage { r, cells, dr }
    }
}

/// One `E_r^{p,q}`: the cycle space, the divisor, and the chosen quotient.
#[derive(Clone)]
pub struct PageCell<F> {
    pub cycles: Subspace<F>,
    pub divisor: Subspace<F>,
    pub quotient: Quotient<F>,
}

impl<F: Field> PageCell<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

#[derive(Clone)]
pub struct SpectralPage<F> {
    pub r: usize,
    pub cells: BTreeMap<(usize, usize), PageCell<F>>,
    /// `d_r: E_r^{p,q} -> E_r^{p+r,q-r+1}` keyed by source.
    pub dr: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> SpectralPage<F> {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.cells.get(&(p, q)).map_or(0, PageCell::dim)
    }

    pub fn dims(&self) -> BTreeMap<(usize, usize), usize> {
        self.cells.iter().map(|(k, c)| (*k, c.dim())).collect()
    }

    pub fn nonzero_dims(&self) -> BTreeMap<(usize, usize), usize> {
        self.dims().into_iter().filter(|(_, d)| *d > 0).collect()
    }

    pub fn dr_ranks(&self) -> BTreeMap<(usize, usize), usize> {
        self.dr.iter().map(|(k, m)| (*k, m.rank())).collect()
    }

    pub fn dr_is_zero(&self) -> bool {
        self.dr.values().all(Matrix::is_zero)
    }

    pub fn target(&self, p: usize, q: usize) -> Option<(usize, usize)> {
        (q + 1).checked_sub(self.r).map(|tq| (p + self.r, tq)).filter(|t| self.cells.contains_key(t))
    }

    /// `d_r o d_r = 0` wherever composable.
    pub fn dr_squares_to_zero(&self) -> bool {
        self.dr.iter().all(|(src, m)| match self.target(src.0, src.1) {
            Some(t) => self.dr[&t].rows() == 0 || self.dr[&t].mul(m).is_zero(),
            None => true,
        })
    }

    /// Dimensions of the cohomology of `(E_r, d_r)`.
    pub fn homology_dims(&self) -> BTreeMap<(usize, usize), usize> {
        let mut incoming: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (src, m) in &self.dr {
            if let Some(t) = self.target(src.0, src.1) {
                *incoming.entry(t).or_default() += m.rank();
            }
        }
        self.cells
            .iter()
            .map(|(k, c)| {
                let out = self.dr[k].rank();
                (*k, c.dim() - out - incoming.get(k).copied().unwrap_or(0))
            })
            .collect()
    }
}

/// Pages `E_0 .. E_{r_stab}`, where `r_stab` is the first `r >= 2` with
/// every `d_r` zero.
#[derive(Clone)]
pub struct SpectralSequence<F> {
    pub pages: Vec<SpectralPage<F>>,
}

/// Smallest page index at which stabilization is searched for.
pub const FIRST_STABLE_CANDIDATE: usize = 2;

impl<F: Field> SpectralSequence<F> {
    pub fn compute(fc: &FilteredComplex<F>) -> Self {
        let mut pages = Vec::new();
        for r in 0.. {
            let page = fc.page(r);
            let done = r >= FIRST_STABLE_CANDIDATE && page.dr_is_zero();
            pages.push(page);
            if done {
                break;
            }
            assert!(r <= fc.top_degree() + 2, "d_r must vanish once r exceeds the filtration length");
        }
        SpectralSequence { pages }
    }

    pub fn stabilized_at(&self) -> usize {
        self.pages.len() - 1
    }

    pub fn page(&self, r: usize) -> &SpectralPage<F> {
        &self.pages[r.min(self.stabilized_at())]
    }

    pub fn e_infinity(&self) -> &SpectralPage<F> {
        self.pages.last().expect("at least one page")
    }

    /// `sum_{p+q=k} dim E_inf^{p,q}`.
    pub fn abutment_dims(&self) -> Vec<usize> {
        let dims = self.e_infinity().dims();
        let top = dims.keys().map(|(p, q)| p + q).max().unwrap_or(0);
        (0..=top).map(|k| dims.iter().filter(|((p, q), _)| p + q == k).map(|(_, d)| d).sum()).collect()
    }
}

/// `E_{r0}` and `r0`.
pub fn limit_page<F: Field>(fc: &FilteredComplex<F>) -> (SpectralPage<F>, usize) {
    let ss = SpectralSequence::compute(fc);
    let r = ss.stabilized_at();
    (ss.pages.into_iter().last().expect("at least one page"), r)
}

/// Filtration by horizontal degree: `F^p C^m` is spanned by the monomials
/// `g (x) chi_I` with `deg g >= p`.
pub fn cartan_filtration<F: Field>(model: &EquivariantModel<F>) -> FilteredComplex<F> {
    let dims = model.dims();
    let top = model.top_degree();
    let d: Vec<Matrix<F>> = (0..top).map(|m| model.matrix(Component::Total, m)).collect();
    let filtration = (0..=top)
        .map(|m| {
            let basis = model.basis(m);
            (0..=m)
                .map(|p| {
                    let coords = basis.iter().enumerate().filter(|(_, mono)| model.bidegree(**mono).0 >= p);
                    Subspace::coordinate(basis.len(), coords.map(|(i, _)| i))
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(dims, d, filtration).expect("a validated model yields a filtered complex")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbutmentRow {
    pub degree: usize,
    pub e_infinity: usize,
    pub total_cohomology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbutmentReport {
    pub rows: Vec<AbutmentRow>,
    pub passed: bool,
}

/// Compares `E_inf` against the directly computed total cohomology.
pub fn abutment_check<F: Field>(model: &EquivariantModel<F>, ss: &SpectralSequence<F>) -> AbutmentReport {
    let total = cohomology_dims(&model.total_cohomology());
    let einf = ss.abutment_dims();
    let len = total.len().max(einf.len());
    let rows: Vec<AbutmentRow> = (0..len)
        .map(|k| AbutmentRow {
            degree: k,
            e_infinity: einf.get(k).copied().unwrap_or(0),
            total_cohomology: total.get(k).copied().unwrap_or(0),
        })
        .collect();
    let passed = rows.iter().all(|r| r.e_infinity == r.total_cohomology);
    AbutmentReport { rows, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieData;
    use crate::model::{BasicComplex, Generator};
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn hopf() -> EquivariantModel<Rational> {
        let basic = BasicComplex::from_entries(
            vec![Generator::new("1", 0), Generator::new("v", 2)],
            1,
            &[],
            &[(0, 0, 1, q(1))],
        )
        .unwrap();
        EquivariantModel::new("hopf", LieData::abelian(1).unwrap(), basic).unwrap()
    }

    #[test]
    fn hopf_filtration() {
        let fc = cartan_filtration(&hopf());
        assert_eq!(fc.f(0, 1).dim(), 1);
        assert_eq!(fc.f(1, 1).dim(), 0);
        for p in 0..=2 {
            assert_eq!(fc.f(p, 2).dim(), 1);
        }
        assert_eq!(fc.f(3, 2).dim(), 0);
        assert_eq!(fc.f(0, 0).dim(), fc.dims()[0]);
        assert_eq!(fc.f(1, 0).dim(), 0);
    }

    #[test]
    fn hopf_pages() {
        let fc = cartan_filtration(&hopf());
        let e2 = fc.page(2);
        let expected: BTreeMap<_, _> = [((0, 0), 1), ((0, 1), 1), ((2, 0), 1), ((2, 1), 1)].into_iter().collect();
        assert_eq!(e2.nonzero_dims(), expected);
        assert_eq!(e2.dr_ranks()[&(0, 1)], 1);
        let (limit, r) = limit_page(&fc);
        assert_eq!(r, 3);
        let expected: BTreeMap<_, _> = [((0, 0), 1), ((2, 1), 1)].into_iter().collect();
        assert_eq!(limit.nonzero_dims(), expected);
    }

    #[test]
    fn rejects_incompatible_filtration() {
        // C^0 = Q -> C^1 = Q identity, with F^1 C^1 = C^1 but F^1 C^0 = 0 is fine;
        // a filtration that is not decreasing is not.
        let dims = vec![1, 2];
        let d = vec![Matrix::from_ints(&[[1], [0]])];
        let filt = vec![vec![Subspace::<Rational>::full(1)], vec![Subspace::full(2), Subspace::coordinate(2, [1])]];
        assert_eq!(FilteredComplex::new(dims.clone(), d.clone(), filt).err(), None);
        let bad = vec![vec![Subspace::full(1)], vec![Subspace::coordinate(2, [1]), Subspace::full(2)]];
        assert!(matches!(FilteredComplex::new(dims, d, bad), Err(FilteredError::NotExhaustive(1))));
    }
}

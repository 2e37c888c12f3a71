//! The invariant-forms model `B^p (x) Lambda^q(chi)` of a locally free
//! action: basic complex `B` with its horizontal differential and Euler
//! operators, the three bidegree components of the differential, and the
//! consistency validator.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::liealg::{validate_lie, ChiElement, LieData, LieError, MultiIndex};
use crate::qlinalg::{complex_cohomology, CohomologyDegree, Matrix};
use crate::scalar::{is_zero, sign, Field};
use crate::validation::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("expected {expected} Euler operators (one per Lie generator), got {got}")]
    EulerCount { expected: usize, got: usize },
    #[error("{what} must be a {n}x{n} matrix over the generators of B")]
    Shape { what: String, n: usize },
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("filtration degree of the zero element is undefined")]
    ZeroElement,
}

/// `(p, q)`: horizontal degree and characteristic (chi) length.
pub type Bidegree = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// Finite model of the basic forms: graded generators, the horizontal
/// differential, and wedge-multiplication by each Euler form.
///
/// Maps are stored as square matrices over all generators, entry
/// `(dst, src)`; degree compatibility is checked by [`validate_model`].
#[derive(Clone, PartialEq)]
pub struct BasicComplex<F> {
    generators: Vec<Generator>,
    d_hor: Matrix<F>,
    euler: Vec<Matrix<F>>,
}

impl<F: Field> BasicComplex<F> {
    pub fn new(generators: Vec<Generator>, d_hor: Matrix<F>, euler: Vec<Matrix<F>>) -> Result<Self, ModelError> {
        let n = generators.len();
        if d_hor.rows() != n || d_hor.cols() != n {
            return Err(ModelError::Shape { what: "d_hor".into(), n });
        }
        if let Some(i) = euler.iter().position(|e| e.rows() != n || e.cols() != n) {
            return Err(ModelError::Shape { what: format!("Euler operator {}", i + 1), n });
        }
        Ok(BasicComplex { generators, d_hor, euler })
    }

    /// Sparse constructor: `d_hor` entries `(src, dst, value)` and Euler
    /// entries `(i, src, dst, value)`, all 0-based.
    pub fn from_entries(
        generators: Vec<Generator>,
        n_euler: usize,
        d_hor: &[(usize, usize, F)],
        euler: &[(usize, usize, usize, F)],
    ) -> Result<Self, ModelError> {
        let n = generators.len();
        let mut d: Matrix<F> = Matrix::zeros(n, n);
        for (src, dst, v) in d_hor {
            if *src >= n || *dst >= n {
                return Err(ModelError::GeneratorOutOfRange(*src.max(dst)));
            }
            d[(*dst, *src)] = d[(*dst, *src)].clone() + v.clone();
        }
        let mut e: Vec<Matrix<F>> = vec![Matrix::zeros(n, n); n_euler];
        for (i, src, dst, v) in euler {
            if *i >= n_euler {
                return Err(ModelError::EulerCount { expected: n_euler, got: i + 1 });
            }
            if *src >= n || *dst >= n {
                return Err(ModelError::GeneratorOutOfRange(*src.max(dst)));
            }
            e[*i][(*dst, *src)] = e[*i][(*dst, *src)].clone() + v.clone();
        }
        Self::new(generators, d, e)
    }

    /// `B = Q` concentrated in degree 0 with all maps zero.
    pub fn point(n_euler: usize) -> Self {
        Self::from_entries(vec![Generator::new("1", 0)], n_euler, &[], &[]).expect("valid point complex")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, g: usize) -> usize {
        self.generators[g].degree
    }

    pub fn max_degree(&self) -> usize {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn d_hor(&self) -> &Matrix<F> {
        &self.d_hor
    }

    pub fn euler(&self) -> &[Matrix<F>] {
        &self.euler
    }

    /// Generator indices of degree `p`, in order.
    pub fn degree_basis(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.degree(g) == p).collect()
    }

    /// `d_hor` restricted to `B^p -> B^{p+1}`.
    pub fn d_hor_block(&self, p: usize) -> Matrix<F> {
        self.block(&self.d_hor, p, p + 1)
    }

    pub fn euler_block(&self, i: usize, p: usize) -> Matrix<F> {
        self.block(&self.euler[i], p, p + 2)
    }

    fn block(&self, m: &Matrix<F>, from: usize, to: usize) -> Matrix<F> {
        let src = self.degree_basis(from);
        let dst = self.degree_basis(to);
        Matrix::from_fn(dst.len(), src.len(), |i, j| m[(dst[i], src[j])].clone())
    }

    /// Image of generator `g` under `m` as `(generator, coefficient)` pairs.
    fn apply(m: &Matrix<F>, g: usize) -> impl Iterator<Item = (usize, &F)> {
        (0..m.rows()).map(move |h| (h, &m[(h, g)])).filter(|(_, c)| !is_zero(*c))
    }
}

impl<F: Field> fmt::Debug for BasicComplex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasicComplex")
            .field("generators", &self.generators)
            .field("d_hor", &self.d_hor)
            .field("euler", &self.euler)
            .finish()
    }
}

/// Basis monomial `g (x) chi_I` of the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub generator: usize,
    pub chi: MultiIndex,
}

impl Monomial {
    pub fn new(generator: usize, chi: MultiIndex) -> Self {
        Monomial { generator, chi }
    }
}

/// A finite linear combination of model monomials.
#[derive(Clone, PartialEq)]
pub struct ModelElement<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for ModelElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> ModelElement<F> {
    pub fn zero() -> Self {
        ModelElement { terms: BTreeMap::new() }
    }

    pub fn monomial(generator: usize, chi: MultiIndex, coeff: F) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial::new(generator, chi), coeff);
        e
    }

    pub fn basis(m: Monomial) -> Self {
        Self::monomial(m.generator, m.chi, F::one())
    }

    /// `g (x) x` for a characteristic element `x`.
    pub fn tensor(generator: usize, x: &ChiElement<F>) -> Self {
        let mut e = Self::zero();
        for (m, c) in x.terms() {
            e.add_term(Monomial::new(generator, m), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, coeff: F) {
        if is_zero(&coeff) {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(F::zero);
        *slot = slot.clone() + coeff;
        if is_zero(slot) {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &ModelElement<F>, c: &F) {
        for (m, v) in &other.terms {
            self.add_term(*m, v.clone() * c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &F)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> F {
        self.terms.get(&m).cloned().unwrap_or_else(F::zero)
    }

    fn filter(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        ModelElement { terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect() }
    }
}

impl<F: Field> std::ops::Add for &ModelElement<F> {
    type Output = ModelElement<F>;

    fn add(self, rhs: &ModelElement<F>) -> ModelElement<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &F::one());
        out
    }
}

impl<F: Field> std::ops::Sub for &ModelElement<F> {
    type Output = ModelElement<F>;

    fn sub(self, rhs: &ModelElement<F>) -> ModelElement<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-F::one());
        out
    }
}

impl<F: Field> fmt::Debug for ModelElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("({c})g{}⊗{}", m.generator + 1, m.chi)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Maximal chi-length over the support; 0 exactly for horizontal elements.
pub fn filtration_degree<F: Field>(x: &ModelElement<F>) -> Result<usize, ModelError> {
    x.terms().map(|(m, _)| m.chi.len()).max().ok_or(ModelError::ZeroElement)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    /// Bidegree (0, 1): `-(1 (x) delta)` with the Koszul sign.
    D01,
    /// Bidegree (1, 0): `d_hor (x) 1`.
    D10,
    /// Bidegree (2, -1): contraction against the Euler forms.
    D21,
    Total,
}

/// A Lie algebra together with a basic complex modelling the invariant forms.
#[derive(Clone)]
pub struct EquivariantModel<F> {
    name: String,
    lie: LieData<F>,
    basic: BasicComplex<F>,
    by_degree: Vec<Vec<Monomial>>,
    position: HashMap<Monomial, usize>,
}

impl<F: Field> EquivariantModel<F> {
    pub fn new(name: impl Into<String>, lie: LieData<F>, basic: BasicComplex<F>) -> Result<Self, ModelError> {
        if basic.euler.len() != lie.dim() {
            return Err(ModelError::EulerCount { expected: lie.dim(), got: basic.euler.len() });
        }
        let n = lie.dim();
        let top = basic.max_degree() + n;
        let by_degree: Vec<Vec<Monomial>> = (0..=top)
            .map(|m| {
                (0..basic.len())
                    .filter(|&g| basic.degree(g) <= m && m - basic.degree(g) <= n)
                    .flat_map(|g| {
                        MultiIndex::of_len(n, m - basic.degree(g)).into_iter().map(move |chi| Monomial::new(g, chi))
                    })
                    .collect()
            })
            .collect();
        let position = by_degree.iter().flat_map(|v| v.iter().enumerate().map(|(i, m)| (*m, i))).collect();
        Ok(EquivariantModel { name: name.into(), lie, basic, by_degree, position })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lie(&self) -> &LieData<F> {
        &self.lie
    }

    pub fn basic(&self) -> &BasicComplex<F> {
        &self.basic
    }

    /// Highest total degree carrying a monomial slot.
    pub fn top_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    /// Monomial basis of total degree `m`.
    pub fn basis(&self, m: usize) -> &[Monomial] {
        self.by_degree.get(m).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn bidegree(&self, m: Monomial) -> Bidegree {
        (self.basic.degree(m.generator), m.chi.len())
    }

    pub fn total_degree(&self, m: Monomial) -> usize {
        self.basic.degree(m.generator) + m.chi.len()
    }

    /// Position of `mono` within its total degree.
    pub fn index_of(&self, mono: Monomial) -> Option<usize> {
        self.position.get(&mono).copied()
    }

    pub fn to_vector(&self, m: usize, x: &ModelElement<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.basis(m).len()];
        for (mono, c) in x.terms() {
            let i = self.index_of(mono).filter(|_| self.total_degree(mono) == m);
            let i = i.unwrap_or_else(|| panic!("monomial {mono:?} is not in total degree {m}"));
            v[i] = c.clone();
        }
        v
    }

    pub fn from_vector(&self, m: usize, v: &[F]) -> ModelElement<F> {
        let mut e = ModelElement::zero();
        for (mono, c) in self.basis(m).iter().zip(v) {
            e.add_term(*mono, c.clone());
        }
        e
    }

    /// `g (x) chi_I -> -(-1)^{deg g} g (x) delta chi_I`.
    pub fn d01(&self, x: &ModelElement<F>) -> ModelElement<F> {
        let mut out = ModelElement::zero();
        for (m, c) in x.terms() {
            let coeff = -(sign::<F>(self.basic.degree(m.generator)) * c.clone());
            let image = self.lie.ce_delta(&ChiElement::basis(m.chi));
            out.add_scaled(&ModelElement::tensor(m.generator, &image), &coeff);
        }
        out
    }

    /// `d_hor (x) 1`.
    pub fn d10(&self, x: &ModelElement<F>) -> ModelElement<F> {
        let mut out = ModelElement::zero();
        for (m, c) in x.terms() {
            for (h, v) in BasicComplex::apply(&self.basic.d_hor, m.generator) {
                out.add_term(Monomial::new(h, m.chi), v.clone() * c.clone());
            }
        }
        out
    }

    /// `g (x) chi_{i_1..i_q} -> sum_j (-1)^{p+j-1} (g ^ e_{i_j}) (x) chi_{I \ i_j}`
    /// with `j` counted from 1.
    pub fn d21(&self, x: &ModelElement<F>) -> ModelElement<F> {
        let mut out = ModelElement::zero();
        for (m, c) in x.terms() {
            let p = self.basic.degree(m.generator);
            for (j0, i) in m.chi.indices().enumerate() {
                let s = sign::<F>(p + j0) * c.clone();
                let rest = m.chi.without(i);
                for (h, v) in BasicComplex::apply(&self.basic.euler[i], m.generator) {
                    out.add_term(Monomial::new(h, rest), v.clone() * s.clone());
                }
            }
        }
        out
    }

    /// `d21 + d10 + d01`.
    pub fn total_d(&self, x: &ModelElement<F>) -> ModelElement<F> {
        let mut out = self.d21(x);
        out.add_scaled(&self.d10(x), &F::one());
        out.add_scaled(&self.d01(x), &F::one());
        out
    }

    pub fn apply(&self, component: Component, x: &ModelElement<F>) -> ModelElement<F> {
        match component {
            Component::D01 => self.d01(x),
            Component::D10 => self.d10(x),
            Component::D21 => self.d21(x),
            Component::Total => self.total_d(x),
        }
    }

    /// Matrix of a differential component `C^m -> C^{m+1}` in monomial bases.
    pub fn matrix(&self, component: Component, m: usize) -> Matrix<F> {
        let src = self.basis(m);
        let mut out = Matrix::zeros(self.basis(m + 1).len(), src.len());
        for (j, mono) in src.iter().enumerate() {
            for (t, c) in self.apply(component, &ModelElement::basis(*mono)).terms() {
                let i = self
                    .index_of(t)
                    .filter(|_| self.total_degree(t) == m + 1)
                    .unwrap_or_else(|| panic!("differential leaves degree {}; validate the model first", m + 1));
                out[(i, j)] = c.clone();
            }
        }
        out
    }

    /// Interior product with the fundamental field of `u_j`, passing the
    /// horizontal factor with its Koszul sign.
    pub fn interior(&self, j: usize, x: &ModelElement<F>) -> ModelElement<F> {
        let mut out = ModelElement::zero();
        for (m, c) in x.terms() {
            let s = sign::<F>(self.basic.degree(m.generator)) * c.clone();
            out.add_scaled(&ModelElement::tensor(m.generator, &ChiElement::basis(m.chi).contract(j)), &s);
        }
        out
    }

    /// Bidegree slices of `x`, ordered by increasing chi-length and, within
    /// one length, decreasing horizontal degree. Computed by peeling off the
    /// top filtration layer with iterated contractions.
    pub fn canonical_decomposition(&self, x: &ModelElement<F>) -> Vec<(Bidegree, ModelElement<F>)> {
        let n = self.lie.dim();
        let mut rest = x.clone();
        let mut layers: Vec<ModelElement<F>> = Vec::new();
        while let Ok(q) = filtration_degree(&rest) {
            let mut layer = ModelElement::zero();
            for idx in MultiIndex::of_len(n, q) {
                // i_{X_{i_q}} ... i_{X_{i_1}} x, then undo the (-1)^{pq} sign
                let horizontal = idx.indices().fold(rest.clone(), |acc, i| self.interior(i, &acc));
                for (m, c) in horizontal.terms() {
                    debug_assert!(m.chi.is_empty());
                    let p = self.basic.degree(m.generator);
                    layer.add_term(Monomial::new(m.generator, idx), sign::<F>(p * q) * c.clone());
                }
            }
            rest = &rest - &layer;
            layers.push(layer);
        }
        let mut pieces: Vec<(Bidegree, ModelElement<F>)> = Vec::new();
        for layer in layers {
            let mut by_p: BTreeMap<usize, ModelElement<F>> = BTreeMap::new();
            for (m, c) in layer.terms() {
                by_p.entry(self.basic.degree(m.generator)).or_default().add_term(m, c.clone());
            }
            for (p, piece) in by_p {
                pieces.push(((p, filtration_degree(&piece).expect("nonzero piece")), piece));
            }
        }
        pieces.sort_by(|((p1, q1), _), ((p2, q2), _)| q1.cmp(q2).then(p2.cmp(p1)));
        pieces
    }

    /// Direct bidegree slicing; agrees with [`Self::canonical_decomposition`].
    pub fn bihomogeneous_slices(&self, x: &ModelElement<F>) -> Vec<(Bidegree, ModelElement<F>)> {
        let mut bidegrees: Vec<Bidegree> = x.terms().map(|(m, _)| self.bidegree(m)).collect();
        bidegrees.sort_by(|(p1, q1), (p2, q2)| q1.cmp(q2).then(p2.cmp(p1)));
        bidegrees.dedup();
        bidegrees.into_iter().map(|b| (b, x.filter(|m| self.bidegree(m) == b))).collect()
    }

    /// Cohomology of the total complex, computed directly from `total_d`.
    pub fn total_cohomology(&self) -> Vec<CohomologyDegree<F>> {
        let dims = self.dims();
        let d: Vec<Matrix<F>> = (0..self.top_degree()).map(|m| self.matrix(Component::Total, m)).collect();
        complex_cohomology(&dims, &d)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_model(self)
    }
}

impl<F: Field> fmt::Debug for EquivariantModel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivariantModel")
            .field("name", &self.name)
            .field("n", &self.lie.dim())
            .field("basic", &self.basic)
            .finish()
    }
}

pub const CHECK_UNIT: &str = "degree-0 unit generator";
pub const CHECK_D_HOR_DEGREES: &str = "d_hor degree bookkeeping";
pub const CHECK_EULER_DEGREES: &str = "Euler degree bookkeeping";
pub const CHECK_EULER_COMMUTE: &str = "Euler operators commute";
pub const CHECK_D_HOR_SQUARED: &str = "d_hor^2 = 0";
pub const CHECK_D01_SQUARED: &str = "(0,2): d01^2 = 0";
pub const CHECK_MIXED_11: &str = "(1,1): d10 d01 + d01 d10 = 0";
pub const CHECK_MIXED_20: &str = "(2,0): d10^2 + d21 d01 + d01 d21 = 0";
pub const CHECK_MIXED_3M1: &str = "(3,-1): d21 d10 + d10 d21 = 0";
pub const CHECK_D21_SQUARED: &str = "(4,-2): d21^2 = 0";
pub const CHECK_TOTAL_SQUARED: &str = "total d^2 = 0";

/// The five bidegree components of `d^2 = 0`.
pub const COMPONENT_CHECKS: [&str; 5] =
    [CHECK_D01_SQUARED, CHECK_MIXED_11, CHECK_MIXED_20, CHECK_MIXED_3M1, CHECK_D21_SQUARED];

/// Structural checks plus every bidegree component of `d^2 = 0`, each
/// evaluated exhaustively on the monomial basis. Lie checks are included
/// with a `lie: ` prefix.
pub fn validate_model<F: Field>(model: &EquivariantModel<F>) -> ValidationReport {
    let mut report = ValidationReport::default();
    report.extend("lie: ", validate_lie(&model.lie));
    let basic = &model.basic;

    let unit =
        (0..basic.len()).any(|g| basic.degree(g) == 0 && (0..basic.len()).all(|h| is_zero(&basic.d_hor[(h, g)])));
    report.push(CHECK_UNIT, (!unit).then(|| "B needs a degree-0 generator annihilated by d_hor".to_string()));

    let bookkeeping = |m: &Matrix<F>, shift: usize| {
        for g in 0..basic.len() {
            for (h, c) in BasicComplex::apply(m, g) {
                if basic.degree(h) != basic.degree(g) + shift {
                    return Some(format!(
                        "{} (degree {}) maps to {} (degree {}) with coefficient {c}",
                        basic.generators[g].name,
                        basic.degree(g),
                        basic.generators[h].name,
                        basic.degree(h)
                    ));
                }
            }
        }
        None
    };
    let d_deg = bookkeeping(&basic.d_hor, 1);
    let e_deg = basic.euler.iter().enumerate().find_map(|(i, e)| bookkeeping(e, 2).map(|s| format!("e{}: {s}", i + 1)));
    let degrees_ok = d_deg.is_none() && e_deg.is_none();
    report.push(CHECK_D_HOR_DEGREES, d_deg);
    report.push(CHECK_EULER_DEGREES, e_deg);

    let mut commute = None;
    'outer: for i in 0..basic.euler.len() {
        for j in i + 1..basic.euler.len() {
            if basic.euler[i].mul(&basic.euler[j]) != basic.euler[j].mul(&basic.euler[i]) {
                commute = Some(format!("e{} and e{} do not commute", i + 1, j + 1));
                break 'outer;
            }
        }
    }
    report.push(CHECK_EULER_COMMUTE, commute);

    let d_sq = (0..basic.len()).find_map(|g| {
        let col = basic.d_hor.mul(&basic.d_hor).column(g);
        col.iter().any(|c| !is_zero(c)).then(|| format!("d_hor^2({}) != 0", basic.generators[g].name))
    });
    report.push(CHECK_D_HOR_SQUARED, d_sq);

    let identities: [(&str, Vec<(Component, Component)>); 6] = [
        (CHECK_D01_SQUARED, vec![(Component::D01, Component::D01)]),
        (CHECK_MIXED_11, vec![(Component::D10, Component::D01), (Component::D01, Component::D10)]),
        (
            CHECK_MIXED_20,
            vec![(Component::D10, Component::D10), (Component::D21, Component::D01), (Component::D01, Component::D21)],
        ),
        (CHECK_MIXED_3M1, vec![(Component::D21, Component::D10), (Component::D10, Component::D21)]),
        (CHECK_D21_SQUARED, vec![(Component::D21, Component::D21)]),
        (CHECK_TOTAL_SQUARED, vec![(Component::Total, Component::Total)]),
    ];
    for (name, terms) in identities {
        if !degrees_ok {
            report.skip(name, "degree bookkeeping failed");
            continue;
        }
        let failure = model.by_degree.iter().flatten().find_map(|mono| {
            let x = ModelElement::basis(*mono);
            let mut sum = ModelElement::zero();
            for (outer, inner) in &terms {
                sum.add_scaled(&model.apply(*outer, &model.apply(*inner, &x)), &F::one());
            }
            (!sum.is_zero()).then(|| {
                let (p, q) = model.bidegree(*mono);
                format!(
                    "fails on {}⊗{} (bidegree ({p},{q})): result {sum:?}",
                    basic.generators[mono.generator].name, mono.chi
                )
            })
        });
        report.push(name, failure);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::cohomology_dims;
    use crate::validation::Status;
    use crate::Rational;

    type E = ModelElement<Rational>;

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

    fn su2_model() -> EquivariantModel<Rational> {
        EquivariantModel::new("su2", LieData::su2(), BasicComplex::point(3)).unwrap()
    }

    fn chi(idx: &[usize]) -> MultiIndex {
        MultiIndex::new(idx)
    }

    #[test]
    fn d01_examples() {
        let h = hopf();
        assert!(h.d01(&E::monomial(0, chi(&[0]), q(1))).is_zero());
        let s = su2_model();
        assert_eq!(s.d01(&E::monomial(0, chi(&[2]), q(1))), E::monomial(0, chi(&[0, 1]), q(-1)));
        assert!(s.d01(&E::monomial(0, chi(&[0, 1, 2]), q(1))).is_zero());
    }

    #[test]
    fn d10_examples() {
        let basic =
            BasicComplex::from_entries(vec![Generator::new("b0", 0), Generator::new("b1", 1)], 1, &[(0, 1, q(1))], &[])
                .unwrap();
        let m = EquivariantModel::new("t", LieData::abelian(1).unwrap(), basic).unwrap();
        assert_eq!(m.d10(&E::monomial(0, chi(&[0]), q(1))), E::monomial(1, chi(&[0]), q(1)));
        assert!(hopf().d10(&E::monomial(1, chi(&[0]), q(1))).is_zero());
    }

    #[test]
    fn d21_examples() {
        let h = hopf();
        assert_eq!(h.d21(&E::monomial(0, chi(&[0]), q(1))), E::monomial(1, MultiIndex::EMPTY, q(1)));
        assert!(h.d21(&E::monomial(1, chi(&[0]), q(1))).is_zero());
        assert!(h.d21(&E::monomial(0, MultiIndex::EMPTY, q(1))).is_zero());
    }

    #[test]
    fn total_d_examples() {
        let h = hopf();
        assert_eq!(h.total_d(&E::monomial(0, chi(&[0]), q(1))), E::monomial(1, MultiIndex::EMPTY, q(1)));
        assert!(h.total_d(&E::monomial(1, MultiIndex::EMPTY, q(1))).is_zero());
    }

    #[test]
    fn hopf_validates_and_cohomology() {
        let h = hopf();
        assert!(h.validate().passed(), "{}", h.validate());
        assert_eq!(cohomology_dims(&h.total_cohomology()), vec![1, 0, 0, 1]);
        assert_eq!(cohomology_dims(&su2_model().total_cohomology()), vec![1, 0, 0, 1]);
    }

    #[test]
    fn injected_d_hor_on_top_generator_is_rejected() {
        let basic = BasicComplex::from_entries(
            vec![Generator::new("1", 0), Generator::new("v", 2)],
            1,
            &[(1, 0, q(1))],
            &[(0, 0, 1, q(1))],
        )
        .unwrap();
        let m = EquivariantModel::new("bad", LieData::abelian(1).unwrap(), basic).unwrap();
        let r = m.validate();
        assert!(!r.passed());
        assert_eq!(r.check(CHECK_D_HOR_DEGREES).unwrap().status, Status::Fail);
        assert_eq!(r.check(CHECK_TOTAL_SQUARED).unwrap().status, Status::Skipped);
    }

    #[test]
    fn su2_with_euler_fails_20_component() {
        let basic = BasicComplex::from_entries(
            vec![Generator::new("1", 0), Generator::new("v", 2)],
            3,
            &[],
            &[(0, 0, 1, q(1))],
        )
        .unwrap();
        let m = EquivariantModel::new("su2-euler", LieData::su2(), basic).unwrap();
        let r = m.validate();
        assert_eq!(r.check(CHECK_MIXED_20).unwrap().status, Status::Fail);
        assert_eq!(r.check(CHECK_MIXED_11).unwrap().status, Status::Pass);
        assert_eq!(r.check(CHECK_TOTAL_SQUARED).unwrap().status, Status::Fail);
    }

    #[test]
    fn filtration_degree_examples() {
        assert_eq!(filtration_degree(&E::monomial(0, chi(&[0, 1]), q(1))), Ok(2));
        assert_eq!(filtration_degree(&E::monomial(1, MultiIndex::EMPTY, q(1))), Ok(0));
        let mixed = &E::monomial(1, MultiIndex::EMPTY, q(1)) + &E::monomial(0, chi(&[0, 1]), q(1));
        assert_eq!(filtration_degree(&mixed), Ok(2));
        assert_eq!(filtration_degree(&E::zero()), Err(ModelError::ZeroElement));
    }

    #[test]
    fn canonical_decomposition_examples() {
        let h = hopf();
        let v = E::monomial(1, MultiIndex::EMPTY, q(1));
        let c = E::monomial(0, chi(&[0]), q(1));
        let x = &v + &c;
        assert_eq!(h.canonical_decomposition(&x), vec![((2, 0), v.clone()), ((0, 1), c)]);
        assert_eq!(h.canonical_decomposition(&v), vec![((2, 0), v)]);
        assert!(h.canonical_decomposition(&E::zero()).is_empty());
    }

    #[test]
    fn euler_count_mismatch() {
        let r = EquivariantModel::new("x", LieData::<Rational>::su2(), BasicComplex::point(1));
        assert_eq!(r.err(), Some(ModelError::EulerCount { expected: 3, got: 1 }));
    }
}

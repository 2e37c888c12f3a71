use std::collections::BTreeMap;
use std::fmt;

use super::MultiIndex;
use crate::scalar::{is_zero, Field};

/// An element of the exterior algebra on `chi_1, ..., chi_n`.
#[derive(Clone, PartialEq)]
pub struct ChiElement<F> {
    terms: BTreeMap<MultiIndex, F>,
}

impl<F: Field> Default for ChiElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> ChiElement<F> {
    pub fn zero() -> Self {
        ChiElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(MultiIndex::EMPTY, F::one())
    }

    /// The generator `chi_i` (0-based).
    pub fn generator(i: usize) -> Self {
        Self::monomial(MultiIndex::single(i), F::one())
    }

    pub fn basis(index: MultiIndex) -> Self {
        Self::monomial(index, F::one())
    }

    pub fn monomial(index: MultiIndex, coeff: F) -> Self {
        let mut e = Self::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, F)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, index: MultiIndex, coeff: F) {
        if is_zero(&coeff) {
            return;
        }
        let slot = self.terms.entry(index).or_insert_with(F::zero);
        *slot = slot.clone() + coeff;
        if is_zero(slot) {
            self.terms.remove(&index);
        }
    }

    pub fn add_scaled(&mut self, other: &ChiElement<F>, c: &F) {
        for (i, v) in &other.terms {
            self.add_term(*i, v.clone() * c.clone());
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: MultiIndex) -> F {
        self.terms.get(&index).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &F)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    /// The degree-`q` slice.
    pub fn homogeneous(&self, q: usize) -> Self {
        Self::from_terms(self.terms().filter(|(i, _)| i.len() == q).map(|(i, c)| (i, c.clone())))
    }

    pub fn wedge(&self, other: &ChiElement<F>) -> ChiElement<F> {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((m, odd)) = a.wedge(*b) {
                    let c = x.clone() * y.clone();
                    out.add_term(m, if odd { -c } else { c });
                }
            }
        }
        out
    }

    /// Interior product with the vector dual to `chi_i`: a degree -1 graded
    /// derivation with `contract(i, chi_j) = [i == j]`.
    pub fn contract(&self, i: usize) -> ChiElement<F> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.contains(i) {
                let c = c.clone();
                out.add_term(m.without(i), if m.position(i) % 2 == 1 { -c } else { c });
            }
        }
        out
    }
}

impl<F: Field> std::ops::Add for &ChiElement<F> {
    type Output = ChiElement<F>;

    fn add(self, rhs: &ChiElement<F>) -> ChiElement<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &F::one());
        out
    }
}

impl<F: Field> std::ops::Sub for &ChiElement<F> {
    type Output = ChiElement<F>;

    fn sub(self, rhs: &ChiElement<F>) -> ChiElement<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-F::one());
        out
    }
}

impl<F: Field> std::ops::Neg for &ChiElement<F> {
    type Output = ChiElement<F>;

    fn neg(self) -> ChiElement<F> {
        self.scaled(&-F::one())
    }
}

impl<F: Field> fmt::Debug for ChiElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for ChiElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){m}")?;
        }
        Ok(())
    }
}

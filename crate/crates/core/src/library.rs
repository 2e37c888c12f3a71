//! Built-in example models with their expected results.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::liealg::LieData;
use crate::model::{BasicComplex, EquivariantModel, Generator, ModelError};
use crate::pipeline::{analyze, Analysis};
use crate::qlinalg::{kernel_basis, Matrix};
use crate::validation::ValidationReport;
use crate::verify::basic_cohomology;
use crate::{qlinalg::cohomology_dims, Rational};

pub const NAMES: [&str; 6] = ["hopf", "weighted_hopf", "kronecker", "group_su2", "group_torus", "trivial_product"];

const MAX_TORUS_RANK: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LibraryError {
    #[error(
        "unknown model '{0}' (available: hopf, weighted_hopf, kronecker, group_su2, group_torus, trivial_product)"
    )]
    UnknownModel(String),
    #[error("invalid parameter for {name}: {reason}")]
    BadParameter { name: String, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub total_cohomology: Vec<usize>,
    pub basic_cohomology: Vec<usize>,
    /// Nonzero cells of `E_2`.
    pub e2: BTreeMap<(usize, usize), usize>,
    pub stabilization: usize,
    /// Absolute value of the 1x1 transgression at a cell.
    pub d2_abs: Option<((usize, usize), Rational)>,
}

#[derive(Clone)]
pub struct ModelCard {
    pub model: EquivariantModel<Rational>,
    pub expected: Expected,
    pub description: String,
}

pub struct CardOutcome {
    pub analysis: Analysis<Rational>,
    pub expectations: ValidationReport,
}

impl CardOutcome {
    pub fn passed(&self) -> bool {
        self.expectations.passed()
    }
}

fn mismatch<T: std::fmt::Debug + PartialEq>(expected: &T, got: &T) -> Option<String> {
    (expected != got).then(|| format!("expected {expected:?}, got {got:?}"))
}

impl ModelCard {
    pub fn name(&self) -> &str {
        self.model.name()
    }

    /// Runs the pipeline and compares every expectation; `Err` carries the
    /// validation report of an inconsistent model.
    pub fn run(&self) -> Result<CardOutcome, ValidationReport> {
        let a = analyze(&self.model)?;
        let exp = &self.expected;
        let mut r = ValidationReport::default();
        r.push("total cohomology", mismatch(&exp.total_cohomology, &a.total_cohomology));
        r.push("basic cohomology", mismatch(&exp.basic_cohomology, &a.basic_cohomology));
        r.push("E2 dims", mismatch(&exp.e2, &a.sequence.page(2).nonzero_dims()));
        r.push("stabilization page", mismatch(&exp.stabilization, &a.stabilized_at()));
        r.push(
            "E2 tensor verdict",
            (!a.e2.report.isomorphism).then(|| match a.e2.report.first_failure() {
                Some(c) => format!(
                    "rank F = {} at ({},{}), dim E2 = {}, product = {}",
                    c.rank_f, c.p, c.q, c.e2_dim, c.product
                ),
                None => "invariant forms do not represent H(g)".to_string(),
            }),
        );
        r.push(
            "abutment",
            (!a.abutment.passed).then(|| {
                let e: Vec<usize> = a.abutment.rows.iter().map(|x| x.e_infinity).collect();
                let t: Vec<usize> = a.abutment.rows.iter().map(|x| x.total_cohomology).collect();
                format!("E_inf {e:?} vs total cohomology {t:?}")
            }),
        );
        if let Some((cell, abs)) = &exp.d2_abs {
            let got = a.transgression_entry(*cell).map(|v| v.abs());
            r.push(format!("d2 entry at {cell:?}"), mismatch(&Some(abs.clone()), &got));
        }
        Ok(CardOutcome { analysis: a, expectations: r })
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn no_param(name: &str, param: Option<i64>) -> Result<(), LibraryError> {
    match param {
        Some(_) => Err(LibraryError::BadParameter { name: name.into(), reason: "takes no parameter".into() }),
        None => Ok(()),
    }
}

/// `"name"` or `"name:param"`.
pub fn parse_card_spec(spec: &str) -> Result<(String, Option<i64>), LibraryError> {
    match spec.split_once(':') {
        None => Ok((spec.to_string(), None)),
        Some((name, p)) => {
            let v = p.trim().parse::<i64>().map_err(|_| LibraryError::BadParameter {
                name: name.into(),
                reason: format!("'{p}' is not an integer"),
            })?;
            Ok((name.to_string(), Some(v)))
        }
    }
}

pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "hopf" => "S^3 -> S^2 with the circle action: B = {1, v}, Euler operator 1 -> v; d2 kills the fibre class",
        "weighted_hopf" => "Hopf model with Euler operator scaled by a nonzero integer w (default 2); d2 entry is w",
        "kronecker" => {
            "irrational linear flow on T^2 (R acting, not compact); invariant model independent of the slope"
        }
        "group_su2" => "su(2) acting on itself: B = Q, the sequence is H(su2) in column 0",
        "group_torus" => "R^n acting on T^n (rank n, default 2): H = exterior algebra on n classes",
        "trivial_product" => "product action with zero Euler forms; seeded random model with :SEED",
        _ => return None,
    })
}

pub fn get_model(name: &str, param: Option<i64>) -> Result<ModelCard, LibraryError> {
    match name {
        "hopf" => {
            no_param(name, param)?;
            hopf_card("hopf", 1)
        }
        "weighted_hopf" => {
            let w = param.unwrap_or(2);
            if w == 0 {
                return Err(LibraryError::BadParameter {
                    name: name.into(),
                    reason: "weight must be nonzero (w = 0 makes the transgression vanish)".into(),
                });
            }
            hopf_card(&format!("weighted_hopf:{w}"), w)
        }
        "kronecker" => {
            no_param(name, param)?;
            kronecker()
        }
        "group_su2" => {
            no_param(name, param)?;
            let model = EquivariantModel::new("group_su2", LieData::su2(), BasicComplex::point(3))?;
            Ok(ModelCard {
                model,
                expected: Expected {
                    total_cohomology: vec![1, 0, 0, 1],
                    basic_cohomology: vec![1],
                    e2: BTreeMap::from([((0, 0), 1), ((0, 3), 1)]),
                    stabilization: 2,
                    d2_abs: None,
                },
                description: describe(name).unwrap().into(),
            })
        }
        "group_torus" => {
            let n = param.unwrap_or(2);
            if !(1..=MAX_TORUS_RANK).contains(&n) {
                return Err(LibraryError::BadParameter {
                    name: name.into(),
                    reason: format!("rank must be in 1..={MAX_TORUS_RANK}, got {n}"),
                });
            }
            group_torus(n as usize)
        }
        "trivial_product" => match param {
            None => {
                let basic = BasicComplex::from_entries(
                    vec![
                        Generator::new("1", 0),
                        Generator::new("a", 1),
                        Generator::new("b", 1),
                        Generator::new("c", 2),
                    ],
                    3,
                    &[(1, 3, q(1))],
                    &[],
                )?;
                trivial_product("trivial_product", basic, LieData::su2())
            }
            Some(seed) => {
                let mut card = random_trivial_product(seed as u64);
                card.description = format!("{} (seed {seed})", card.description);
                Ok(card)
            }
        },
        _ => Err(LibraryError::UnknownModel(name.into())),
    }
}

fn hopf_card(name: &str, w: i64) -> Result<ModelCard, LibraryError> {
    let basic =
        BasicComplex::from_entries(vec![Generator::new("1", 0), Generator::new("v", 2)], 1, &[], &[(0, 0, 1, q(w))])?;
    let model = EquivariantModel::new(name, LieData::abelian(1).expect("n = 1"), basic)?;
    let base = if w == 1 { "hopf" } else { "weighted_hopf" };
    Ok(ModelCard {
        model,
        expected: Expected {
            total_cohomology: vec![1, 0, 0, 1],
            basic_cohomology: vec![1, 0, 1],
            e2: BTreeMap::from([((0, 0), 1), ((0, 1), 1), ((2, 0), 1), ((2, 1), 1)]),
            stabilization: 3,
            d2_abs: Some(((0, 1), q(w).abs())),
        },
        description: describe(base).unwrap().into(),
    })
}

// The slope of the flow never enters: invariant forms on T^2 under the
// flow are spanned by 1, the transverse form kappa, chi and kappa chi.
fn kronecker() -> Result<ModelCard, LibraryError> {
    let basic = BasicComplex::from_entries(vec![Generator::new("1", 0), Generator::new("kappa", 1)], 1, &[], &[])?;
    let model = EquivariantModel::new("kronecker", LieData::abelian(1).expect("n = 1"), basic)?;
    Ok(ModelCard {
        model,
        expected: Expected {
            total_cohomology: vec![1, 2, 1],
            basic_cohomology: vec![1, 1],
            e2: BTreeMap::from([((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]),
            stabilization: 2,
            d2_abs: None,
        },
        description: describe("kronecker").unwrap().into(),
    })
}

fn group_torus(n: usize) -> Result<ModelCard, LibraryError> {
    let model = EquivariantModel::new(
        format!("group_torus:{n}"),
        LieData::abelian(n).map_err(ModelError::from)?,
        BasicComplex::point(n),
    )?;
    Ok(ModelCard {
        model,
        expected: Expected {
            total_cohomology: (0..=n).map(|k| binomial(n, k)).collect(),
            basic_cohomology: vec![1],
            e2: (0..=n).map(|k| ((0, k), binomial(n, k))).collect(),
            stabilization: 2,
            d2_abs: None,
        },
        description: describe("group_torus").unwrap().into(),
    })
}

/// `B (x) Lambda(g)` with zero Euler forms; expectations come from the
/// Kunneth formula applied to `H(B)` and `H(g)` computed separately.
pub fn trivial_product(
    name: &str,
    basic: BasicComplex<Rational>,
    lie: LieData<Rational>,
) -> Result<ModelCard, LibraryError> {
    if basic.euler().iter().any(|e| !e.is_zero()) {
        return Err(LibraryError::BadParameter { name: name.into(), reason: "Euler operators must vanish".into() });
    }
    let model = EquivariantModel::new(name, lie, basic)?;
    let hb = cohomology_dims(&basic_cohomology(&model));
    let hg = cohomology_dims(&model.lie().lie_cohomology());
    let mut total = vec![0; hb.len() + hg.len() - 1];
    let mut e2 = BTreeMap::new();
    for (p, a) in hb.iter().enumerate() {
        for (qq, b) in hg.iter().enumerate() {
            total[p + qq] += a * b;
            if a * b > 0 {
                e2.insert((p, qq), a * b);
            }
        }
    }
    Ok(ModelCard {
        model,
        expected: Expected { total_cohomology: total, basic_cohomology: hb, e2, stabilization: 2, d2_abs: None },
        description: describe("trivial_product").unwrap().into(),
    })
}

/// Random `B` in degrees `0..=top` (`top <= 3`) with `d_hor^2 = 0` and a
/// closed unit, abelian `g` of rank at most 3.
pub fn random_trivial_product(seed: u64) -> ModelCard {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = rng.gen_range(1..=3usize);
    let counts: Vec<usize> = (0..=top).map(|_| rng.gen_range(1..=2)).collect();
    let mut generators = Vec::new();
    let mut offsets = Vec::new();
    for (p, &c) in counts.iter().enumerate() {
        offsets.push(generators.len());
        for i in 0..c {
            generators
                .push(Generator::new(if generators.is_empty() { "1".to_string() } else { format!("b{p}_{i}") }, p));
        }
    }
    let mut entries = Vec::new();
    let mut prev: Matrix<Rational> = Matrix::zeros(counts[0], 0);
    for p in 0..top {
        let (src, dst) = (counts[p], counts[p + 1]);
        // rows of the new block must annihilate the image of the previous one
        let allowed = kernel_basis(&prev.transpose());
        let mut block: Matrix<Rational> = Matrix::zeros(dst, src);
        for i in 0..dst {
            for k in 0..allowed.dim() {
                let coef = q(rng.gen_range(-2..=2));
                if coef.is_zero() {
                    continue;
                }
                for j in 0..src {
                    if p == 0 && j == 0 {
                        continue;
                    }
                    block[(i, j)] = block[(i, j)].clone() + coef.clone() * allowed.basis()[(k, j)].clone();
                }
            }
        }
        for i in 0..dst {
            for j in 0..src {
                if !block[(i, j)].is_zero() {
                    entries.push((offsets[p] + j, offsets[p + 1] + i, block[(i, j)].clone()));
                }
            }
        }
        prev = block;
    }
    let n = rng.gen_range(1..=3usize);
    let basic = BasicComplex::from_entries(generators, n, &entries, &[]).expect("generated indices in range");
    let lie = LieData::abelian(n).expect("n >= 1");
    trivial_product(&format!("trivial_product:{seed}"), basic, lie).expect("zero Euler operators")
}

fn su2_index(a: usize, b: usize, k: usize) -> usize {
    (a * 3 + b) * 3 + k
}

/// su(2) data with the cyclic entries dropped: bracket-antisymmetric, satisfies
/// Jacobi, but not ad-invariant.
pub fn heisenberg() -> EquivariantModel<Rational> {
    let mut c = vec![q(0); 27];
    c[su2_index(0, 1, 2)] = q(1);
    c[su2_index(1, 0, 2)] = q(-1);
    EquivariantModel::new("heisenberg", LieData::new(3, c).expect("27 entries"), BasicComplex::point(3))
        .expect("one Euler operator per generator")
}

/// su(2) with `[u_1, u_2] = u_1 + u_3`: violates Jacobi and `delta^2 = 0`.
pub fn mutated_jacobi() -> EquivariantModel<Rational> {
    let su2 = LieData::<Rational>::su2();
    let mut c = su2.constants().to_vec();
    c[su2_index(0, 1, 0)] = q(1);
    c[su2_index(1, 0, 0)] = q(-1);
    EquivariantModel::new("mutated_jacobi", LieData::new(3, c).expect("27 entries"), BasicComplex::point(3))
        .expect("one Euler operator per generator")
}

pub fn fixtures() -> Vec<EquivariantModel<Rational>> {
    vec![heisenberg(), mutated_jacobi()]
}

/// Every card at its default parameter.
pub fn all_cards() -> Vec<ModelCard> {
    NAMES.iter().map(|n| get_model(n, None).expect("default cards build")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{CHECK_FULL_ANTISYMMETRY, CHECK_JACOBI};
    use crate::model::validate_model;
    use crate::validation::Status;

    #[test]
    fn every_default_card_passes() {
        for card in all_cards() {
            let out = card.run().unwrap_or_else(|r| panic!("{} invalid:\n{r}", card.name()));
            assert!(out.passed(), "{}:\n{}", card.name(), out.expectations);
        }
    }

    #[test]
    fn torus_two() {
        let card = get_model("group_torus", Some(2)).unwrap();
        assert_eq!(card.run().unwrap().analysis.total_cohomology, vec![1, 2, 1]);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(get_model("weighted_hopf", Some(0)), Err(LibraryError::BadParameter { .. })));
        assert!(matches!(get_model("hopf", Some(3)), Err(LibraryError::BadParameter { .. })));
        assert!(matches!(get_model("group_torus", Some(0)), Err(LibraryError::BadParameter { .. })));
        assert_eq!(get_model("sphere", None).err(), Some(LibraryError::UnknownModel("sphere".into())));
        assert_eq!(parse_card_spec("weighted_hopf:3").unwrap(), ("weighted_hopf".into(), Some(3)));
        assert!(parse_card_spec("weighted_hopf:x").is_err());
    }

    #[test]
    fn random_products_are_valid_and_deterministic() {
        for seed in 0..5 {
            let a = random_trivial_product(seed);
            assert!(validate_model(&a.model).passed(), "seed {seed}");
            let b = random_trivial_product(seed);
            assert_eq!(a.model.basic(), b.model.basic());
        }
    }

    #[test]
    fn fixtures_rejected() {
        let h = validate_model(&heisenberg());
        assert_eq!(h.check(&format!("lie: {CHECK_FULL_ANTISYMMETRY}")).unwrap().status, Status::Fail);
        let m = validate_model(&mutated_jacobi());
        assert_eq!(m.check(&format!("lie: {CHECK_JACOBI}")).unwrap().status, Status::Fail);
    }
}

//! JSON model files.
//!
//! ```json
//! {
//!   "name": "hopf",
//!   "lie": { "n": 1, "c": [] },
//!   "basic": {
//!     "generators": [{ "name": "1", "degree": 0 }, { "name": "v", "degree": 2 }],
//!     "d_hor": [],
//!     "euler": [[1, 1, 2, "1/1"]]
//!   }
//! }
//! ```
//!
//! Indices are 1-based and values are `"num/den"` strings. `c` entries are
//! `[a, b, k, value]` for `c[a][b][k]`; an entry also fixes every
//! permutation of `(a, b, k)` that is not listed itself, with the sign of
//! the permutation. `d_hor` entries are `[src, dst, value]`, Euler entries
//! `[i, src, dst, value]`.

use std::collections::HashSet;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::{permutations3, validate_lie, LieData, CHECK_FULL_ANTISYMMETRY, MAX_GENERATORS};
use crate::model::{BasicComplex, EquivariantModel, Generator, ModelError};
use crate::scalar::parse_rational;
use crate::validation::Status;
use crate::Rational;

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{at}: {reason}")]
    Invalid { at: String, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn invalid(at: impl Into<String>, reason: impl Into<String>) -> ModelFileError {
    ModelFileError::Invalid { at: at.into(), reason: reason.into() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub lie: LieSection,
    pub basic: BasicSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSection {
    pub n: usize,
    #[serde(default)]
    pub c: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicSection {
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub d_hor: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub euler: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: usize,
}

fn value(at: &str, s: &str) -> Result<Rational, ModelFileError> {
    parse_rational(s).ok_or_else(|| invalid(at, format!("'{s}' is not a rational of the form num/den")))
}

fn index(at: &str, i: usize, n: usize, what: &str) -> Result<usize, ModelFileError> {
    if i == 0 || i > n {
        return Err(invalid(at, format!("{what} index {i} out of range 1..={n}")));
    }
    Ok(i - 1)
}

fn format_rational(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, ModelFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }

    pub fn to_model(&self) -> Result<EquivariantModel<Rational>, ModelFileError> {
        let n = self.lie.n;
        if n == 0 || n > MAX_GENERATORS {
            return Err(invalid("lie.n", format!("must be between 1 and {MAX_GENERATORS}, got {n}")));
        }
        let mut c = vec![Rational::zero(); n * n * n];
        let mut explicit = HashSet::new();
        let mut listed = Vec::new();
        for (i, (a, b, k, v)) in self.lie.c.iter().enumerate() {
            let at = format!("lie.c[{i}]");
            let t = (index(&at, *a, n, "Lie")?, index(&at, *b, n, "Lie")?, index(&at, *k, n, "Lie")?);
            if !explicit.insert(t) {
                return Err(invalid(at, format!("c[{a}][{b}][{k}] listed twice")));
            }
            listed.push((t, value(&at, v)?));
        }
        let mut assigned = explicit.clone();
        for ((a, b, k), v) in &listed {
            c[(a * n + b) * n + k] = v.clone();
            for ((x, y, z), odd) in permutations3(*a, *b, *k) {
                if assigned.insert((x, y, z)) {
                    c[(x * n + y) * n + z] = if odd { -v.clone() } else { v.clone() };
                }
            }
        }
        let lie = LieData::new(n, c).map_err(ModelError::from)?;

        let generators: Vec<Generator> =
            self.basic.generators.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect();
        let len = generators.len();
        let d_hor = self
            .basic
            .d_hor
            .iter()
            .enumerate()
            .map(|(i, (src, dst, v))| {
                let at = format!("basic.d_hor[{i}]");
                Ok((index(&at, *src, len, "generator")?, index(&at, *dst, len, "generator")?, value(&at, v)?))
            })
            .collect::<Result<Vec<_>, ModelFileError>>()?;
        let euler = self
            .basic
            .euler
            .iter()
            .enumerate()
            .map(|(i, (e, src, dst, v))| {
                let at = format!("basic.euler[{i}]");
                Ok((
                    index(&at, *e, n, "Euler operator")?,
                    index(&at, *src, len, "generator")?,
                    index(&at, *dst, len, "generator")?,
                    value(&at, v)?,
                ))
            })
            .collect::<Result<Vec<_>, ModelFileError>>()?;
        let basic = BasicComplex::from_entries(generators, n, &d_hor, &euler)?;
        Ok(EquivariantModel::new(self.name.clone(), lie, basic)?)
    }

    /// Fully antisymmetric constants are written as one `a < b < k` entry
    /// per orbit; otherwise every entry of each orbit that has a nonzero
    /// member is written, zeros included, so the loader completes nothing.
    pub fn from_model(model: &EquivariantModel<Rational>) -> Self {
        let lie = model.lie();
        let n = lie.dim();
        let full = validate_lie(lie).check(CHECK_FULL_ANTISYMMETRY).map(|c| c.status) == Some(Status::Pass);
        let mut c = Vec::new();
        let mut seen = HashSet::new();
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    if full {
                        if a < b && b < k && !lie.c(a, b, k).is_zero() {
                            c.push((a + 1, b + 1, k + 1, format_rational(lie.c(a, b, k))));
                        }
                        continue;
                    }
                    if lie.c(a, b, k).is_zero() || seen.contains(&(a, b, k)) {
                        continue;
                    }
                    let mut orbit: Vec<(usize, usize, usize)> =
                        permutations3(a, b, k).iter().map(|(t, _)| *t).collect();
                    orbit.sort();
                    orbit.dedup();
                    for t in orbit {
                        seen.insert(t);
                    }
                }
            }
        }
        if !full {
            let mut all: Vec<_> = seen.into_iter().collect();
            all.sort();
            c = all.into_iter().map(|(a, b, k)| (a + 1, b + 1, k + 1, format_rational(lie.c(a, b, k)))).collect();
        }

        let basic = model.basic();
        let len = basic.len();
        let mut d_hor = Vec::new();
        for src in 0..len {
            for dst in 0..len {
                let v = &basic.d_hor()[(dst, src)];
                if !v.is_zero() {
                    d_hor.push((src + 1, dst + 1, format_rational(v)));
                }
            }
        }
        let mut euler = Vec::new();
        for (i, e) in basic.euler().iter().enumerate() {
            for src in 0..len {
                for dst in 0..len {
                    if !e[(dst, src)].is_zero() {
                        euler.push((i + 1, src + 1, dst + 1, format_rational(&e[(dst, src)])));
                    }
                }
            }
        }
        ModelFile {
            name: model.name().to_string(),
            lie: LieSection { n, c },
            basic: BasicSection {
                generators: basic
                    .generators()
                    .iter()
                    .map(|g| GeneratorEntry { name: g.name.clone(), degree: g.degree })
                    .collect(),
                d_hor,
                euler,
            },
        }
    }
}

pub fn parse_model(text: &str) -> Result<EquivariantModel<Rational>, ModelFileError> {
    ModelFile::parse(text)?.to_model()
}

pub fn load_model(path: &Path) -> Result<EquivariantModel<Rational>, ModelFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ModelFileError::Io { path: path.display().to_string(), source })?;
    parse_model(&text)
}

pub fn export_model(model: &EquivariantModel<Rational>) -> String {
    ModelFile::from_model(model).to_json()
}

/// Same name, structure constants and basic complex.
pub fn same_model_data(a: &EquivariantModel<Rational>, b: &EquivariantModel<Rational>) -> bool {
    a.name() == b.name() && a.lie() == b.lie() && a.basic() == b.basic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{all_cards, fixtures};

    const HOPF: &str = r#"{
        "name": "hopf",
        "lie": { "n": 1, "c": [] },
        "basic": {
            "generators": [{ "name": "1", "degree": 0 }, { "name": "v", "degree": 2 }],
            "d_hor": [],
            "euler": [[1, 1, 2, "1/1"]]
        }
    }"#;

    #[test]
    fn parse_hopf() {
        let m = parse_model(HOPF).unwrap();
        assert_eq!(m.basic().euler()[0][(1, 0)], Rational::from_integer(1.into()));
        assert!(crate::model::validate_model(&m).passed());
    }

    #[test]
    fn unknown_key_named() {
        let text = HOPF.replace("\"euler\"", "\"eulr\"");
        let err = parse_model(&text).unwrap_err().to_string();
        assert!(err.contains("eulr"), "{err}");
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn bad_values_and_indices() {
        let err = parse_model(&HOPF.replace("\"1/1\"", "\"1/0\"")).unwrap_err().to_string();
        assert!(err.contains("basic.euler[0]"), "{err}");
        let err = parse_model(&HOPF.replace("[1, 1, 2,", "[1, 1, 3,")).unwrap_err().to_string();
        assert!(err.contains("out of range"), "{err}");
        let err = parse_model(&HOPF.replace("[1, 1, 2,", "[0, 1, 2,")).unwrap_err().to_string();
        assert!(err.contains("out of range"), "{err}");
    }

    #[test]
    fn orbit_closure() {
        let text = r#"{"name": "su2", "lie": {"n": 3, "c": [[1, 2, 3, "1"]]},
            "basic": {"generators": [{"name": "1", "degree": 0}], "euler": []}}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m.lie(), &LieData::su2());
    }

    #[test]
    fn explicit_entries_win() {
        let text = r#"{"name": "h", "lie": {"n": 3, "c": [
                [1, 2, 3, "1"], [2, 1, 3, "-1"], [2, 3, 1, "0"], [3, 2, 1, "0"], [1, 3, 2, "0"], [3, 1, 2, "0"]]},
            "basic": {"generators": [{"name": "1", "degree": 0}]}}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m.lie(), crate::library::heisenberg().lie());
    }

    #[test]
    fn duplicate_entry_rejected() {
        let text = r#"{"name": "h", "lie": {"n": 3, "c": [[1, 2, 3, "1"], [1, 2, 3, "2"]]},
            "basic": {"generators": [{"name": "1", "degree": 0}]}}"#;
        assert!(parse_model(text).unwrap_err().to_string().contains("twice"));
    }

    #[test]
    fn round_trip_cards_and_fixtures() {
        let models = all_cards().into_iter().map(|c| c.model).chain(fixtures());
        for m in models {
            let back = parse_model(&export_model(&m)).unwrap();
            assert!(same_model_data(&m, &back), "{}", m.name());
        }
    }
}

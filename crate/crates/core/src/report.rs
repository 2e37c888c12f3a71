//! Pipeline results as one serializable document, rendered either as JSON
//! or as an aligned text table.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::model::EquivariantModel;
use crate::pipeline::Analysis;
use crate::specseq::{AbutmentReport, SpectralPage};
use crate::validation::{Status, ValidationReport};
use crate::verify::E2Report;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDim {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrRank {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageSummary {
    pub r: usize,
    pub dims: Vec<CellDim>,
    /// Nonzero ranks only.
    pub dr_ranks: Vec<DrRank>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransgressionBlock {
    pub from: (usize, usize),
    pub to: (usize, usize),
    /// Row-major entries as `num/den` strings.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PagesReport {
    pub model: String,
    pub validation: ValidationReport,
    pub basic_cohomology: Vec<usize>,
    pub lie_cohomology: Vec<usize>,
    pub total_cohomology: Vec<usize>,
    pub stabilized_at: usize,
    pub pages: Vec<PageSummary>,
    pub e_infinity: PageSummary,
    pub abutment: AbutmentReport,
    pub e2_check: E2Report,
    pub verdict: String,
    /// Nonzero `d_2` blocks in tensor bases, or why they are unavailable.
    pub transgression: Result<Vec<TransgressionBlock>, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectations: Option<ValidationReport>,
}

fn summarize(page: &SpectralPage<Rational>) -> PageSummary {
    PageSummary {
        r: page.r,
        dims: page.dims().into_iter().map(|((p, q), dim)| CellDim { p, q, dim }).collect(),
        dr_ranks: page
            .dr_ranks()
            .into_iter()
            .filter(|(_, rank)| *rank > 0)
            .map(|(from, rank)| DrRank {
                from,
                to: page.target(from.0, from.1).expect("nonzero d_r has a target"),
                rank,
            })
            .collect(),
    }
}

fn rational(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

impl PagesReport {
    /// Pages `E_0 .. E_min(max_r, stabilization)`.
    pub fn new(model: &EquivariantModel<Rational>, a: &Analysis<Rational>, max_r: Option<usize>) -> Self {
        let last = max_r.map_or(a.stabilized_at(), |r| r.min(a.stabilized_at()));
        let pages = a.sequence.pages[..=last].iter().map(summarize).collect();
        let transgression = match &a.transgression {
            Ok(t) => Ok(t
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&from, m)| TransgressionBlock {
                    from,
                    to: (from.0 + 2, from.1 - 1),
                    matrix: m.row_vectors().map(|row| row.iter().map(rational).collect()).collect(),
                })
                .collect()),
            Err(e) => Err(e.to_string()),
        };
        PagesReport {
            model: model.name().to_string(),
            validation: a.validation.clone(),
            basic_cohomology: a.basic_cohomology.clone(),
            lie_cohomology: a.lie_cohomology.clone(),
            total_cohomology: a.total_cohomology.clone(),
            stabilized_at: a.stabilized_at(),
            pages,
            e_infinity: summarize(a.sequence.e_infinity()),
            abutment: a.abutment.clone(),
            e2_check: a.e2.report.clone(),
            verdict: a.e2.report.verdict().to_string(),
            transgression,
            expectations: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let passed = self.validation.checks.iter().filter(|c| c.status == Status::Pass).count();
        writeln!(out, "model: {}", self.model).unwrap();
        writeln!(out, "validation: {passed}/{} checks passed", self.validation.checks.len()).unwrap();
        writeln!(out).unwrap();

        let width = self.basic_cohomology.len().max(self.lie_cohomology.len()).max(self.total_cohomology.len());
        let mut rows = vec![std::iter::once("degree".to_string()).chain((0..width).map(|k| k.to_string())).collect()];
        for (label, v) in
            [("H(B)", &self.basic_cohomology), ("H(g)", &self.lie_cohomology), ("H_total", &self.total_cohomology)]
        {
            rows.push(std::iter::once(label.to_string()).chain(v.iter().map(|d| d.to_string())).collect());
        }
        out.push_str(&align(&rows));
        writeln!(out).unwrap();

        for page in &self.pages {
            writeln!(out, "E_{}", page.r).unwrap();
            render_page(&mut out, page);
        }
        writeln!(out, "E_inf = E_{} (stabilized at r={})", self.e_infinity.r, self.stabilized_at).unwrap();
        if self.pages.last().map(|p| p.r) != Some(self.e_infinity.r) {
            render_page(&mut out, &self.e_infinity);
        } else {
            writeln!(out).unwrap();
        }

        writeln!(out, "abutment").unwrap();
        let mut rows = vec![vec!["k".to_string(), "E_inf".into(), "H_total".into()]];
        for r in &self.abutment.rows {
            rows.push(vec![r.degree.to_string(), r.e_infinity.to_string(), r.total_cohomology.to_string()]);
        }
        out.push_str(&align(&rows));
        writeln!(out, "abutment check: {}", if self.abutment.passed { "pass" } else { "FAIL" }).unwrap();
        writeln!(out).unwrap();

        writeln!(out, "E_2 = H(B) (x) H(g) check").unwrap();
        let mut rows = vec![vec![
            "(p,q)".to_string(),
            "H^p(B)".into(),
            "H^q(g)".into(),
            "product".into(),
            "dim E_2".into(),
            "rank F".into(),
            "ok".into(),
        ]];
        for c in &self.e2_check.cells {
            rows.push(vec![
                format!("({},{})", c.p, c.q),
                c.basic_dim.to_string(),
                c.lie_dim.to_string(),
                c.product.to_string(),
                c.e2_dim.to_string(),
                c.rank_f.to_string(),
                if c.isomorphism { "yes" } else { "NO" }.to_string(),
            ]);
        }
        out.push_str(&align(&rows));
        writeln!(
            out,
            "invariant forms represent H(g): {}",
            if self.e2_check.invariants_represent_cohomology { "yes" } else { "NO" }
        )
        .unwrap();
        writeln!(out, "verdict: {}", self.verdict).unwrap();
        writeln!(out).unwrap();

        writeln!(out, "transgression d_2 in tensor bases").unwrap();
        match &self.transgression {
            Ok(blocks) if blocks.is_empty() => writeln!(out, "  zero").unwrap(),
            Ok(blocks) => {
                for b in blocks {
                    let rows: Vec<String> = b.matrix.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                    writeln!(out, "  ({},{}) -> ({},{}): [{}]", b.from.0, b.from.1, b.to.0, b.to.1, rows.join(", "))
                        .unwrap();
                }
            }
            Err(e) => writeln!(out, "  unavailable: {e}").unwrap(),
        }

        if let Some(exp) = &self.expectations {
            writeln!(out).unwrap();
            writeln!(out, "expectations").unwrap();
            for line in exp.to_string().lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
        out
    }
}

fn render_page(out: &mut String, page: &PageSummary) {
    let max_p = page.dims.iter().map(|c| c.p).max().unwrap_or(0);
    let max_q = page.dims.iter().map(|c| c.q).max().unwrap_or(0);
    let mut rows =
        vec![std::iter::once("q\\p".to_string()).chain((0..=max_p).map(|p| p.to_string())).collect::<Vec<_>>()];
    for q in (0..=max_q).rev() {
        let mut row = vec![q.to_string()];
        for p in 0..=max_p {
            let d = page.dims.iter().find(|c| c.p == p && c.q == q).map(|c| c.dim.to_string());
            row.push(d.unwrap_or_else(|| ".".into()));
        }
        rows.push(row);
    }
    out.push_str(&align(&rows));
    if page.dr_ranks.is_empty() {
        writeln!(out, "  d_{} = 0", page.r).unwrap();
    }
    for d in &page.dr_ranks {
        writeln!(out, "  d_{} rank at ({},{}) -> ({},{}): {}", page.r, d.from.0, d.from.1, d.to.0, d.to.1, d.rank)
            .unwrap();
    }
    writeln!(out).unwrap();
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().enumerate().map(|(j, s)| format!("{s:>w$}", w = widths[j])).collect();
        writeln!(out, "  {}", cells.join("  ").trim_end()).unwrap();
    }
    out
}

//! Command implementations. Each returns its output and exit code instead
//! of printing, so they can be tested in-process.

use std::path::Path;

use crate::library::{self, describe, get_model, parse_card_spec, NAMES};
use crate::model::{validate_model, EquivariantModel};
use crate::modelfile::{export_model, load_model};
use crate::pipeline::analyze;
use crate::report::PagesReport;
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Machine,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn load(path: &Path) -> Result<EquivariantModel<Rational>, Outcome> {
    load_model(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

pub fn cmd_validate(path: &Path) -> Outcome {
    let model = match load(path) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let report = validate_model(&model);
    let passed = report.passed();
    let mut stdout = format!("model: {}\n{report}", model.name());
    stdout.push_str(if passed { "valid\n" } else { "INVALID\n" });
    Outcome { code: if passed { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr: String::new() }
}

fn render(report: &PagesReport, format: Format) -> String {
    match format {
        Format::Table => report.to_table(),
        Format::Machine => report.to_json() + "\n",
    }
}

fn run_pages(model: &EquivariantModel<Rational>, max_r: Option<usize>) -> Result<PagesReport, Outcome> {
    analyze(model).map(|a| PagesReport::new(model, &a, max_r)).map_err(|report| Outcome {
        code: EXIT_FAILURE,
        stdout: format!("model: {}\n{report}INVALID\n", model.name()),
        stderr: String::new(),
    })
}

pub fn cmd_pages(path: &Path, max_r: Option<usize>, format: Format) -> Outcome {
    let model = match load(path) {
        Ok(m) => m,
        Err(o) => return o,
    };
    match run_pages(&model, max_r) {
        Ok(report) => {
            let ok = report.e2_check.isomorphism && report.abutment.passed;
            Outcome {
                code: if ok { EXIT_OK } else { EXIT_FAILURE },
                stdout: render(&report, format),
                stderr: String::new(),
            }
        }
        Err(o) => o,
    }
}

pub enum ExamplesAction<'a> {
    List,
    Run(&'a str),
    Export(&'a str),
}

pub fn cmd_examples(action: ExamplesAction<'_>, format: Format) -> Outcome {
    match action {
        ExamplesAction::List => {
            let width = NAMES.iter().map(|n| n.len()).max().unwrap_or(0);
            let stdout = NAMES.iter().map(|n| format!("{n:<width$}  {}\n", describe(n).unwrap_or(""))).collect();
            Outcome::ok(stdout)
        }
        ExamplesAction::Run(spec) => {
            let card = match parse_card_spec(spec).and_then(|(name, p)| get_model(&name, p)) {
                Ok(c) => c,
                Err(e) => return Outcome::usage(e),
            };
            let outcome = match card.run() {
                Ok(o) => o,
                Err(report) => {
                    return Outcome {
                        code: EXIT_FAILURE,
                        stdout: format!("model: {}\n{report}INVALID\n", card.name()),
                        stderr: String::new(),
                    }
                }
            };
            let mut report = PagesReport::new(&card.model, &outcome.analysis, None);
            report.expectations = Some(outcome.expectations.clone());
            let code = if outcome.passed() { EXIT_OK } else { EXIT_FAILURE };
            Outcome { code, stdout: render(&report, format), stderr: String::new() }
        }
        ExamplesAction::Export(spec) => {
            let model = match spec {
                "heisenberg" => library::heisenberg(),
                "mutated_jacobi" => library::mutated_jacobi(),
                _ => match parse_card_spec(spec).and_then(|(name, p)| get_model(&name, p)) {
                    Ok(c) => c.model,
                    Err(e) => return Outcome::usage(e),
                },
            };
            Outcome::ok(export_model(&model) + "\n")
        }
    }
}

//! Subcommand bodies. Each returns what the binary should print and its exit
//! code, so tests can drive them without spawning a process.

use std::path::Path;

use lcilift::classify::{classify_cusp, classify_elliptic, LiftingReport};
use lcilift::cusp::dual_cusp;
use lcilift::lattice::QuadLattice;
use lcilift::resolution::parse_cycle;
use lcilift::{ClassifyError, GraphError, LatticeError};
use num_bigint::BigInt;
use serde::Serialize;

use crate::document::{OverlatticeDocument, ReportDocument, SCHEMA_VERSION};
use crate::{corpus, render, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn graph_code(e: &GraphError) -> i32 {
    match e {
        GraphError::Parse { .. } | GraphError::NonPositiveDegree | GraphError::EmptyCycle => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn classify_code(e: &ClassifyError) -> i32 {
    match e {
        ClassifyError::BadDegree(_) => EXIT_USAGE,
        ClassifyError::Graph(g) => graph_code(g),
        _ => EXIT_DOMAIN,
    }
}

fn emit_report(r: Result<LiftingReport, ClassifyError>, format: Format) -> Outcome {
    match r {
        Ok(r) => {
            let doc = ReportDocument::new(&r);
            Outcome::ok(match format {
                Format::Text => render::report(&doc),
                Format::Json => doc.to_json() + "\n",
            })
        }
        Err(e) => Outcome::fail(classify_code(&e), e),
    }
}

pub fn elliptic(d: i64, format: Format) -> Outcome {
    emit_report(classify_elliptic(d), format)
}

fn cycle_arg(s: &str) -> Result<Vec<u32>, Outcome> {
    parse_cycle(s).map_err(|e| {
        let hint = "cycle entries are positive integers d_i standing for self-intersection -d_i";
        Outcome::fail(EXIT_USAGE, format!("{e} ({hint})"))
    })
}

pub fn cusp(cycle: &str, format: Format) -> Outcome {
    match cycle_arg(cycle) {
        Ok(s) => emit_report(classify_cusp(&s), format),
        Err(o) => o,
    }
}

#[derive(Serialize)]
struct DualDocument<'a> {
    schema_version: &'a str,
    cycle: &'a [u32],
    dual: &'a [u32],
}

pub fn dual(cycle: &str, format: Format) -> Outcome {
    let s = match cycle_arg(cycle) {
        Ok(s) => s,
        Err(o) => return o,
    };
    match dual_cusp(&s) {
        Ok(d) => Outcome::ok(match format {
            Format::Text => {
                d.iter().map(u32::to_string).collect::<Vec<_>>().join(",") + "\n"
            }
            Format::Json => {
                let doc = DualDocument { schema_version: SCHEMA_VERSION, cycle: &s, dual: &d };
                serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
            }
        }),
        Err(e) => Outcome::fail(graph_code(&e), e),
    }
}

/// Runs a corpus file, or the built-in corpus when `path` is `None`.
pub fn corpus(path: Option<&Path>, format: Format) -> Outcome {
    let (source, text) = match path {
        None => ("builtin".to_string(), corpus::BUILTIN.to_string()),
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => (p.display().to_string(), t),
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("cannot read {}: {e}", p.display())),
        },
    };
    let doc = match corpus::run(&source, &text) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("{source}: {e}")),
    };
    let stdout = match format {
        Format::Text => render::corpus(&doc),
        Format::Json => doc.to_json() + "\n",
    };
    let stderr: String = doc.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    let code = if doc.failed > 0 { EXIT_MISMATCH } else { EXIT_OK };
    Outcome { code, stdout, stderr }
}

/// Parses `"a,b;c,d"` (commas or whitespace within a row, `;` between rows).
pub fn parse_rows(s: &str) -> Result<Vec<Vec<BigInt>>, String> {
    s.split(';')
        .map(|row| {
            let row: Vec<BigInt> = row
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|_| format!("{t:?} is not an integer")))
                .collect::<Result<_, _>>()?;
            if row.is_empty() {
                Err(format!("empty row in {s:?}"))
            } else {
                Ok(row)
            }
        })
        .collect()
}

pub fn overlattices(gram: &str, k: &str, max_det: u64, format: Format) -> Outcome {
    let rows = match parse_rows(gram) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("--gram: {e}")),
    };
    let k = match parse_rows(k) {
        Ok(r) if r.len() == 1 => r.into_iter().next().unwrap_or_default(),
        Ok(_) => return Outcome::fail(EXIT_USAGE, "--k: expected a single row"),
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("--k: {e}")),
    };
    let lattice = lcilift::algebra::IntMatrix::from_rows(&rows)
        .map_err(LatticeError::from)
        .and_then(|g| QuadLattice::new(g, k));
    let result = lattice.and_then(|l| {
        let dqf = l.dqf()?;
        let ov = l.overlattices(max_det)?;
        Ok(OverlatticeDocument::new(&l, &dqf, &ov))
    });
    match result {
        Ok(doc) => Outcome::ok(match format {
            Format::Text => render::overlattices(&doc),
            Format::Json => doc.to_json() + "\n",
        }),
        Err(e @ LatticeError::BoundExceeded { .. }) => {
            Outcome::fail(EXIT_USAGE, format!("{e}; raise it with --max-det"))
        }
        Err(e) => Outcome::fail(EXIT_DOMAIN, e),
    }
}

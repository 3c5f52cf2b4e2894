//! Golden corpora: one graph per line with expected report fields.
//!
//! ```text
//! # comment
//! elliptic:d=8 ; lifting=cover, group_order=2, cover=elliptic:d=4, total_components=5
//! cusp:2,2 ; error=artin
//! ```
//!
//! Values may contain commas (`cover=cusp:3,2,2`): a comma only starts a new
//! field when the next token has the form `name=`.

use std::collections::BTreeMap;

use lcilift::classify::{classify_cusp, classify_elliptic, Lifting, TotalComponents, Verdict};
use lcilift::resolution::ResolutionGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{ReportDocument, SCHEMA_VERSION};

pub const BUILTIN: &str = include_str!("../corpus/builtin.txt");

pub const FIELDS: &[&str] = &[
    "lifting",
    "group_order",
    "cover",
    "degree",
    "total_components",
    "torsion",
    "perp_orders",
    "mu0",
    "mu_plus",
    "mu_minus",
    "emb_dim",
    "lci",
    "dual",
    "trace",
    "error",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct CorpusError {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub graph: ResolutionGraph,
    pub expected: BTreeMap<String, String>,
}

fn split_fields(s: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for tok in s.split(',') {
        let starts_field = tok
            .split_once('=')
            .is_some_and(|(k, _)| !k.trim().is_empty() && k.trim().chars().all(|c| c.is_ascii_alphanumeric() || c == '_'));
        match out.last_mut() {
            Some(last) if !starts_field => {
                last.push(',');
                last.push_str(tok);
            }
            _ => out.push(tok.to_string()),
        }
    }
    out
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase()
}

pub fn parse(text: &str) -> Result<Vec<Entry>, CorpusError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |reason: String| CorpusError { line, reason };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (graph, fields) = content
            .split_once(';')
            .ok_or_else(|| err("expected `<graph> ; field=value, ...`".into()))?;
        let graph: ResolutionGraph = graph.trim().parse().map_err(|e| err(format!("{e}")))?;
        let mut expected = BTreeMap::new();
        if !fields.trim().is_empty() {
            for f in split_fields(fields) {
                let (k, v) = f
                    .split_once('=')
                    .ok_or_else(|| err(format!("field {:?} has no `=`", f.trim())))?;
                let k = k.trim();
                if !FIELDS.contains(&k) {
                    return Err(err(format!("unknown field {k:?}")));
                }
                let v = normalize(v);
                if v.is_empty() {
                    return Err(err(format!("field {k:?} has an empty value")));
                }
                if expected.insert(k.to_string(), v).is_some() {
                    return Err(err(format!("field {k:?} given twice")));
                }
            }
        }
        entries.push(Entry { line, graph, expected });
    }
    Ok(entries)
}

fn cycle(s: &[u32]) -> String {
    s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// The value of a corpus field as read off a report document.
pub fn field(doc: &ReportDocument, name: &str) -> String {
    let dash = || "-".to_string();
    let v = match name {
        "lifting" => match &doc.lifting {
            Lifting::Trivial => "trivial".into(),
            Lifting::Cover { .. } => "cover".into(),
            Lifting::CoverByHypothesis { .. } => "cover_by_hypothesis".into(),
            Lifting::None { .. } => "none".into(),
            Lifting::NotSmoothable => "not_smoothable".into(),
        },
        "group_order" => match &doc.lifting {
            Lifting::Cover { group_order, .. } | Lifting::CoverByHypothesis { group_order, .. } => {
                group_order.to_string()
            }
            _ => dash(),
        },
        "cover" => match &doc.lifting {
            Lifting::Cover { cover, .. } => cover.to_string(),
            _ => dash(),
        },
        "degree" => match &doc.lifting {
            Lifting::Cover { degree, .. } => degree.to_string(),
            _ => dash(),
        },
        "total_components" => match doc.total_components {
            TotalComponents::Count(n) => n.to_string(),
            TotalComponents::Unknown => "unknown".into(),
        },
        "torsion" => match &doc.cusp {
            Some(c) => c.torsion.torsion_display(),
            None => doc.link.homology.torsion_display(),
        },
        "perp_orders" => {
            let v: Vec<String> = doc
                .isotropic
                .iter()
                .filter(|s| s.verdict == Verdict::Permissible && s.subgroup.order > 1)
                .map(|s| s.perp.order.to_string())
                .collect();
            if v.is_empty() {
                dash()
            } else {
                v.join(",")
            }
        }
        "mu0" => doc.milnor.map_or_else(dash, |m| m.mu0.to_string()),
        "mu_plus" => doc.milnor.map_or_else(dash, |m| m.mu_plus.to_string()),
        "mu_minus" => doc.milnor.map_or_else(dash, |m| m.mu_minus.to_string()),
        "emb_dim" => doc.invariants.emb_dim.to_string(),
        "lci" => doc.invariants.is_lci.to_string(),
        "dual" => doc.cusp.as_ref().and_then(|c| c.dual.as_deref()).map_or_else(dash, cycle),
        "trace" => doc.cusp.as_ref().map_or_else(dash, |c| c.trace.clone()),
        _ => dash(),
    };
    normalize(&v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub line: usize,
    pub input: String,
    pub passed: bool,
    pub error: Option<String>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDocument {
    pub schema_version: String,
    pub source: String,
    pub entries: Vec<EntryResult>,
    pub passed: usize,
    pub failed: usize,
    pub warnings: Vec<String>,
}

impl CorpusDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub fn report_for(graph: &ResolutionGraph) -> Result<ReportDocument, String> {
    let r = match graph {
        ResolutionGraph::SimpleElliptic { d } => classify_elliptic(i64::from(*d)),
        ResolutionGraph::CuspCycle { seq } => classify_cusp(seq),
    };
    r.map(|r| ReportDocument::new(&r)).map_err(|e| e.to_string())
}

pub fn evaluate(entry: &Entry) -> EntryResult {
    let mut mismatches = Vec::new();
    let mut error = None;
    match report_for(&entry.graph) {
        Ok(doc) => {
            for (k, want) in &entry.expected {
                let got = if k == "error" { "none".to_string() } else { field(&doc, k) };
                if &got != want {
                    mismatches.push(Mismatch { field: k.clone(), expected: want.clone(), actual: got });
                }
            }
        }
        Err(e) => {
            let matched = entry
                .expected
                .get("error")
                .is_some_and(|want| normalize(&e).contains(want.as_str()));
            if !matched {
                mismatches.push(Mismatch {
                    field: "error".into(),
                    expected: entry.expected.get("error").cloned().unwrap_or_else(|| "none".into()),
                    actual: e.clone(),
                });
            }
            error = Some(e);
        }
    }
    EntryResult {
        line: entry.line,
        input: entry.graph.to_string(),
        passed: mismatches.is_empty(),
        error,
        mismatches,
    }
}

/// Evaluates all entries concurrently; results keep input order.
pub fn run(source: &str, text: &str) -> Result<CorpusDocument, CorpusError> {
    let entries = parse(text)?;
    let results: Vec<EntryResult> = entries.par_iter().map(evaluate).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    let mut warnings = Vec::new();
    if results.is_empty() {
        warnings.push(format!("{source}: corpus has no entries"));
    }
    Ok(CorpusDocument {
        schema_version: SCHEMA_VERSION.into(),
        source: source.into(),
        failed: results.len() - passed,
        passed,
        entries: results,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_with_commas() {
        let f = split_fields(" cover=cusp:3,2,2, degree=3,lifting=none");
        assert_eq!(f, vec![" cover=cusp:3,2,2", " degree=3", "lifting=none"]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse("# header\n\nelliptic:d=8 ; lifting=cover\nelliptic:d=8 lifting=cover\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(parse("cusp:3,3 ; colour=red").unwrap_err().line, 1);
        assert_eq!(parse("cusp:x ; lifting=none").unwrap_err().line, 1);
        assert_eq!(parse("cusp:3 ; lifting=").unwrap_err().line, 1);
        assert_eq!(parse("cusp:3 ; lci=true, lci=false").unwrap_err().line, 1);
    }

    #[test]
    fn builtin_passes() {
        let doc = run("builtin", BUILTIN).unwrap();
        assert!(doc.entries.len() >= 12);
        assert_eq!(doc.failed, 0, "{doc:#?}");
    }

    #[test]
    fn mismatch_and_errors() {
        let doc = run("t", "elliptic:d=8 ; total_components=6\ncusp:2,2 ; error=artin\ncusp:2,2 ; lci=false\n").unwrap();
        let passed: Vec<bool> = doc.entries.iter().map(|e| e.passed).collect();
        assert_eq!(passed, vec![false, true, false]);
        assert_eq!(doc.entries[0].mismatches[0].actual, "5");
    }

    #[test]
    fn empty_corpus_warns() {
        let doc = run("t", "# nothing\n").unwrap();
        assert_eq!((doc.passed, doc.failed), (0, 0));
        assert_eq!(doc.warnings.len(), 1);
    }
}

//! Plain-text rendering of report documents.

use std::fmt::Write;

use lcilift::classify::{Lifting, TotalComponents, Verdict};
use lcilift::cusp::CoverRoute;

use crate::corpus::CorpusDocument;
use crate::document::{OverlatticeDocument, QuadFunctionDoc, ReportDocument, SubgroupDoc};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cycle(s: &[u32]) -> String {
    s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn gens(s: &SubgroupDoc) -> String {
    let g: Vec<String> = s
        .generators
        .iter()
        .map(|v| format!("({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("<{}>", g.join(", "))
}

fn form_line(f: &QuadFunctionDoc) -> String {
    if f.torsion.is_empty() {
        return "trivial".into();
    }
    format!(
        "on {}: q(gens) = [{}], b = [{}]",
        f.torsion.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + "),
        f.q_generators.join(", "),
        f.b_matrix.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("; ")
    )
}

pub fn report(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let i = &doc.invariants;
    let _ = writeln!(out, "graph: {}", doc.input);
    let _ = writeln!(
        out,
        "invariants: g={} m={} b1={} b2={} chi={} K^2={} emb_dim={} p={} lci={} smoothable(necessary)={}",
        i.g,
        i.m,
        i.b1,
        i.b2,
        i.chi,
        i.k_sq,
        i.emb_dim,
        i.p,
        yes(i.is_lci),
        yes(i.smoothable_necessary)
    );
    match &doc.milnor {
        Some(m) => {
            let _ = writeln!(out, "milnor fibre: mu0={} mu+={} mu-={}", m.mu0, m.mu_plus, m.mu_minus);
        }
        None => {
            let _ = writeln!(out, "milnor fibre: none (not smoothable)");
        }
    }
    let _ = writeln!(out, "link H1: {}", doc.link.homology.display());
    if let Some(f) = &doc.link.form {
        let _ = writeln!(out, "linking quadratic function: {}", form_line(f));
    }
    if let Some(c) = &doc.cusp {
        let m: Vec<String> = c.monodromy.iter().map(|r| r.join(" ")).collect();
        let _ = writeln!(out, "monodromy: [{}], trace {}", m.join("; "), c.trace);
        let _ = writeln!(out, "torsion: {}", c.torsion.display());
        match &c.dual {
            Some(d) => {
                let _ = writeln!(out, "dual cycle: {}", cycle(d));
            }
            None => {
                let _ = writeln!(out, "dual cycle: unavailable");
            }
        }
        let route = match c.lci_cover.route {
            CoverRoute::Direct => "direct",
            CoverRoute::ViaDual => "via dual",
        };
        let _ = writeln!(
            out,
            "lci cover: Z/{} -> cycle {} ({route})",
            c.lci_cover.group_order,
            cycle(&c.lci_cover.cover)
        );
        let _ = writeln!(
            out,
            "cover balance holds: {}, pi1 bound holds: {}",
            yes(c.permissible_equality),
            yes(c.pi1_constraint_ok)
        );
    }
    if !doc.isotropic.is_empty() {
        let _ = writeln!(out, "isotropic subgroups:");
        for s in &doc.isotropic {
            let verdict = match &s.verdict {
                Verdict::Permissible => "permissible".to_string(),
                Verdict::Impermissible(why) => format!("impermissible ({why})"),
                Verdict::CandidateUnresolved => "unresolved".to_string(),
            };
            let _ = write!(
                out,
                "  |I|={} {} |I^perp|={} cover group order {}",
                s.subgroup.order,
                gens(&s.subgroup),
                s.perp.order,
                s.cover_group_order
            );
            if let Some(c) = &s.cover {
                let _ = write!(out, " cover {c}");
            }
            if let Some(n) = s.component_count {
                let _ = write!(out, " components {n}");
            }
            let _ = writeln!(out, ": {verdict}");
        }
    }
    let lifting = match &doc.lifting {
        Lifting::Trivial => "trivial (already lci)".to_string(),
        Lifting::Cover { group_order, cover, degree } => {
            format!("cover by a group of order {group_order}, cover {cover} (degree {degree})")
        }
        Lifting::CoverByHypothesis { group_order, note } => {
            format!("cover by a group of order {group_order} ({note})")
        }
        Lifting::None { diagnostics } => format!("none ({})", diagnostics.join("; ")),
        Lifting::NotSmoothable => "not smoothable".to_string(),
    };
    let _ = writeln!(out, "lci smoothing lifting: {lifting}");
    let total = match doc.total_components {
        TotalComponents::Count(n) => n.to_string(),
        TotalComponents::Unknown => "unknown".into(),
    };
    let _ = writeln!(out, "smoothing components: {total}");
    if !doc.notes.is_empty() {
        let _ = writeln!(out, "notes:");
        for n in &doc.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    out
}

pub fn overlattices(doc: &OverlatticeDocument) -> String {
    let mut out = String::new();
    let rows: Vec<String> = doc.lattice.gram.iter().map(|r| r.join(" ")).collect();
    let _ = writeln!(out, "gram: [{}], K: [{}]", rows.join("; "), doc.lattice.k.join(" "));
    let _ = writeln!(out, "det: {}, negative definite: {}", doc.det, yes(doc.negative_definite));
    let _ = writeln!(out, "discriminant: {}", form_line(&doc.discriminant));
    let _ = writeln!(out, "overlattices: {}", doc.overlattices.len());
    for o in &doc.overlattices {
        let basis: Vec<String> = o.basis.iter().map(|v| format!("({})", v.join(", "))).collect();
        let gram: Vec<String> = o.lattice.gram.iter().map(|r| r.join(" ")).collect();
        let _ = writeln!(
            out,
            "  index {} subgroup {} basis {} gram [{}] K [{}]",
            o.index,
            gens(&o.subgroup),
            basis.join(" "),
            gram.join("; "),
            o.lattice.k.join(" ")
        );
    }
    out
}

pub fn corpus(doc: &CorpusDocument) -> String {
    let mut out = String::new();
    for e in &doc.entries {
        let status = if e.passed { "PASS" } else { "FAIL" };
        let _ = write!(out, "{status} line {}: {}", e.line, e.input);
        if let Some(err) = &e.error {
            let _ = write!(out, " (error: {err})");
        }
        for m in &e.mismatches {
            let _ = write!(out, "; {} expected {}, got {}", m.field, m.expected, m.actual);
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "{}: {} entries, {} passed, {} failed",
        doc.source,
        doc.entries.len(),
        doc.passed,
        doc.failed
    );
    out
}

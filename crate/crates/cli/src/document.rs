//! Serializable report documents.
//!
//! Every document is plain data: groups are invariant factors, subgroups are
//! generator coordinate lists, exact numbers are decimal strings. Text output
//! is rendered from these documents only.

use lcilift::algebra::QmodZ;
use lcilift::classify::{
    Lifting, LiftingReport, MilnorInvariants, SmoothingDatum, TotalComponents, Verdict,
};
use lcilift::cusp::LciCover;
use lcilift::finite::{FinAbGroup, FinQuadFunction, Subgroup};
use lcilift::lattice::{Dqf, Overlattice, QuadLattice};
use lcilift::resolution::{ResolutionGraph, ResolutionInvariants};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupDoc {
    pub fn new(g: &FinAbGroup) -> Self {
        GroupDoc {
            free_rank: g.free_rank(),
            torsion: g.torsion_invariants().to_vec(),
        }
    }

    /// `Z^2 + Z/8`, `Z/5`, `0`.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn torsion_display(&self) -> String {
        GroupDoc { free_rank: 0, torsion: self.torsion.clone() }.display()
    }
}

/// A quadratic function on a finite group: values on the generators and the
/// bilinear matrix, all in ℚ/ℤ written as reduced fractions in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFunctionDoc {
    pub torsion: Vec<u64>,
    pub q_generators: Vec<String>,
    pub b_matrix: Vec<Vec<String>>,
}

fn qz(v: &QmodZ) -> String {
    v.to_string()
}

impl QuadFunctionDoc {
    pub fn new(f: &FinQuadFunction) -> Self {
        QuadFunctionDoc {
            torsion: f.group().torsion_invariants().to_vec(),
            q_generators: f.generator_values().iter().map(qz).collect(),
            b_matrix: f
                .bilinear_matrix()
                .iter()
                .map(|row| row.iter().map(qz).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub order: u64,
    /// Torsion coordinates of a generating set, in the ambient invariant-factor basis.
    pub generators: Vec<Vec<u64>>,
}

impl SubgroupDoc {
    pub fn new(s: &Subgroup) -> Self {
        SubgroupDoc {
            order: s.order(),
            generators: s.generators().iter().map(|g| g.torsion_coords().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicDoc {
    pub subgroup: SubgroupDoc,
    pub perp: SubgroupDoc,
    pub induced: QuadFunctionDoc,
    pub cover_group_order: u64,
    pub component_count: Option<u64>,
    pub cover: Option<ResolutionGraph>,
    pub verdict: Verdict,
}

impl IsotropicDoc {
    fn new(s: &SmoothingDatum) -> Self {
        IsotropicDoc {
            subgroup: SubgroupDoc::new(&s.isotropic),
            perp: SubgroupDoc::new(&s.perp),
            induced: QuadFunctionDoc::new(&s.induced),
            cover_group_order: s.cover_group_order,
            component_count: s.component_count,
            cover: s.cover.clone(),
            verdict: s.verdict.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDoc {
    pub homology: GroupDoc,
    pub form: Option<QuadFunctionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspDoc {
    /// Rows of the monodromy matrix.
    pub monodromy: Vec<Vec<String>>,
    pub trace: String,
    pub torsion: GroupDoc,
    pub dual: Option<Vec<u32>>,
    pub lci_cover: LciCover,
    pub permissible_equality: bool,
    pub pi1_constraint_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub input: String,
    pub graph: ResolutionGraph,
    pub invariants: ResolutionInvariants,
    pub milnor: Option<MilnorInvariants>,
    pub link: LinkDoc,
    pub isotropic: Vec<IsotropicDoc>,
    pub lifting: Lifting,
    pub total_components: TotalComponents,
    pub cusp: Option<CuspDoc>,
    /// Caveats and statements that rest on unverified hypotheses.
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(r: &LiftingReport) -> Self {
        let cusp = r.cusp.as_ref().map(|c| CuspDoc {
            monodromy: c
                .monodromy
                .matrix
                .to_rows()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
            trace: c.monodromy.trace.to_string(),
            torsion: GroupDoc::new(&c.torsion),
            dual: c.dual.clone(),
            lci_cover: c.lci_cover.clone(),
            permissible_equality: c.permissible_equality,
            pi1_constraint_ok: c.pi1_constraint_ok,
        });
        ReportDocument {
            schema_version: SCHEMA_VERSION.into(),
            input: r.graph.to_string(),
            graph: r.graph.clone(),
            invariants: r.invariants.clone(),
            milnor: r.milnor,
            link: LinkDoc {
                homology: GroupDoc::new(&r.link.group),
                form: r.link.form.as_ref().map(QuadFunctionDoc::new),
            },
            isotropic: r.permissible_data.iter().map(IsotropicDoc::new).collect(),
            lifting: r.lifting.clone(),
            total_components: r.total_components,
            cusp,
            notes: r.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub gram: Vec<Vec<String>>,
    pub k: Vec<String>,
}

impl LatticeDoc {
    pub fn new(l: &QuadLattice) -> Self {
        LatticeDoc {
            gram: l
                .gram()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            k: l.char_form().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlatticeDoc {
    pub index: u64,
    /// The isotropic subgroup `N₁/N` of the discriminant group.
    pub subgroup: SubgroupDoc,
    /// Basis of `N₁` in coordinates of the original lattice.
    pub basis: Vec<Vec<String>>,
    /// Gram matrix and characteristic form in that basis.
    pub lattice: LatticeDoc,
}

impl OverlatticeDoc {
    fn new(o: &Overlattice) -> Self {
        OverlatticeDoc {
            index: o.index,
            subgroup: SubgroupDoc::new(&o.subgroup),
            basis: o
                .basis
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect(),
            lattice: LatticeDoc::new(&o.lattice),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlatticeDocument {
    pub schema_version: String,
    pub lattice: LatticeDoc,
    pub det: String,
    pub negative_definite: bool,
    pub discriminant: QuadFunctionDoc,
    pub overlattices: Vec<OverlatticeDoc>,
}

impl OverlatticeDocument {
    pub fn new(l: &QuadLattice, dqf: &Dqf, overlattices: &[Overlattice]) -> Self {
        OverlatticeDocument {
            schema_version: SCHEMA_VERSION.into(),
            lattice: LatticeDoc::new(l),
            det: l.det().to_string(),
            negative_definite: l.is_negative_definite(),
            discriminant: QuadFunctionDoc::new(&dqf.form),
            overlattices: overlattices.iter().map(OverlatticeDoc::new).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

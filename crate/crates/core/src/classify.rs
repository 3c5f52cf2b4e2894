//! Milnor-fiber invariants, permissibility of covers, smoothing-component
//! counts and lci smoothing liftings.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cusp::{dual_cusp, lci_cover, link_torsion, monodromy, CuspMonodromy, LciCover};
use crate::error::{ClassifyError, GroupError};
use crate::finite::{FinAbGroup, FinQuadFunction, Subgroup};
use crate::resolution::{ResolutionGraph, ResolutionInvariants};

/// Sylvester invariants `(μ₀, μ₊, μ₋)` of the Milnor lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorInvariants {
    pub mu0: i64,
    pub mu_plus: i64,
    pub mu_minus: i64,
}

/// `(μ₀, μ₊, μ₋)` with `μ₀ = b₁`, `μ₊ = 2p − μ₀`, `μ₋ = 10p + K² − b₁ + b₂`.
pub fn milnor_invariants(g: &ResolutionGraph) -> Result<MilnorInvariants, ClassifyError> {
    let inv = g.invariants()?;
    let p = inv.p as i64;
    let mu0 = inv.b1 as i64;
    let mu_minus = 10 * p + inv.k_sq - inv.b1 as i64 + inv.b2 as i64;
    if !inv.smoothable_necessary || mu_minus < 0 {
        return Err(ClassifyError::NotSmoothable(mu_minus));
    }
    Ok(MilnorInvariants {
        mu0,
        mu_plus: 2 * p - mu0,
        mu_minus,
    })
}

/// `χ + K² + 12p`, the quantity multiplied by the degree under a cover.
pub fn permissibility_lhs(g: &ResolutionGraph) -> Result<i64, ClassifyError> {
    let inv = g.invariants()?;
    Ok(inv.chi + inv.k_sq + 12 * inv.p as i64)
}

/// Whether a degree-`n` cover `Y → X` balances `n·lhs(X) = lhs(Y)`.
pub fn check_cover_permissible(
    x: &ResolutionGraph,
    y: &ResolutionGraph,
    n: u64,
) -> Result<bool, ClassifyError> {
    let lx = permissibility_lhs(x)? as i128;
    let ly = permissibility_lhs(y)? as i128;
    Ok(n as i128 * lx == ly)
}

/// `Σ |I|^μ₀` over the given subgroups.
pub fn count_components(g: &ResolutionGraph, subgroups: &[Subgroup]) -> Result<u64, ClassifyError> {
    let mu0 = milnor_invariants(g)?.mu0 as u32;
    subgroups
        .iter()
        .try_fold(0u64, |acc, s| s.order().checked_pow(mu0).and_then(|c| acc.checked_add(c)))
        .ok_or(ClassifyError::Group(GroupError::DenominatorOverflow))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Permissible,
    Impermissible(String),
    /// Isotropic, but the resolution of the corresponding cover is unknown.
    CandidateUnresolved,
}

/// One isotropic subgroup `I` of the link torsion and what it induces.
#[derive(Clone, Debug)]
pub struct SmoothingDatum {
    pub isotropic: Subgroup,
    pub perp: Subgroup,
    /// `q_I` on `I^⊥ / I`.
    pub induced: FinQuadFunction,
    /// `|torsion / I^⊥|`.
    pub cover_group_order: u64,
    /// `|I|^μ₀`, or `None` when μ₀ is undefined.
    pub component_count: Option<u64>,
    /// The forced cover, when it is determined.
    pub cover: Option<ResolutionGraph>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lifting {
    /// The singularity is itself lci.
    Trivial,
    Cover {
        group_order: u64,
        cover: ResolutionGraph,
        degree: u64,
    },
    /// Recorded from a user-supplied hypothesis, not from a graph.
    CoverByHypothesis { group_order: u64, note: String },
    None { diagnostics: Vec<String> },
    NotSmoothable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TotalComponents {
    Count(u64),
    Unknown,
}

/// `H₁` of the link and, when available, the quadratic function on its torsion.
#[derive(Clone, Debug)]
pub struct LinkData {
    pub group: FinAbGroup,
    pub form: Option<FinQuadFunction>,
}

/// Cusp-only data.
#[derive(Clone, Debug)]
pub struct CuspData {
    pub monodromy: CuspMonodromy,
    pub torsion: FinAbGroup,
    pub dual: Option<Vec<u32>>,
    pub lci_cover: LciCover,
    pub permissible_equality: bool,
    pub pi1_constraint_ok: bool,
}

#[derive(Clone, Debug)]
pub struct LiftingReport {
    pub graph: ResolutionGraph,
    pub invariants: ResolutionInvariants,
    pub milnor: Option<MilnorInvariants>,
    pub link: LinkData,
    pub permissible_data: Vec<SmoothingDatum>,
    pub lifting: Lifting,
    pub total_components: TotalComponents,
    pub cusp: Option<CuspData>,
    pub notes: Vec<String>,
}

impl LiftingReport {
    pub fn permissible(&self) -> impl Iterator<Item = &SmoothingDatum> {
        self.permissible_data
            .iter()
            .filter(|s| s.verdict == Verdict::Permissible)
    }
}

fn datum(
    form: &FinQuadFunction,
    i: Subgroup,
    mu0: Option<i64>,
) -> Result<(SmoothingDatum, u64), GroupError> {
    let induced = form.induced_form(&i)?;
    let total = form.group().enumerable_order()?;
    let n = total / induced.perp.order();
    let count = mu0.and_then(|m| i.order().checked_pow(m as u32));
    Ok((
        SmoothingDatum {
            isotropic: i,
            perp: induced.perp,
            induced: induced.form,
            cover_group_order: n,
            component_count: count,
            cover: None,
            verdict: Verdict::CandidateUnresolved,
        },
        n,
    ))
}

/// Classifies the simple elliptic singularity of degree `d`.
pub fn classify_elliptic(d: i64) -> Result<LiftingReport, ClassifyError> {
    let du = u32::try_from(d).ok().filter(|&d| d >= 1).ok_or(ClassifyError::BadDegree(d))?;
    let graph = ResolutionGraph::elliptic(du)?;
    let invariants = graph.invariants()?;
    let (h1, form) = graph.link_homology()?;
    let link = LinkData {
        group: h1,
        form: Some(form.clone()),
    };
    let mut notes = Vec::new();

    let milnor = match milnor_invariants(&graph) {
        Ok(m) => m,
        Err(ClassifyError::NotSmoothable(mu)) => {
            notes.push(format!("mu_minus = {mu} < 0: no smoothing exists"));
            return Ok(LiftingReport {
                graph,
                invariants,
                milnor: None,
                link,
                permissible_data: Vec::new(),
                lifting: Lifting::NotSmoothable,
                total_components: TotalComponents::Count(0),
                cusp: None,
                notes,
            });
        }
        Err(e) => return Err(e),
    };

    let lhs_x = permissibility_lhs(&graph)?;
    let mut data = Vec::new();
    for i in form.isotropic_subgroups()? {
        let (mut s, n) = datum(&form, i, Some(milnor.mu0))?;
        // n·lhs(X) = 12 − d_Y, since χ = 0 and K² = −d_Y on the cover
        let d_y = 12 - n as i64 * lhs_x;
        s.verdict = if d_y < 1 {
            Verdict::Impermissible(format!(
                "a degree-{n} cover would need elliptic degree {d_y} < 1"
            ))
        } else {
            let y = ResolutionGraph::elliptic(d_y as u32)?;
            let balanced = check_cover_permissible(&graph, &y, n)?;
            s.cover = Some(y);
            if !balanced {
                Verdict::Impermissible("cover formula fails".into())
            } else if milnor.mu_minus == 0 && s.perp != s.isotropic {
                Verdict::Impermissible(
                    "mu_minus = 0 requires I^perp = I (the Milnor lattice has no negative part)".into(),
                )
            } else {
                Verdict::Permissible
            }
        };
        data.push(s);
    }

    let lifting = if invariants.is_lci {
        Lifting::Trivial
    } else {
        let lci_cover = data.iter().find_map(|s| match (&s.verdict, &s.cover) {
            (Verdict::Permissible, Some(y @ ResolutionGraph::SimpleElliptic { d }))
                if !s.isotropic.is_trivial() && *d <= 4 =>
            {
                Some((s.cover_group_order, y.clone()))
            }
            _ => None,
        });
        match lci_cover {
            Some((n, y)) => Lifting::Cover {
                group_order: n,
                cover: y,
                degree: n,
            },
            None => {
                let nontrivial = data.iter().filter(|s| !s.isotropic.is_trivial()).count();
                let msg = if nontrivial == 0 {
                    "no nontrivial q-isotropic subgroup of the link torsion".to_string()
                } else {
                    format!("none of the {nontrivial} nontrivial isotropic subgroups gives a permissible lci cover")
                };
                Lifting::None { diagnostics: vec![msg] }
            }
        }
    };

    let permissible: Vec<Subgroup> = data
        .iter()
        .filter(|s| s.verdict == Verdict::Permissible)
        .map(|s| s.isotropic.clone())
        .collect();
    let total = count_components(&graph, &permissible)?;

    for s in data.iter().filter(|s| s.verdict == Verdict::Permissible && !s.isotropic.is_trivial()) {
        let quotient_by_i = form.group().enumerable_order()? / s.isotropic.order();
        if quotient_by_i != s.cover_group_order {
            notes.push(format!(
                "cover group for |I| = {} is torsion / I^perp of order {}; torsion / I has order {} and is not used",
                s.isotropic.order(),
                s.cover_group_order,
                quotient_by_i
            ));
        }
    }
    if milnor.mu_minus > 0 && !permissible.is_empty() {
        notes.push(
            "trivial I is taken as permissible without checking that an even negative definite lattice \
             of rank mu_minus with the required discriminant form exists"
                .into(),
        );
    }
    if du <= 7 {
        notes.push("component count assumes each permissible I is realized by exactly one smoothing component; not independently established for d <= 7".into());
    }

    Ok(LiftingReport {
        graph,
        invariants,
        milnor: Some(milnor),
        link,
        permissible_data: data,
        lifting,
        total_components: TotalComponents::Count(total),
        cusp: None,
        notes,
    })
}

/// Classifies the cusp with cycle `seq` (positive entries).
pub fn classify_cusp(seq: &[u32]) -> Result<LiftingReport, ClassifyError> {
    let graph = ResolutionGraph::cusp(seq.to_vec())?;
    let invariants = graph.invariants()?;
    let mono = monodromy(seq)?;
    let torsion = link_torsion(seq)?;
    let dual = dual_cusp(seq).ok();
    let cover = lci_cover(seq)?;
    let mut notes = Vec::new();

    let link = if seq.len() == 1 {
        notes.push("one-curve cycle: torsion computed from the monodromy; no quadratic function available".into());
        LinkData {
            group: FinAbGroup::new(invariants.b1 as usize, torsion.torsion_invariants().to_vec())?,
            form: None,
        }
    } else {
        let (group, form) = graph.link_homology()?;
        LinkData { group, form: Some(form) }
    };
    if !cover.a_nonneg {
        notes.push(format!(
            "monodromy entry a = {} < 0: the Z_{} cover is reached through the dual cusp; its group order is conditional",
            mono.a, cover.group_order
        ));
    }

    let cover_graph = ResolutionGraph::cusp(cover.cover.clone())?;
    let milnor = match milnor_invariants(&graph) {
        Ok(m) => Some(m),
        Err(ClassifyError::NotSmoothable(mu)) => {
            notes.push(format!("mu_minus = {mu} < 0: no smoothing exists"));
            None
        }
        Err(e) => return Err(e),
    };
    let permissible_equality = match milnor {
        Some(_) => check_cover_permissible(&graph, &cover_graph, cover.group_order)?,
        None => false,
    };
    let t = mono.trace.to_u64().unwrap_or(u64::MAX);
    let pi1_constraint_ok = invariants.emb_dim >= 9 || (invariants.emb_dim == 8 && t <= 2);

    let mut data = Vec::new();
    if let (Some(form), Some(m)) = (&link.form, milnor) {
        match form.isotropic_subgroups() {
            Ok(list) => {
                for i in list {
                    let (mut s, _) = datum(form, i, Some(m.mu0))?;
                    if s.isotropic.is_trivial() {
                        s.cover = Some(graph.clone());
                        s.verdict = if m.mu_minus == 0 && s.perp != s.isotropic {
                            Verdict::Impermissible("mu_minus = 0 requires I^perp = I".into())
                        } else {
                            Verdict::Permissible
                        };
                    }
                    data.push(s);
                }
            }
            Err(GroupError::TooLarge { order, .. }) => {
                notes.push(format!("isotropic subgroups not enumerated: torsion order {order} too large"));
            }
            Err(e) => return Err(e.into()),
        }
    }

    let lifting = if milnor.is_none() {
        Lifting::NotSmoothable
    } else if invariants.is_lci {
        Lifting::Trivial
    } else if invariants.emb_dim <= 7 {
        Lifting::None {
            diagnostics: vec![format!(
                "emb_dim = {} <= 7 forces pi1(M) trivial",
                invariants.emb_dim
            )],
        }
    } else if permissible_equality && pi1_constraint_ok {
        Lifting::Cover {
            group_order: cover.group_order,
            cover: cover_graph.clone(),
            degree: cover.group_order,
        }
    } else {
        let mut diagnostics = Vec::new();
        if !permissible_equality {
            diagnostics.push(format!(
                "cover formula fails: {} * {} != {}",
                cover.group_order,
                permissibility_lhs(&graph)?,
                permissibility_lhs(&cover_graph)?
            ));
        }
        if !pi1_constraint_ok {
            diagnostics.push(format!(
                "emb_dim = {} allows |pi1(M)| <= 2 but the cover group has order {}",
                invariants.emb_dim, cover.group_order
            ));
        }
        Lifting::None { diagnostics }
    };

    let total_components = if milnor.is_none() {
        TotalComponents::Count(0)
    } else {
        TotalComponents::Unknown
    };

    Ok(LiftingReport {
        graph,
        invariants,
        milnor,
        link,
        permissible_data: data,
        lifting,
        total_components,
        cusp: Some(CuspData {
            monodromy: mono,
            torsion,
            dual,
            lci_cover: cover,
            permissible_equality,
            pi1_constraint_ok,
        }),
        notes,
    })
}

/// Lifting for a singularity known only through a finite `H₁` of its link,
/// under the hypothesis `π₁(M) = H₁(L)`: the universal abelian cover.
pub fn lifting_by_hypothesis(h1: &FinAbGroup, pi1_equals_h1: bool) -> Result<Lifting, ClassifyError> {
    if !h1.is_finite() {
        return Err(GroupError::NotFinite(h1.free_rank()).into());
    }
    if !pi1_equals_h1 {
        return Ok(Lifting::None {
            diagnostics: vec!["no hypothesis on pi1(M) supplied".into()],
        });
    }
    let order = h1.enumerable_order()?;
    Ok(Lifting::CoverByHypothesis {
        group_order: order,
        note: "universal abelian cover, assuming pi1(M) = H1(L)".into(),
    })
}

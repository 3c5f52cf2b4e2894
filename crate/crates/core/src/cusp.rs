//! Cusp arithmetic: monodromy, link torsion, dual cycles and the lci cover.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;
use crate::error::GraphError;
use crate::finite::FinAbGroup;

/// Largest trace for which [`lci_cover`] writes out the cover cycle.
pub const MAX_COVER_TRACE: u64 = 1 << 20;

/// The monodromy `A = M(d_r) ⋯ M(d_1)` with `M(d) = [[0, −1], [1, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspMonodromy {
    pub matrix: IntMatrix,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub trace: BigInt,
}

fn check_entries(seq: &[u32]) -> Result<(), GraphError> {
    if seq.is_empty() {
        return Err(GraphError::EmptyCycle);
    }
    if seq.contains(&0) {
        return Err(GraphError::NonPositiveDegree);
    }
    Ok(())
}

pub fn monodromy(seq: &[u32]) -> Result<CuspMonodromy, GraphError> {
    check_entries(seq)?;
    let (mut a, mut b, mut c, mut d) = (
        BigInt::from(1),
        BigInt::from(0),
        BigInt::from(0),
        BigInt::from(1),
    );
    for &k in seq {
        // [[0,-1],[1,k]] · [[a,b],[c,d]]
        let k = BigInt::from(k);
        let (na, nb) = (-&c, -&d);
        let nc = &a + &k * &c;
        let nd = &b + &k * &d;
        (a, b, c, d) = (na, nb, nc, nd);
    }
    let trace = &a + &d;
    let matrix = IntMatrix::from_rows(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
        .expect("2x2");
    Ok(CuspMonodromy {
        matrix,
        a,
        b,
        c,
        d,
        trace,
    })
}

/// `ℤ² / (A − id)ℤ²`, of order `t − 2`.
pub fn link_torsion(seq: &[u32]) -> Result<FinAbGroup, GraphError> {
    let m = monodromy(seq)?;
    if m.trace < BigInt::from(3) {
        return Err(GraphError::NotHyperbolic {
            trace: m.trace.to_string(),
        });
    }
    let rel = m.matrix.sub_identity().map_err(crate::error::GroupError::from)?;
    Ok(FinAbGroup::from_presentation(&rel)?)
}

/// The lexicographically greatest rotation of a cyclic sequence.
///
/// With entries read as self-intersections `−dᵢ` this is the least
/// rotation, so `[3, 2, 2]` rather than `[2, 2, 3]`.
pub fn canonical_rotation(seq: &[u32]) -> Vec<u32> {
    (0..seq.len().max(1))
        .map(|k| {
            let mut r = seq.to_vec();
            r.rotate_left(k.min(seq.len()));
            r
        })
        .max()
        .unwrap_or_default()
}

/// Equality of cyclic sequences up to rotation (not reflection).
pub fn same_cycle(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && canonical_rotation(a) == canonical_rotation(b)
}

/// The dual cycle, by complementing the cyclic word `A B^{d₁−2} A B^{d₂−2} ⋯`.
pub fn dual_cusp(seq: &[u32]) -> Result<Vec<u32>, GraphError> {
    check_entries(seq)?;
    if seq.iter().any(|&d| d < 2) {
        return Err(GraphError::EntryBelowTwo);
    }
    if seq.iter().all(|&d| d == 2) {
        return Err(GraphError::AllTwos);
    }
    // true = A, false = B; after the swap the A's are the old B's.
    let mut word = Vec::new();
    for &d in seq {
        word.push(false);
        word.extend(std::iter::repeat(true).take(d as usize - 2));
    }
    let start = word.iter().position(|&x| x).expect("some entry exceeds 2");
    word.rotate_left(start);
    let mut out = Vec::new();
    for x in word {
        if x {
            out.push(2);
        } else {
            *out.last_mut().expect("word starts with A") += 1;
        }
    }
    Ok(canonical_rotation(&out))
}

/// How the `ℤ_t` cover was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverRoute {
    /// `a ≥ 0`: the direct construction applies.
    Direct,
    /// `a < 0`: obtained through the dual cusp; the group order is conditional.
    ViaDual,
}

/// The `ℤ_t` cover of a cusp by the hypersurface cusp `[3, 2^{t−3}]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LciCover {
    pub group_order: u64,
    pub cover: Vec<u32>,
    pub a_nonneg: bool,
    pub route: CoverRoute,
}

pub fn lci_cover(seq: &[u32]) -> Result<LciCover, GraphError> {
    let m = monodromy(seq)?;
    if m.trace < BigInt::from(3) {
        return Err(GraphError::NotHyperbolic {
            trace: m.trace.to_string(),
        });
    }
    let t = m
        .trace
        .to_u64()
        .filter(|&t| t <= MAX_COVER_TRACE)
        .ok_or_else(|| GraphError::CoverTooLarge {
            trace: m.trace.to_string(),
        })?;
    let mut cover = vec![3u32];
    cover.extend(std::iter::repeat(2).take(t as usize - 3));
    let a_nonneg = !m.a.is_negative();
    Ok(LciCover {
        group_order: t,
        cover,
        a_nonneg,
        route: if a_nonneg { CoverRoute::Direct } else { CoverRoute::ViaDual },
    })
}

//! Minimal resolutions of simple elliptic and cusp singularities: the
//! intersection lattice, canonical class and topological bookkeeping.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;
use crate::error::GraphError;
use crate::finite::{FinAbGroup, FinQuadFunction};
use crate::lattice::QuadLattice;

/// Exceptional configuration of a minimal resolution.
///
/// Cycle entries are positive: `CuspCycle { seq: [3, 3] }` is the cycle of
/// two rational curves with self-intersection −3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolutionGraph {
    SimpleElliptic { d: u32 },
    CuspCycle { seq: Vec<u32> },
}

/// Topological invariants of the resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionInvariants {
    pub g: u32,
    pub m: u32,
    pub b1: u32,
    pub b2: u32,
    pub chi: i64,
    pub k_sq: i64,
    pub emb_dim: i64,
    pub p: u32,
    pub is_lci: bool,
    pub smoothable_necessary: bool,
}

impl ResolutionGraph {
    pub fn elliptic(d: u32) -> Result<Self, GraphError> {
        if d == 0 {
            return Err(GraphError::NonPositiveDegree);
        }
        Ok(ResolutionGraph::SimpleElliptic { d })
    }

    pub fn cusp(seq: Vec<u32>) -> Result<Self, GraphError> {
        if seq.is_empty() {
            return Err(GraphError::EmptyCycle);
        }
        if seq.contains(&0) {
            return Err(GraphError::NonPositiveDegree);
        }
        Ok(ResolutionGraph::CuspCycle { seq })
    }

    /// Number of exceptional curves.
    pub fn curves(&self) -> usize {
        match self {
            ResolutionGraph::SimpleElliptic { .. } => 1,
            ResolutionGraph::CuspCycle { seq } => seq.len(),
        }
    }

    /// Gram matrix and canonical class, without validity checks.
    fn raw_lattice(&self) -> QuadLattice {
        match self {
            ResolutionGraph::SimpleElliptic { d } => {
                // genus 1: K·E = −E²
                QuadLattice::from_i64(&[vec![-(*d as i64)]], &[*d as i64]).expect("parity holds")
            }
            ResolutionGraph::CuspCycle { seq } => {
                let r = seq.len();
                let mut gram = IntMatrix::zeros(r, r);
                let mut k = Vec::with_capacity(r);
                for (i, &d) in seq.iter().enumerate() {
                    gram[(i, i)] = BigInt::from(-(d as i64));
                    if r == 1 {
                        // nodal rational curve, arithmetic genus 1
                        k.push(BigInt::from(d));
                    } else {
                        k.push(BigInt::from(d as i64 - 2));
                    }
                }
                if r == 2 {
                    gram[(0, 1)] = BigInt::from(2);
                    gram[(1, 0)] = BigInt::from(2);
                } else if r >= 3 {
                    for i in 0..r {
                        let j = (i + 1) % r;
                        gram[(i, j)] = BigInt::from(1);
                        gram[(j, i)] = BigInt::from(1);
                    }
                }
                QuadLattice::new(gram, k).expect("parity holds")
            }
        }
    }

    /// Checks Artin's criterion, and hyperbolicity of one-curve cycles.
    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            ResolutionGraph::SimpleElliptic { d } if *d == 0 => Err(GraphError::NonPositiveDegree),
            ResolutionGraph::SimpleElliptic { .. } => Ok(()),
            ResolutionGraph::CuspCycle { seq } => {
                if seq.is_empty() {
                    return Err(GraphError::EmptyCycle);
                }
                if seq.contains(&0) {
                    return Err(GraphError::NonPositiveDegree);
                }
                if seq.len() == 1 && seq[0] < 3 {
                    return Err(GraphError::NotHyperbolic {
                        trace: seq[0].to_string(),
                    });
                }
                // A cycle of curves with dᵢ ≥ 2 is definite unless every dᵢ = 2;
                // entries equal to 1 need the general test.
                let definite = if seq.iter().all(|&d| d >= 2) {
                    seq.len() == 1 || seq.iter().any(|&d| d >= 3)
                } else {
                    self.raw_lattice().is_negative_definite()
                };
                if !definite {
                    return Err(GraphError::NotNegativeDefinite);
                }
                Ok(())
            }
        }
    }

    /// `(H₂, Q)` of the resolution: Gram `[Eᵢ·Eⱼ]` and `Kᵢ = 2g(Eᵢ) − 2 − Eᵢ²`.
    pub fn intersection_lattice(&self) -> Result<QuadLattice, GraphError> {
        self.validate()?;
        Ok(self.raw_lattice())
    }

    /// `Σ (dᵢ − 2)` for a cycle, `d` for the elliptic curve.
    fn minus_k_sq(&self) -> i64 {
        match self {
            ResolutionGraph::SimpleElliptic { d } => *d as i64,
            ResolutionGraph::CuspCycle { seq } if seq.len() == 1 => seq[0] as i64,
            ResolutionGraph::CuspCycle { seq } => seq.iter().map(|&d| d as i64 - 2).sum(),
        }
    }

    pub fn invariants(&self) -> Result<ResolutionInvariants, GraphError> {
        self.validate()?;
        let minus_k = self.minus_k_sq();
        let emb_dim = minus_k.max(3);
        let is_lci = minus_k <= 4;
        Ok(match self {
            ResolutionGraph::SimpleElliptic { d } => ResolutionInvariants {
                g: 1,
                m: 0,
                b1: 2,
                b2: 1,
                chi: 0,
                k_sq: -minus_k,
                emb_dim,
                p: 1,
                is_lci,
                smoothable_necessary: (1..=9).contains(d),
            },
            ResolutionGraph::CuspCycle { seq } => {
                let r = seq.len();
                let smoothable = if r == 1 {
                    seq[0] <= 10
                } else {
                    seq.iter().map(|&d| d as i64 - 3).sum::<i64>() <= 9
                };
                ResolutionInvariants {
                    g: 0,
                    m: 1,
                    b1: 1,
                    b2: r as u32,
                    chi: if r == 1 { 1 } else { r as i64 },
                    k_sq: -minus_k,
                    emb_dim,
                    p: 1,
                    is_lci,
                    smoothable_necessary: smoothable,
                }
            }
        })
    }

    /// `H₁` of the link: free part of rank `b₁` plus the discriminant group
    /// of the intersection lattice, with its quadratic function.
    pub fn link_homology(&self) -> Result<(FinAbGroup, FinQuadFunction), GraphError> {
        if let ResolutionGraph::CuspCycle { seq } = self {
            if seq.len() == 1 {
                self.validate()?;
                return Err(GraphError::NodalLatticeUnavailable);
            }
        }
        let inv = self.invariants()?;
        let dqf = self.intersection_lattice()?.dqf()?;
        let h1 = FinAbGroup::new(inv.b1 as usize, dqf.group().torsion_invariants().to_vec())?;
        Ok((h1, dqf.form))
    }

    /// An integral solution `w` of `B w = K`, if one exists.
    pub fn canonical_cycle(&self) -> Result<Option<Vec<BigInt>>, GraphError> {
        let l = self.intersection_lattice()?;
        Ok(l.gram().solve_integer(l.char_form()).ok())
    }

    pub fn is_numerically_gorenstein(&self) -> Result<bool, GraphError> {
        Ok(self.canonical_cycle()?.is_some())
    }
}

impl fmt::Display for ResolutionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionGraph::SimpleElliptic { d } => write!(f, "elliptic:d={d}"),
            ResolutionGraph::CuspCycle { seq } => {
                let s: Vec<String> = seq.iter().map(u32::to_string).collect();
                write!(f, "cusp:{}", s.join(","))
            }
        }
    }
}

/// Parses a comma-separated list of positive cycle entries.
pub fn parse_cycle(s: &str) -> Result<Vec<u32>, GraphError> {
    let err = |reason: String| GraphError::Parse {
        input: s.to_string(),
        reason,
    };
    if s.trim().is_empty() {
        return Err(GraphError::EmptyCycle);
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let v: i64 = t.parse().map_err(|_| err(format!("{t:?} is not an integer")))?;
            if v < 1 {
                return Err(GraphError::NonPositiveDegree);
            }
            u32::try_from(v).map_err(|_| err(format!("{v} is too large")))
        })
        .collect()
}

impl FromStr for ResolutionGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |reason: &str| GraphError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = s.strip_prefix("elliptic:") {
            let v = rest
                .trim()
                .strip_prefix("d=")
                .ok_or_else(|| err("expected elliptic:d=<degree>"))?;
            let d: i64 = v.trim().parse().map_err(|_| err("degree is not an integer"))?;
            if d < 1 {
                return Err(GraphError::NonPositiveDegree);
            }
            let d = u32::try_from(d).map_err(|_| err("degree is too large"))?;
            ResolutionGraph::elliptic(d)
        } else if let Some(rest) = s.strip_prefix("cusp:") {
            ResolutionGraph::cusp(parse_cycle(rest)?)
        } else {
            Err(err("expected elliptic:d=<n> or cusp:<d1>,<d2>,..."))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QmodZ;

    fn cusp(s: &[u32]) -> ResolutionGraph {
        ResolutionGraph::cusp(s.to_vec()).unwrap()
    }

    #[test]
    fn lattices() {
        let l = ResolutionGraph::elliptic(8).unwrap().intersection_lattice().unwrap();
        assert_eq!(l, QuadLattice::from_i64(&[vec![-8]], &[8]).unwrap());
        let l = cusp(&[3, 3]).intersection_lattice().unwrap();
        assert_eq!(l, QuadLattice::from_i64(&[vec![-3, 2], vec![2, -3]], &[1, 1]).unwrap());
        let l = cusp(&[2, 3]).intersection_lattice().unwrap();
        assert_eq!(l, QuadLattice::from_i64(&[vec![-2, 2], vec![2, -3]], &[0, 1]).unwrap());
        let l = cusp(&[3, 2, 4]).intersection_lattice().unwrap();
        assert_eq!(
            l,
            QuadLattice::from_i64(&[vec![-3, 1, 1], vec![1, -2, 1], vec![1, 1, -4]], &[1, 0, 2]).unwrap()
        );
    }

    #[test]
    fn artin_failures() {
        assert_eq!(cusp(&[2, 2]).validate(), Err(GraphError::NotNegativeDefinite));
        assert_eq!(cusp(&[2, 2, 2]).validate(), Err(GraphError::NotNegativeDefinite));
        assert!(matches!(cusp(&[2]).validate(), Err(GraphError::NotHyperbolic { .. })));
        assert!(cusp(&[3]).validate().is_ok());
    }

    #[test]
    fn invariant_examples() {
        let i = ResolutionGraph::elliptic(8).unwrap().invariants().unwrap();
        assert_eq!((i.b1, i.chi, i.k_sq, i.emb_dim, i.is_lci), (2, 0, -8, 8, false));
        let i = cusp(&[3, 3]).invariants().unwrap();
        assert_eq!((i.b1, i.chi, i.k_sq, i.emb_dim, i.is_lci), (1, 2, -2, 3, true));
        assert!(!ResolutionGraph::elliptic(10).unwrap().invariants().unwrap().smoothable_necessary);
        let i = cusp(&[5]).invariants().unwrap();
        assert_eq!((i.chi, i.k_sq, i.emb_dim, i.is_lci), (1, -5, 5, false));
        assert!(cusp(&[10]).invariants().unwrap().smoothable_necessary);
        assert!(!cusp(&[11]).invariants().unwrap().smoothable_necessary);
    }

    #[test]
    fn link_examples() {
        for d in 1..=12u32 {
            let (h, q) = ResolutionGraph::elliptic(d).unwrap().link_homology().unwrap();
            assert_eq!(h.free_rank(), 2);
            if d > 1 {
                assert_eq!(h.torsion_invariants(), &[d as u64]);
                assert_eq!(
                    q.generator_values(),
                    &[QmodZ::from_fraction(d as i64 - 1, 2 * d as i64)]
                );
            }
        }
        let (h, _) = cusp(&[3, 3]).link_homology().unwrap();
        assert_eq!((h.free_rank(), h.torsion_invariants()), (1, &[5u64][..]));
        let (h, _) = cusp(&[2, 3]).link_homology().unwrap();
        assert_eq!((h.free_rank(), h.torsion_invariants()), (1, &[2u64][..]));
        assert_eq!(cusp(&[5]).link_homology().unwrap_err(), GraphError::NodalLatticeUnavailable);
    }

    #[test]
    fn canonical_cycle_witnesses() {
        let m1 = |n: usize| Some(vec![BigInt::from(-1); n]);
        assert_eq!(ResolutionGraph::elliptic(7).unwrap().canonical_cycle().unwrap(), m1(1));
        assert_eq!(cusp(&[3, 3]).canonical_cycle().unwrap(), m1(2));
        assert_eq!(cusp(&[5, 2, 2]).canonical_cycle().unwrap(), m1(3));
    }

    #[test]
    fn text_encoding_round_trips() {
        for s in ["elliptic:d=8", "cusp:3,3", "cusp:5"] {
            assert_eq!(s.parse::<ResolutionGraph>().unwrap().to_string(), s);
        }
        assert_eq!(
            " cusp: 3 , 2 ".parse::<ResolutionGraph>().unwrap(),
            cusp(&[3, 2])
        );
        assert!("cusp:".parse::<ResolutionGraph>().is_err());
        assert!("cusp:3,-2".parse::<ResolutionGraph>().is_err());
        assert!("elliptic:d=0".parse::<ResolutionGraph>().is_err());
        assert!("elliptic:8".parse::<ResolutionGraph>().is_err());
        assert!("torus".parse::<ResolutionGraph>().is_err());
    }
}

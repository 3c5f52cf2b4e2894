use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{snf, IntMatrix};
use crate::error::GroupError;

/// Largest finite group we are willing to enumerate element by element.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// A finitely generated abelian group `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k`
/// in invariant-factor form (`dᵢ ≥ 2`, `dᵢ | dᵢ₊₁`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self, GroupError> {
        let ok = torsion.iter().all(|&d| d >= 2) && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(GroupError::BadInvariants(torsion));
        }
        Ok(FinAbGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FinAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::new(0, vec![n])
    }

    /// Cokernel `ℤⁿ / M·ℤᵐ` of an `n × m` relation matrix.
    pub fn from_presentation(relations: &IntMatrix) -> Result<Self, GroupError> {
        let r = snf(relations);
        Self::from_invariant_factors(relations.rows(), &r.d)
    }

    /// Group `ℤⁿ / diag(d)` where `d` comes from a Smith normal form with
    /// `n` rows; units are dropped and zero factors become free summands.
    pub(crate) fn from_invariant_factors(n: usize, d: &[BigInt]) -> Result<Self, GroupError> {
        let mut torsion = Vec::new();
        let mut nonzero = 0;
        for x in d {
            if x.is_zero() {
                continue;
            }
            nonzero += 1;
            if x.is_one() {
                continue;
            }
            let v = x
                .to_u64()
                .ok_or_else(|| GroupError::InvariantTooLarge(x.to_string()))?;
            torsion.push(v);
        }
        Self::new(n - nonzero, torsion)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_invariants(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().map(|&d| BigInt::from(d)).product()
    }

    /// The torsion subgroup as a group in its own right.
    pub fn torsion_part(&self) -> FinAbGroup {
        FinAbGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Order of a finite group, refusing groups beyond the enumeration limit.
    pub fn enumerable_order(&self) -> Result<u64, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::NotFinite(self.free_rank));
        }
        let order = self.torsion_order();
        match order.to_u64() {
            Some(n) if n <= ENUMERATION_LIMIT => Ok(n),
            _ => Err(GroupError::TooLarge {
                order: order.to_string(),
                limit: ENUMERATION_LIMIT,
            }),
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    /// Builds an element from coordinates, reducing the torsion part.
    pub fn element(&self, free: Vec<BigInt>, torsion: &[BigInt]) -> Result<GroupElement, GroupError> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(GroupError::WrongGroup);
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion)
            .map(|(c, &d)| c.mod_floor(&BigInt::from(d)).to_u64().expect("reduced below d"))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Element of a finite group from (possibly unreduced) torsion coordinates.
    pub fn torsion_element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        let c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        self.element(vec![BigInt::zero(); self.free_rank], &c)
    }

    /// The `i`-th torsion generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.zero();
        g.torsion[i] = 1 % self.torsion[i];
        g
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.free.len() == self.free_rank
            && x.torsion.len() == self.torsion.len()
            && x.torsion.iter().zip(&self.torsion).all(|(&c, &d)| c < d)
    }

    pub(crate) fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GroupError::WrongGroup)
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElement {
            free: x.free.iter().zip(&y.free).map(|(a, b)| a + b).collect(),
            torsion: x
                .torsion
                .iter()
                .zip(&y.torsion)
                .zip(&self.torsion)
                .map(|((&a, &b), &d)| ((a as u128 + b as u128) % d as u128) as u64)
                .collect(),
        })
    }

    pub fn scale(&self, k: &BigInt, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(x)?;
        let torsion: Vec<BigInt> = x.torsion.iter().map(|&c| k * BigInt::from(c)).collect();
        self.element(x.free.iter().map(|a| k * a).collect(), &torsion)
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.scale(&BigInt::from(-1), x)
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn element_order(&self, x: &GroupElement) -> Option<u64> {
        if x.free.iter().any(|a| !a.is_zero()) {
            return None;
        }
        Some(
            x.torsion
                .iter()
                .zip(&self.torsion)
                .map(|(&c, &d)| d / c.gcd(&d))
                .fold(1, |acc, o| acc.lcm(&o)),
        )
    }

    /// All elements of a finite group in index order (coordinate-lexicographic).
    pub fn elements(&self) -> Result<Vec<GroupElement>, GroupError> {
        let ix = Indexer::new(self)?;
        Ok((0..ix.order).map(|i| ix.element(i)).collect())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// An element of a [`FinAbGroup`]: free coordinates plus torsion residues.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<u64>,
}

impl GroupElement {
    pub fn free_coords(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_coords(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|&c| c == 0)
    }
}

/// Mixed-radix bijection between the elements of a finite group and
/// `0..order`; the first coordinate is the most significant digit.
#[derive(Clone, Debug)]
pub(crate) struct Indexer {
    pub(crate) moduli: Vec<u64>,
    strides: Vec<u64>,
    pub(crate) order: u64,
}

impl Indexer {
    pub(crate) fn new(group: &FinAbGroup) -> Result<Self, GroupError> {
        let order = group.enumerable_order()?;
        let moduli = group.torsion.clone();
        let mut strides = vec![1u64; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        Ok(Indexer {
            moduli,
            strides,
            order,
        })
    }

    pub(crate) fn coords(&self, mut idx: u64) -> Vec<u64> {
        let mut c = vec![0; self.moduli.len()];
        for (i, s) in self.strides.iter().enumerate() {
            c[i] = idx / s;
            idx %= s;
        }
        c
    }

    pub(crate) fn index(&self, coords: &[u64]) -> u64 {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub(crate) fn element(&self, idx: u64) -> GroupElement {
        GroupElement {
            free: Vec::new(),
            torsion: self.coords(idx),
        }
    }

    pub(crate) fn index_of(&self, x: &GroupElement) -> u64 {
        self.index(&x.torsion)
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        let (mut a, mut b) = (a, b);
        for (s, m) in self.strides.iter().zip(&self.moduli) {
            let (ca, cb) = (a / s, b / s);
            a %= s;
            b %= s;
            out += ((ca + cb) % m) * s;
        }
        out
    }
}

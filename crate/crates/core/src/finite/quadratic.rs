use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::group::{FinAbGroup, GroupElement, Indexer};
use super::subgroup::{close_under_joins, Subgroup};
use crate::algebra::{coordinates_in_basis, hermite_rows, snf, unimodular_inverse, IntMatrix, QmodZ};
use crate::error::GroupError;

/// A ℚ/ℤ-valued quadratic function on a finite abelian group, given by its
/// values on the invariant-factor generators and its bilinear form
/// `b(x, y) = q(x + y) − q(x) − q(y)` on pairs of generators.
///
/// Internally all values are kept as residues modulo a common denominator so
/// evaluation over a whole group stays in machine integers.
#[derive(Clone, Debug)]
pub struct FinQuadFunction {
    group: FinAbGroup,
    q_gen: Vec<QmodZ>,
    b: Vec<Vec<QmodZ>>,
    denom: u64,
    qn: Vec<u64>,
    kn: Vec<u64>,
    bn: Vec<Vec<u64>>,
}

impl PartialEq for FinQuadFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.q_gen == other.q_gen && self.b == other.b
    }
}

impl Eq for FinQuadFunction {}

fn numerator_mod(v: &QmodZ, denom: u64) -> u64 {
    // v = n/d with d | denom
    let scale = BigInt::from(denom) / v.denom();
    (v.numer() * scale).to_u64().expect("numerator below denominator")
}

impl FinQuadFunction {
    /// Validates symmetry of `b` and that `q` descends to the finite group:
    /// for every generator `g` of order `n`, `n·b(g, ·) = 0` and `q(n·g) = 0`.
    pub fn new(group: FinAbGroup, q_gen: Vec<QmodZ>, b: Vec<Vec<QmodZ>>) -> Result<Self, GroupError> {
        if !group.is_finite() {
            return Err(GroupError::NotFinite(group.free_rank()));
        }
        let k = group.torsion_invariants().len();
        if q_gen.len() != k || b.len() != k || b.iter().any(|r| r.len() != k) {
            return Err(GroupError::IllDefined(format!(
                "expected {k} generator values and a {k}x{k} bilinear matrix"
            )));
        }
        for i in 0..k {
            for j in 0..i {
                if b[i][j] != b[j][i] {
                    return Err(GroupError::IllDefined(format!("b is not symmetric at ({i}, {j})")));
                }
            }
        }
        for (i, &n) in group.torsion_invariants().iter().enumerate() {
            let n = BigInt::from(n);
            for j in 0..k {
                if !b[i][j].scale(&n).is_zero() {
                    return Err(GroupError::IllDefined(format!(
                        "{n}·b(g{i}, g{j}) = {} is nonzero",
                        b[i][j].scale(&n)
                    )));
                }
            }
            let q_n = &q_gen[i].scale(&n) + &b[i][i].triangular_multiple(&n);
            if !q_n.is_zero() {
                return Err(GroupError::IllDefined(format!("q({n}·g{i}) = {q_n} is nonzero")));
            }
        }

        let mut denom = BigInt::from(1);
        for v in q_gen.iter().chain(b.iter().flatten()) {
            denom = denom.lcm(v.denom());
        }
        let denom = denom.to_u64().ok_or(GroupError::DenominatorOverflow)?;
        if denom > u32::MAX as u64 {
            return Err(GroupError::DenominatorOverflow);
        }
        let qn: Vec<u64> = q_gen.iter().map(|v| numerator_mod(v, denom)).collect();
        let bn: Vec<Vec<u64>> = b
            .iter()
            .map(|r| r.iter().map(|v| numerator_mod(v, denom)).collect())
            .collect();
        let kn = (0..k).map(|i| (2 * qn[i] + denom - bn[i][i]) % denom).collect();
        Ok(FinQuadFunction {
            group,
            q_gen,
            b,
            denom,
            qn,
            kn,
            bn,
        })
    }

    /// The zero function on a finite group.
    pub fn zero(group: FinAbGroup) -> Result<Self, GroupError> {
        let k = group.torsion_invariants().len();
        Self::new(group, vec![QmodZ::zero(); k], vec![vec![QmodZ::zero(); k]; k])
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn generator_values(&self) -> &[QmodZ] {
        &self.q_gen
    }

    pub fn bilinear_matrix(&self) -> &[Vec<QmodZ>] {
        &self.b
    }

    fn to_qmodz(&self, n: u64) -> QmodZ {
        QmodZ::from_fraction(n, self.denom)
    }

    /// `q` on torsion coordinates, as a numerator over `self.denom`.
    ///
    /// Expands `x = Σ cᵢ gᵢ` with `q(c·g) = c²q(g) − ½c(c−1)k(g)` and
    /// `q(x + y) = q(x) + q(y) + b(x, y)`.
    fn q_num(&self, c: &[u64]) -> u64 {
        let n = self.denom as u128;
        let mut acc: u128 = 0;
        for i in 0..c.len() {
            let ci = c[i] as u128;
            let sq = (ci * ci) % n * self.qn[i] as u128 % n;
            let tri = (ci * ci.saturating_sub(1) / 2) % n * self.kn[i] as u128 % n;
            acc = (acc + sq + n - tri) % n;
            for j in i + 1..c.len() {
                let cj = c[j] as u128;
                acc = (acc + (ci * cj) % n * self.bn[i][j] as u128) % n;
            }
        }
        acc as u64
    }

    fn b_num(&self, x: &[u64], y: &[u64]) -> u64 {
        let n = self.denom as u128;
        let mut acc: u128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                acc = (acc + (x[i] as u128 * y[j] as u128) % n * self.bn[i][j] as u128) % n;
            }
        }
        acc as u64
    }

    fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        self.group.check(x)
    }

    pub fn evaluate(&self, x: &GroupElement) -> Result<QmodZ, GroupError> {
        self.check(x)?;
        Ok(self.to_qmodz(self.q_num(x.torsion_coords())))
    }

    pub fn bilinear(&self, x: &GroupElement, y: &GroupElement) -> Result<QmodZ, GroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.to_qmodz(self.b_num(x.torsion_coords(), y.torsion_coords())))
    }

    /// The linear part `k(x) = 2q(x) − b(x, x)`.
    pub fn linear_part(&self, x: &GroupElement) -> Result<QmodZ, GroupError> {
        let q = self.evaluate(x)?;
        let b = self.bilinear(x, x)?;
        Ok(&(&q + &q) - &b)
    }

    /// True when the linear part vanishes, i.e. `q` is a quadratic form.
    pub fn is_form(&self) -> bool {
        self.kn.iter().all(|&k| k == 0)
    }

    /// `{x : b(x, y) = 0 for all y}`.
    pub fn radical(&self) -> Result<Subgroup, GroupError> {
        let ix = Indexer::new(&self.group)?;
        let k = ix.moduli.len();
        let gens: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                let mut c = vec![0; k];
                c[i] = 1;
                c
            })
            .collect();
        Ok(self.orthogonal_to(&ix, &gens))
    }

    pub fn is_nondegenerate(&self) -> Result<bool, GroupError> {
        Ok(self.radical()?.is_trivial())
    }

    fn orthogonal_to(&self, ix: &Indexer, coords: &[Vec<u64>]) -> Subgroup {
        let elems = (0..ix.order)
            .filter(|&i| {
                let c = ix.coords(i);
                coords.iter().all(|y| self.b_num(&c, y) == 0)
            })
            .collect();
        Subgroup::from_sorted_indices(self.group.clone(), elems)
    }

    fn check_subgroup(&self, s: &Subgroup) -> Result<(), GroupError> {
        if s.ambient() != &self.group {
            return Err(GroupError::AmbientMismatch);
        }
        Ok(())
    }

    pub fn is_isotropic(&self, s: &Subgroup) -> Result<bool, GroupError> {
        self.check_subgroup(s)?;
        let ix = Indexer::new(&self.group)?;
        Ok(s.indices().iter().all(|&i| self.q_num(&ix.coords(i)) == 0))
    }

    /// All subgroups on which `q` vanishes identically, sorted by
    /// (order, elements); the trivial subgroup comes first.
    pub fn isotropic_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        let ix = Indexer::new(&self.group)?;
        let table: Vec<u64> = (0..ix.order).map(|i| self.q_num(&ix.coords(i))).collect();
        let cyclic_ok = |g: u64| {
            let mut x = g;
            while x != 0 {
                if table[x as usize] != 0 {
                    return false;
                }
                x = ix.add(x, g);
            }
            true
        };
        // q(h + c) = q(h) + q(c) + b(h, c), so a join of isotropic pieces is
        // isotropic iff they are b-orthogonal.
        let join_ok = |h: &[u64], g: u64| {
            let gc = ix.coords(g);
            h.iter().all(|&x| self.b_num(&ix.coords(x), &gc) == 0)
        };
        Ok(close_under_joins(&self.group, &ix, cyclic_ok, join_ok))
    }

    /// `I^⊥ = {x : b(x, y) = 0 for all y ∈ I}` for an isotropic `I`.
    pub fn perp(&self, i: &Subgroup) -> Result<Subgroup, GroupError> {
        if !self.is_isotropic(i)? {
            return Err(GroupError::NotIsotropic);
        }
        let ix = Indexer::new(&self.group)?;
        let gens: Vec<Vec<u64>> = i.generators().iter().map(|g| g.torsion_coords().to_vec()).collect();
        Ok(self.orthogonal_to(&ix, &gens))
    }

    /// The quadratic function induced on `I^⊥ / I` for an isotropic `I`.
    pub fn induced_form(&self, i: &Subgroup) -> Result<InducedForm, GroupError> {
        let perp = self.perp(i)?;
        let (group, lifts) = quotient_presentation(&self.group, &perp, i)?;
        let q_gen = lifts.iter().map(|x| self.evaluate(x)).collect::<Result<Vec<_>, _>>()?;
        let b = lifts
            .iter()
            .map(|x| lifts.iter().map(|y| self.bilinear(x, y)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let form = FinQuadFunction::new(group, q_gen, b)?;
        Ok(InducedForm {
            form,
            perp,
            generator_lifts: lifts,
        })
    }

    /// Sorted list of `q(x)` over all elements, with multiplicity.
    pub fn value_multiset(&self) -> Result<Vec<QmodZ>, GroupError> {
        let ix = Indexer::new(&self.group)?;
        let mut v: Vec<u64> = (0..ix.order).map(|i| self.q_num(&ix.coords(i))).collect();
        v.sort_unstable();
        Ok(v.into_iter().map(|n| self.to_qmodz(n)).collect())
    }
}

/// Result of [`FinQuadFunction::induced_form`].
#[derive(Clone, Debug)]
pub struct InducedForm {
    /// `q_I` on `I^⊥/I` in invariant-factor form.
    pub form: FinQuadFunction,
    pub perp: Subgroup,
    /// Representatives in `I^⊥` of the generators of `I^⊥/I`.
    pub generator_lifts: Vec<GroupElement>,
}

/// Invariant-factor presentation of `big / small` for subgroups
/// `small ⊆ big` of a finite group, with lifts of the generators to `big`.
///
/// Works with the preimage lattices in ℤᵏ: if `A` and `B` are bases of the
/// preimages and `B = C·A`, the Smith form `U C V = D` exhibits
/// `A/B ≅ ⊕ ℤ/dᵢ` generated by the rows of `V⁻¹A`.
pub(crate) fn quotient_presentation(
    ambient: &FinAbGroup,
    big: &Subgroup,
    small: &Subgroup,
) -> Result<(FinAbGroup, Vec<GroupElement>), GroupError> {
    let moduli = ambient.torsion_invariants();
    let k = moduli.len();
    let preimage = |s: &Subgroup| -> IntMatrix {
        let mut rows: Vec<Vec<BigInt>> = s
            .generators()
            .iter()
            .map(|g| g.torsion_coords().iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        for (i, &d) in moduli.iter().enumerate() {
            let mut r = vec![BigInt::from(0); k];
            r[i] = BigInt::from(d);
            rows.push(r);
        }
        IntMatrix::from_rows(&rows).expect("uniform rows")
    };
    if k == 0 {
        return Ok((FinAbGroup::trivial(), Vec::new()));
    }
    let a = hermite_rows(&preimage(big));
    let b = hermite_rows(&preimage(small));
    let c = coordinates_in_basis(&b, &a)?;
    let r = snf(&c);
    let v_inv = unimodular_inverse(&r.v)?;
    let new_basis = &v_inv * &a;
    let mut torsion = Vec::new();
    let mut lifts = Vec::new();
    for (i, d) in r.d.iter().enumerate() {
        let d = d.to_u64().ok_or_else(|| GroupError::InvariantTooLarge(d.to_string()))?;
        if d == 1 {
            continue;
        }
        torsion.push(d);
        lifts.push(ambient.element(Vec::new(), new_basis.row(i))?);
    }
    Ok((FinAbGroup::new(0, torsion)?, lifts))
}

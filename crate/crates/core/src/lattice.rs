//! Integral quadratic lattices `(N, Q)` with `Q(x) = ½(B(x, x) + K(x))`,
//! their discriminant quadratic functions and their integral overlattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{hermite_rows, snf, Inertia, IntMatrix, QmodZ, Rational};
use crate::error::LatticeError;
use crate::finite::{FinAbGroup, FinQuadFunction, GroupElement, Subgroup};

/// Default cap on `|det B|` for overlattice enumeration.
pub const DEFAULT_OVERLATTICE_BOUND: u64 = 10_000;

/// A free ℤ-lattice with symmetric Gram matrix `B` and a linear form `K`
/// such that `B(x, x) + K(x)` is even for every `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadLattice {
    gram: IntMatrix,
    char_form: Vec<BigInt>,
}

impl QuadLattice {
    pub fn new(gram: IntMatrix, char_form: Vec<BigInt>) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if char_form.len() != gram.rows() {
            return Err(LatticeError::FormLength {
                expected: gram.rows(),
                found: char_form.len(),
            });
        }
        // B(x,x) + K(x) ≡ Σ xᵢ²Bᵢᵢ + Σ xᵢKᵢ ≡ Σ xᵢ(Bᵢᵢ + Kᵢ) mod 2
        for (i, k) in char_form.iter().enumerate() {
            if (&gram[(i, i)] + k).is_odd() {
                return Err(LatticeError::Parity(i));
            }
        }
        Ok(QuadLattice { gram, char_form })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(gram: &[Vec<i64>], char_form: &[i64]) -> Result<Self, LatticeError> {
        let g = IntMatrix::from_rows(gram)?;
        Self::new(g, char_form.iter().map(|&k| BigInt::from(k)).collect())
    }

    /// The even lattice `(N, B)` with `K = 0`.
    pub fn even(gram: IntMatrix) -> Result<Self, LatticeError> {
        let n = gram.rows();
        Self::new(gram, vec![BigInt::zero(); n])
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn char_form(&self) -> &[BigInt] {
        &self.char_form
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("gram is square")
    }

    pub fn inertia(&self) -> Inertia {
        self.gram.rational_diagonalize().expect("gram is symmetric")
    }

    pub fn is_negative_definite(&self) -> bool {
        let i = self.inertia();
        i.zero == 0 && i.positive == 0
    }

    /// `K = 0` and every diagonal entry even.
    pub fn is_even_form(&self) -> bool {
        self.char_form.iter().all(Zero::is_zero)
            && (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// `B(x, y)` for rational coordinate vectors.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let (xn, xd) = common_denominator(x);
        let (yn, yd) = common_denominator(y);
        Rational::new(self.form_int(&xn, &yn), xd * yd)
    }

    /// `Q(x) = ½(B(x, x) + K(x))`, extended to rational coordinates.
    pub fn quadratic(&self, x: &[Rational]) -> Rational {
        let (xn, xd) = common_denominator(x);
        self.quadratic_scaled(&xn, &xd)
    }

    /// `Q(v / d)` for integral `v`.
    fn quadratic_scaled(&self, v: &[BigInt], d: &BigInt) -> Rational {
        let kv: BigInt = self.char_form.iter().zip(v).map(|(k, x)| k * x).sum();
        let num = self.form_int(v, v) + kv * d;
        Rational::new(num, BigInt::from(2) * d * d)
    }

    fn form_int(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let n = self.rank();
        let mut s = BigInt::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..n {
                if !y[j].is_zero() {
                    row += &self.gram[(i, j)] * &y[j];
                }
            }
            s += &x[i] * row;
        }
        s
    }

    /// The discriminant quadratic function on `N^#/N`.
    pub fn dqf(&self) -> Result<Dqf, LatticeError> {
        let det = self.det();
        if det.is_zero() {
            return Err(LatticeError::Singular);
        }
        let r = snf(&self.gram);
        // B = U⁻¹ D V⁻¹, so B⁻¹ U⁻¹ eᵢ = V eᵢ / dᵢ: the dual-lattice lift of
        // the i-th generator of ℤⁿ/Bℤⁿ.
        let mut torsion = Vec::new();
        let mut lifts = Vec::new();
        let mut numerators = Vec::new();
        let mut slots = Vec::new();
        for (i, d) in r.d.iter().enumerate() {
            if d == &BigInt::from(1) {
                continue;
            }
            let dd = d.to_u64().ok_or_else(|| {
                LatticeError::Group(crate::error::GroupError::InvariantTooLarge(d.to_string()))
            })?;
            torsion.push(dd);
            slots.push(i);
            let col = r.v.column(i);
            lifts.push(col.iter().map(|v| Rational::new(v.clone(), d.clone())).collect::<Vec<_>>());
            numerators.push((col, d.clone()));
        }
        let group = FinAbGroup::new(0, torsion)?;
        let q_gen = numerators
            .iter()
            .map(|(v, d)| QmodZ::new(self.quadratic_scaled(v, d)))
            .collect();
        let b = numerators
            .iter()
            .map(|(x, dx)| {
                numerators
                    .iter()
                    .map(|(y, dy)| QmodZ::new(Rational::new(self.form_int(x, y), dx * dy)))
                    .collect()
            })
            .collect();
        let form = FinQuadFunction::new(group, q_gen, b)?;
        Ok(Dqf {
            form,
            lifts,
            u: r.u,
            slots,
            gram: self.gram.clone(),
        })
    }

    /// All lattices `N ⊆ N₁ ⊆ N^#` on which `Q` stays integral, each paired
    /// with its image `I = N₁/N` in the discriminant group.
    ///
    /// Every isotropic `I` of the DQF is lifted to the dual lattice, the
    /// lattice `N + lift(I)` is built, and `Q` is checked integral on its
    /// basis. Order follows [`FinQuadFunction::isotropic_subgroups`].
    pub fn overlattices(&self, max_det: u64) -> Result<Vec<Overlattice>, LatticeError> {
        let det = self.det().abs();
        if det.is_zero() {
            return Err(LatticeError::Singular);
        }
        if det > BigInt::from(max_det) {
            return Err(LatticeError::BoundExceeded {
                det: det.to_string(),
                bound: max_det,
            });
        }
        let dqf = self.dqf()?;
        let mut out = Vec::new();
        for sub in dqf.form.isotropic_subgroups()? {
            let gens: Vec<Vec<Rational>> = sub.generators().iter().map(|g| dqf.lift(g)).collect();
            let h = self.span_with_unit_lattice(&gens, &det);
            let lattice = self.restrict_scaled(&h, &det)?;
            let basis = (0..h.rows())
                .map(|i| h.row(i).iter().map(|x| Rational::new(x.clone(), det.clone())).collect())
                .collect();
            out.push(Overlattice {
                index: sub.order(),
                basis,
                lattice,
                subgroup: sub,
            });
        }
        Ok(out)
    }

    /// Basis of `ℤⁿ + span(extra)` as integral rows over `den`, where every
    /// denominator in `extra` divides `den`.
    fn span_with_unit_lattice(&self, extra: &[Vec<Rational>], den: &BigInt) -> IntMatrix {
        let n = self.rank();
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
            .collect();
        for v in extra {
            rows.push(
                v.iter()
                    .map(|x| {
                        debug_assert!((den % x.denom()).is_zero());
                        x.numer() * (den / x.denom())
                    })
                    .collect(),
            );
        }
        hermite_rows(&IntMatrix::from_rows(&rows).expect("uniform rows"))
    }

    /// The quadratic lattice obtained by restricting `Q` to the lattice
    /// spanned by `basis`; fails unless `Q` is integral there.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Result<QuadLattice, LatticeError> {
        let den = basis
            .iter()
            .flatten()
            .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
        let rows: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|v| v.iter().map(|x| x.numer() * (&den / x.denom())).collect())
            .collect();
        let n = self.rank();
        let m = IntMatrix::from_rows(&rows).map_err(|_| LatticeError::FormLength {
            expected: n,
            found: basis.first().map_or(0, Vec::len),
        })?;
        if m.rows() > 0 && m.cols() != n {
            return Err(LatticeError::FormLength { expected: n, found: m.cols() });
        }
        self.restrict_scaled(&m, &den)
    }

    /// Restriction to the rows of `h / den`.
    fn restrict_scaled(&self, h: &IntMatrix, den: &BigInt) -> Result<QuadLattice, LatticeError> {
        let m = h.rows();
        let den2 = den * den;
        let mut gram = IntMatrix::zeros(m, m);
        let mut k = Vec::with_capacity(m);
        for i in 0..m {
            for j in i..m {
                let (q, r) = self.form_int(h.row(i), h.row(j)).div_rem(&den2);
                if !r.is_zero() {
                    return Err(LatticeError::NotIntegral);
                }
                gram[(i, j)] = q.clone();
                gram[(j, i)] = q;
            }
            let kv: BigInt = self.char_form.iter().zip(h.row(i)).map(|(a, x)| a * x).sum();
            let (q, r) = kv.div_rem(den);
            if !r.is_zero() {
                return Err(LatticeError::NotIntegral);
            }
            k.push(q);
        }
        QuadLattice::new(gram, k)
    }
}

/// `x = v / d` with `v` integral and `d > 0` the lcm of the denominators.
fn common_denominator(x: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = x.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let v = x.iter().map(|r| r.numer() * (&d / r.denom())).collect();
    (v, d)
}

/// Discriminant quadratic function of a nonsingular [`QuadLattice`], with
/// the dual-lattice lifts of its generators.
#[derive(Clone, Debug)]
pub struct Dqf {
    pub form: FinQuadFunction,
    /// Lift of each generator of `N^#/N` to `N^# ⊂ ℚⁿ` (lattice coordinates).
    pub lifts: Vec<Vec<Rational>>,
    u: IntMatrix,
    slots: Vec<usize>,
    gram: IntMatrix,
}

impl Dqf {
    pub fn group(&self) -> &FinAbGroup {
        self.form.group()
    }

    /// A representative in `N^#` of a group element.
    pub fn lift(&self, x: &GroupElement) -> Vec<Rational> {
        let n = self.gram.rows();
        let mut v = vec![Rational::zero(); n];
        for (c, lift) in x.torsion_coords().iter().zip(&self.lifts) {
            if *c == 0 {
                continue;
            }
            let c = Rational::from_integer(BigInt::from(*c));
            for (vi, li) in v.iter_mut().zip(lift) {
                *vi += &c * li;
            }
        }
        v
    }

    /// The class in `N^#/N` of a dual-lattice vector; `None` if `x ∉ N^#`.
    pub fn locate(&self, x: &[Rational]) -> Option<GroupElement> {
        let n = self.gram.rows();
        if x.len() != n {
            return None;
        }
        let mut w = Vec::with_capacity(n);
        for i in 0..n {
            let s: Rational = (0..n)
                .map(|j| Rational::from_integer(self.gram[(i, j)].clone()) * &x[j])
                .sum();
            if !s.is_integer() {
                return None;
            }
            w.push(s.to_integer());
        }
        let c = self.u.mul_vec(&w).ok()?;
        let coords: Vec<BigInt> = self.slots.iter().map(|&i| c[i].clone()).collect();
        self.form.group().element(Vec::new(), &coords).ok()
    }
}

/// An integral overlattice `N₁ ⊇ N` and the isotropic subgroup `N₁/N`.
#[derive(Clone, Debug)]
pub struct Overlattice {
    /// Basis rows of `N₁` in the coordinates of `N`.
    pub basis: Vec<Vec<Rational>>,
    /// `(N₁, Q|N₁)` in that basis.
    pub lattice: QuadLattice,
    pub subgroup: Subgroup,
    /// `[N₁ : N]`.
    pub index: u64,
}

#![allow(dead_code)]

use std::collections::BTreeSet;

use lcilift::algebra::{snf, IntMatrix, Rational};
use lcilift::finite::{FinAbGroup, FinQuadFunction};
use lcilift::lattice::QuadLattice;
use lcilift::resolution::ResolutionGraph;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn mat(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

// ---------------------------------------------------------------- corpora

/// Every sequence of length `1..=max_len` with entries in `lo..=hi`.
pub fn sequences(max_len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                (lo..=hi).map(move |d| {
                    let mut t = s.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The cusp corpus: cycles with `r ≤ 5`, `2 ≤ dᵢ ≤ 5`, negative definite.
pub fn cusp_corpus() -> Vec<Vec<u32>> {
    sequences(5, 2, 5)
        .into_iter()
        .filter(|s| s.iter().any(|&d| d >= 3))
        .collect()
}

/// Small-integer determinant by cofactor expansion (rank ≤ 3).
pub fn det_small(b: &[Vec<i64>]) -> i64 {
    match b.len() {
        0 => 1,
        1 => b[0][0],
        2 => b[0][0] * b[1][1] - b[0][1] * b[1][0],
        3 => {
            b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
                - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
                + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0])
        }
        _ => unreachable!(),
    }
}

/// Negative definiteness by Sylvester's criterion on leading minors.
pub fn neg_def_small(b: &[Vec<i64>]) -> bool {
    (1..=b.len()).all(|k| {
        let m: Vec<Vec<i64>> = b[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det_small(&m);
        if k % 2 == 1 {
            d < 0
        } else {
            d > 0
        }
    })
}

/// Negative definite symmetric Grams of rank `n ≤ 3`, entries in
/// `[-bound, bound]`, `|det| ≤ max_det`.
pub fn definite_grams(n: usize, bound: i64, max_det: i64) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    let r = -bound..=bound;
    let neg = -bound..=-1;
    match n {
        1 => {
            for a in neg {
                if -a <= max_det {
                    out.push(vec![vec![a]]);
                }
            }
        }
        2 => {
            for a in neg.clone() {
                for c in neg.clone() {
                    for b in r.clone() {
                        let det = a * c - b * b;
                        if det > 0 && det <= max_det {
                            out.push(vec![vec![a, b], vec![b, c]]);
                        }
                    }
                }
            }
        }
        3 => {
            for a in neg.clone() {
                for d in neg.clone() {
                    for b in r.clone() {
                        let m2 = a * d - b * b;
                        if m2 <= 0 {
                            continue;
                        }
                        for f in neg.clone() {
                            for c in r.clone() {
                                for e in r.clone() {
                                    // [[a, b, c], [b, d, e], [c, e, f]]
                                    let det = a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
                                    if det < 0 && -det <= max_det {
                                        out.push(vec![vec![a, b, c], vec![b, d, e], vec![c, e, f]]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        _ => unimplemented!("rank {n}"),
    }
    out
}

/// Characteristic forms with entries in `values` satisfying `Bᵢᵢ + Kᵢ` even.
pub fn parity_forms(b: &[Vec<i64>], values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for i in 0..b.len() {
        let ok: Vec<i64> = values
            .iter()
            .copied()
            .filter(|k| (b[i][i] + k).rem_euclid(2) == 0)
            .collect();
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                ok.iter().map(move |&k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

/// The lattice corpus for the overlattice correspondence. Ranks 1 and 2 use
/// every form `K` with entries in `[-6, 6]`; rank 3 uses `K ∈ {-1, 0, 1}³`.
pub fn nikulin_corpus() -> Vec<(Vec<Vec<i64>>, Vec<i64>)> {
    let all: Vec<i64> = (-6..=6).collect();
    let small: Vec<i64> = vec![-1, 0, 1];
    let mut out = Vec::new();
    for n in 1..=3 {
        let ks = if n < 3 { &all } else { &small };
        for b in definite_grams(n, 6, 200) {
            for k in parity_forms(&b, ks) {
                out.push((b.clone(), k));
            }
        }
    }
    out
}

// ---------------------------------------------------- overlattice oracle

/// An element `y/D` of `N^#/N` (rank ≤ 3), stored as `y mod D`, zero-padded.
type Rep = [i64; 3];

struct Packing {
    d: i64,
}

impl Packing {
    fn pack(&self, v: &[i64]) -> Rep {
        let mut r = [0; 3];
        for (x, y) in r.iter_mut().zip(v) {
            *x = y.rem_euclid(self.d);
        }
        r
    }

    fn add(&self, a: Rep, b: Rep) -> Rep {
        [(a[0] + b[0]) % self.d, (a[1] + b[1]) % self.d, (a[2] + b[2]) % self.d]
    }
}

fn adjugate(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| b[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * det_small(&minor);
        }
    }
    adj
}

fn span(p: &Packing, base: &BTreeSet<Rep>, g: Rep) -> BTreeSet<Rep> {
    let mut out = base.clone();
    let mut frontier: Vec<Rep> = base.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        let y = p.add(x, g);
        if out.insert(y) {
            frontier.push(y);
        }
    }
    out
}

fn form_num(b: &[Vec<i64>], x: &Rep, y: &Rep) -> i64 {
    let n = b.len();
    (0..n).map(|i| (0..n).map(|j| x[i] * b[i][j] * y[j]).sum::<i64>()).sum()
}

/// All subgroups `I ⊆ N^#/N` with `Q` integral on `N + I`, by brute force.
///
/// `N^#/N` is generated by the columns of `B⁻¹ = adj(B)/det`. Every subgroup
/// on which `Q` is integral is generated by elements `x` with `Q(x) ∈ ℤ`, so
/// all subgroups generated by such elements are built and each is tested on
/// every element and every pair.
pub fn oracle_integral_subgroups(b: &[Vec<i64>], k: &[i64]) -> BTreeSet<BTreeSet<Rep>> {
    let n = b.len();
    let det = det_small(b);
    let d = det.abs();
    let p = Packing { d };
    let adj = adjugate(b);
    let mut group: BTreeSet<Rep> = [[0; 3]].into_iter().collect();
    for j in 0..n {
        let col: Vec<i64> = (0..n).map(|i| adj[i][j] * det.signum()).collect();
        group = span(&p, &group, p.pack(&col));
    }
    assert_eq!(group.len() as i64, d, "|N^#/N| = |det|");

    // Q(y/D) = (yᵀBy + D·K·y) / 2D²
    let q_int = |y: Rep| {
        let num = form_num(b, &y, &y) + d * k.iter().zip(&y).map(|(a, c)| a * c).sum::<i64>();
        num.rem_euclid(2 * d * d) == 0
    };
    let b_int = |x: Rep, y: Rep| form_num(b, &x, &y).rem_euclid(d * d) == 0;

    let candidates: Vec<Rep> = group.iter().copied().filter(|&y| q_int(y)).collect();
    let trivial: BTreeSet<Rep> = [[0; 3]].into_iter().collect();
    let mut seen: BTreeSet<BTreeSet<Rep>> = [trivial.clone()].into_iter().collect();
    let mut queue = vec![trivial];
    while let Some(s) = queue.pop() {
        for &c in &candidates {
            if s.contains(&c) {
                continue;
            }
            let t = span(&p, &s, c);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    seen.into_iter()
        .filter(|s| s.iter().all(|&x| q_int(x)) && s.iter().all(|&x| s.iter().all(|&y| b_int(x, y))))
        .collect()
}

/// Image in `N^#/N` of the lattice spanned by `ℤⁿ` and rational rows.
pub fn image_of_rows(rows: &[Vec<Rational>], d: i64) -> BTreeSet<Rep> {
    let p = Packing { d };
    let mut out: BTreeSet<Rep> = [[0; 3]].into_iter().collect();
    for r in rows {
        out = span(&p, &out, p.pack(&rational_to_rep(r, d)));
    }
    out
}

/// `D·x mod D`, coordinatewise.
pub fn rational_to_rep(v: &[Rational], d: i64) -> Vec<i64> {
    v.iter()
        .map(|x| {
            let s = x * Rational::from_integer(BigInt::from(d));
            assert!(s.is_integer(), "denominator divides |det|");
            s.to_integer().to_i64().unwrap().rem_euclid(d)
        })
        .collect()
}

/// Checks one lattice against the oracle; `Err` describes the mismatch.
pub fn check_nikulin(b: &[Vec<i64>], k: &[i64]) -> Result<(), String> {
    let lat = QuadLattice::from_i64(b, k).map_err(|e| e.to_string())?;
    let d = det_small(b).abs();
    let expected = oracle_integral_subgroups(b, k);

    let dqf = lat.dqf().map_err(|e| e.to_string())?;
    let subgroup_image = |s: &lcilift::finite::Subgroup| {
        let lifts: Vec<Vec<Rational>> = s.generators().iter().map(|g| dqf.lift(g)).collect();
        image_of_rows(&lifts, d)
    };

    let over = lat.overlattices(10_000).map_err(|e| e.to_string())?;
    let mut from_lattices = BTreeSet::new();
    for o in &over {
        let img = image_of_rows(&o.basis, d);
        if subgroup_image(&o.subgroup) != img {
            return Err(format!("{b:?} {k:?}: overlattice paired with the wrong subgroup"));
        }
        if img.len() as u64 != o.index || o.subgroup.order() != o.index {
            return Err(format!("{b:?} {k:?}: index mismatch"));
        }
        let det1 = o.lattice.det().abs();
        if det1 * BigInt::from(o.index * o.index) != BigInt::from(d) {
            return Err(format!("{b:?} {k:?}: det(N1)·[N1:N]² ≠ det(N)"));
        }
        from_lattices.insert(img);
    }
    if from_lattices.len() != over.len() {
        return Err(format!("{b:?} {k:?}: repeated overlattice"));
    }

    let iso = dqf.form.isotropic_subgroups().map_err(|e| e.to_string())?;
    let from_subgroups: BTreeSet<BTreeSet<Rep>> = iso.iter().map(subgroup_image).collect();
    if from_subgroups.len() != iso.len() {
        return Err(format!("{b:?} {k:?}: isotropic subgroups repeat"));
    }

    if iso.len() != over.len() {
        return Err(format!("{b:?} {k:?}: {} isotropic vs {} overlattices", iso.len(), over.len()));
    }
    if from_lattices != expected {
        return Err(format!("{b:?} {k:?}: overlattices differ from oracle"));
    }
    if from_subgroups != expected {
        return Err(format!("{b:?} {k:?}: isotropic subgroups differ from oracle"));
    }
    Ok(())
}

// ------------------------------------------------------- random checks

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

/// `U·M·V = diag(d)`, `U`, `V` unimodular, `dᵢ ≥ 0` dividing `dᵢ₊₁`.
pub fn check_snf(m: &IntMatrix) -> Result<(), String> {
    let r = snf(m);
    let prod = &(&r.u * m) * &r.v;
    let diag = IntMatrix::diagonal(m.rows(), m.cols(), &r.d);
    if prod != diag {
        return Err(format!("U M V ≠ diag for {m}"));
    }
    for u in [&r.u, &r.v] {
        if u.det().unwrap().abs() != BigInt::one() {
            return Err(format!("non-unimodular transform for {m}"));
        }
    }
    if r.d.iter().any(|x| x.is_negative()) {
        return Err(format!("negative invariant for {m}"));
    }
    for w in r.d.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !ok {
            return Err(format!("divisibility fails for {m}: {:?}", r.d));
        }
    }
    Ok(())
}

/// `M·x = b` for integral `b = M·x₀`, and for random `b` either a verified
/// solution or a confirmed non-integral rational one.
pub fn check_solve(m: &IntMatrix, x0: &[BigInt], b_rand: &[BigInt]) -> Result<(), String> {
    if m.det().unwrap().is_zero() {
        return match m.solve_integer(x0) {
            Err(lcilift::AlgebraError::Singular) => Ok(()),
            other => Err(format!("singular {m} gave {other:?}")),
        };
    }
    let b = m.mul_vec(x0).unwrap();
    let x = m.solve_integer(&b).map_err(|e| format!("{m}: {e}"))?;
    if m.mul_vec(&x).unwrap() != b || x != x0 {
        return Err(format!("residual nonzero for {m}"));
    }
    match m.solve_integer(b_rand) {
        Ok(y) if m.mul_vec(&y).unwrap() == b_rand => Ok(()),
        Ok(_) => Err(format!("wrong solution for {m}")),
        Err(lcilift::AlgebraError::NoIntegralSolution) => {
            let inv = m.rational_inverse().unwrap();
            let integral = inv.iter().all(|row| {
                let s: Rational = row
                    .iter()
                    .zip(b_rand)
                    .map(|(a, c)| a * Rational::from_integer(c.clone()))
                    .sum();
                s.is_integer()
            });
            if integral {
                Err(format!("{m}: integral solution missed"))
            } else {
                Ok(())
            }
        }
        Err(e) => Err(format!("{m}: {e}")),
    }
}

/// A random nonsingular quadratic lattice of rank ≤ 3 with its DQF.
pub fn random_dqf(rng: &mut impl Rng) -> FinQuadFunction {
    loop {
        let n = rng.gen_range(1..=3);
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-6..=6);
                b[i][j] = v;
                b[j][i] = v;
            }
        }
        let det = det_small(&b);
        if det == 0 || det.abs() > 300 {
            continue;
        }
        let k: Vec<i64> = (0..n)
            .map(|i| 2 * rng.gen_range(-3..=3) + b[i][i].rem_euclid(2))
            .collect();
        return QuadLattice::from_i64(&b, &k).unwrap().dqf().unwrap().form;
    }
}

/// `q(x + y) − q(x) − q(y) = b(x, y)` on random pairs.
pub fn check_polarization(f: &FinQuadFunction, rng: &mut impl Rng, pairs: usize) -> Result<(), String> {
    let g: &FinAbGroup = f.group();
    let random_element = |rng: &mut dyn rand::RngCore| {
        let c: Vec<i64> = g
            .torsion_invariants()
            .iter()
            .map(|&m| rng.gen_range(0..m as i64))
            .collect();
        g.torsion_element(&c).unwrap()
    };
    for _ in 0..pairs {
        let x = random_element(rng);
        let y = random_element(rng);
        let s = g.add(&x, &y).unwrap();
        let lhs = f.evaluate(&s).unwrap() - f.evaluate(&x).unwrap() - f.evaluate(&y).unwrap();
        if lhs != f.bilinear(&x, &y).unwrap() {
            return Err(format!("polarization fails on {g}"));
        }
    }
    Ok(())
}

/// A random valid resolution graph.
pub fn random_graph(rng: &mut impl Rng) -> ResolutionGraph {
    if rng.gen_bool(0.3) {
        return ResolutionGraph::elliptic(rng.gen_range(1..=40)).unwrap();
    }
    loop {
        let r = rng.gen_range(2..=7);
        let seq: Vec<u32> = (0..r).map(|_| rng.gen_range(2..=9)).collect();
        if seq.iter().any(|&d| d >= 3) {
            return ResolutionGraph::cusp(seq).unwrap();
        }
    }
}

/// The link DQF of a numerically Gorenstein graph is a form (`k ≡ 0`), and
/// the canonical cycle is `−E`.
pub fn check_gorenstein(g: &ResolutionGraph) -> Result<(), String> {
    let (_, q) = g.link_homology().map_err(|e| e.to_string())?;
    if !q.is_form() {
        return Err(format!("{g}: linear part nonzero"));
    }
    let w = g.canonical_cycle().map_err(|e| e.to_string())?;
    if w != Some(vec![BigInt::from(-1); g.curves()]) {
        return Err(format!("{g}: canonical cycle {w:?}"));
    }
    Ok(())
}

pub fn q_value(f: &FinQuadFunction, coords: &[i64]) -> lcilift::algebra::QmodZ {
    f.evaluate(&f.group().torsion_element(coords).unwrap()).unwrap()
}

pub fn rational_vec(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter()
        .map(|&(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}

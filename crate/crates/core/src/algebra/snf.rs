//! Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Result of [`snf`]: `u * m * v == diag(d)` padded to the shape of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Invariant factors, `min(rows, cols)` of them, each dividing the next.
    /// Zeros (if any) come last.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smallest nonzero |entry| in the lower-right block starting at `k`, ties
/// broken by lowest (row, col).
fn pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Computes the Smith normal form of `m` together with unimodular `u`, `v`.
///
/// Deterministic: the pivot is always the smallest nonzero entry in the
/// remaining block, ties broken by lowest (row, col).
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);

    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = pivot(&a, k) else {
            break;
        };
        a.swap_rows(k, pi);
        u.swap_rows(k, pi);
        a.swap_cols(k, pj);
        v.swap_cols(k, pj);

        // Reduce row and column k; if a remainder survives, re-pivot.
        let mut dirty = false;
        for i in k + 1..rows {
            if a[(i, k)].is_zero() {
                continue;
            }
            let q = a[(i, k)].div_floor(&a[(k, k)]);
            let f = -q;
            a.add_row_multiple(i, k, &f);
            u.add_row_multiple(i, k, &f);
            dirty |= !a[(i, k)].is_zero();
        }
        for j in k + 1..cols {
            if a[(k, j)].is_zero() {
                continue;
            }
            let q = a[(k, j)].div_floor(&a[(k, k)]);
            let f = -q;
            a.add_col_multiple(j, k, &f);
            v.add_col_multiple(j, k, &f);
            dirty |= !a[(k, j)].is_zero();
        }
        if dirty {
            continue;
        }

        // Divisibility: the pivot must divide the whole remaining block.
        let offender = (k + 1..rows)
            .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&a[(i, j)] % &a[(k, k)]).is_zero());
        if let Some((i, _)) = offender {
            let one = BigInt::from(1);
            a.add_row_multiple(k, i, &one);
            u.add_row_multiple(k, i, &one);
            continue;
        }

        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }

    let d = (0..n).map(|i| a[(i, i)].clone()).collect();
    SnfResult { d, u, v }
}

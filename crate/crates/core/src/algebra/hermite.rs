use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::AlgebraError;

/// Row-style Hermite normal form of the row lattice of `m`.
///
/// Returns the nonzero rows of the echelon form: pivots positive, entries
/// above each pivot reduced into `[0, pivot)`. The rows form a basis of the
/// ℤ-span of the rows of `m`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down column c until only row r is nonzero.
        loop {
            let best = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()).then(i.cmp(&j)));
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &-q);
                done &= a[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            a.add_row_multiple(i, r, &-q);
        }
        pivots.push(c);
        r += 1;
    }
    let data = a.entries()[..r * cols].to_vec();
    IntMatrix::from_row_major(r, cols, data).expect("row count consistent")
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
    let inv = m.rational_inverse()?;
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, n);
    for (i, row) in inv.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            if !x.is_integer() {
                return Err(AlgebraError::NoIntegralSolution);
            }
            out[(i, j)] = x.to_integer();
        }
    }
    Ok(out)
}

/// Expresses each row of `sub` in the basis given by the rows of the square
/// matrix `basis`; fails if some row is not an integral combination.
pub fn coordinates_in_basis(sub: &IntMatrix, basis: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
    let inv = basis.rational_inverse()?;
    let n = basis.rows();
    let mut out = IntMatrix::zeros(sub.rows(), n);
    for i in 0..sub.rows() {
        for j in 0..n {
            let mut s = num_rational::BigRational::zero();
            for k in 0..n {
                s += num_rational::BigRational::from_integer(sub[(i, k)].clone()) * &inv[k][j];
            }
            if !s.is_integer() {
                return Err(AlgebraError::NoIntegralSolution);
            }
            out[(i, j)] = s.to_integer();
        }
    }
    Ok(out)
}

//! Exact integer and rational linear algebra.

mod hermite;
mod matrix;
mod qmodz;
mod snf;

pub use hermite::{coordinates_in_basis, hermite_rows, unimodular_inverse};
pub use matrix::{Inertia, IntMatrix};
pub use qmodz::QmodZ;
pub use snf::{snf, SnfResult};

/// Exact rationals; always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

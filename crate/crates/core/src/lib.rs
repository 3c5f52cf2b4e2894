//! Exact lattice-theoretic invariants for smoothings of simple elliptic and
//! cusp surface singularities.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: exact integer matrices, Smith/Hermite forms, ℚ/ℤ.
//! * [`finite`]: finite abelian groups, subgroups, quadratic functions.
//! * [`lattice`]: integral quadratic lattices, their discriminant quadratic
//!   functions and overlattices.
//! * [`resolution`]: resolution data of simple elliptic and cusp singularities.
//! * [`cusp`]: monodromy, duality and the cyclic lci cover of a cusp.
//! * [`classify`]: Milnor fibre invariants, permissibility of covers and the
//!   lci smoothing lifting classification.

pub mod algebra;
pub mod classify;
pub mod cusp;
pub mod error;
pub mod finite;
pub mod lattice;
pub mod resolution;

pub use error::{AlgebraError, ClassifyError, GraphError, GroupError, LatticeError};

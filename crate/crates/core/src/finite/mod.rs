//! Finite abelian groups and ℚ/ℤ-valued quadratic functions on them.

mod group;
mod quadratic;
mod subgroup;

pub use group::{FinAbGroup, GroupElement, ENUMERATION_LIMIT};
pub use quadratic::{FinQuadFunction, InducedForm};
pub use subgroup::{all_subgroups, Subgroup};

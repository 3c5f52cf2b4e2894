//! Command-line front end for `lcilift`: classification reports, cusp
//! duality, overlattice enumeration and golden corpora.
//!
//! Cycle entries are positive integers `d_i` standing for curves of
//! self-intersection `-d_i`: `3,3` is the cycle `[-3,-3]`.

pub mod commands;
pub mod corpus;
pub mod document;
pub mod render;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

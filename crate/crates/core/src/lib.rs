//! Tractability recognition, list-CSP solving and hardness certificates for
//! reflexive complete 2-edge-coloured graphs, with the matrix-partition and
//! full-homomorphism sandwich problems built on top.

pub mod classify;
pub mod decompose;
pub mod error;
pub mod graphs;
pub mod hardness;
pub mod homsearch;
pub mod polysolve;
pub mod sandwich;
mod scc;
#[cfg(test)]
mod testutil;
pub mod vset;

pub use error::{Error, Result};
pub use graphs::{ColouredGraph, Colours, Digraph, Entry, SimpleGraph, StarMatrix};
pub use vset::VertexSet;

//! Positive and negative square energies of graphs.
//!
//! `s⁺(G)` and `s⁻(G)` are the sums of squares of the positive and negative
//! adjacency eigenvalues. This crate computes them, builds the vertex
//! partitions and semidefinite witnesses that drive the known lower bounds,
//! and certifies those bounds on concrete graphs.

pub mod bounds;
pub mod decompose;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod sdp;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};

//! Dynamic graph coloring toolkit.
//!
//! A dynamic coloring is a proper coloring in which every vertex of degree
//! at least 2 sees at least two colors among its neighbours. This crate
//! provides exact solvers for small graphs, constructive colorings built from
//! Moser–Tardos resampling, and independent checkers for every certificate
//! the constructions emit.

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod lll;
pub mod rng;
pub mod subset;
pub mod verify;

pub use coloring::{Color, Coloring, ListAssignment};
pub use graph::{Graph, GraphError, Vertex};
pub use hypergraph::Hypergraph;
pub use subset::VertexSubset;

//! Ramsey numbers of disjoint copies: graph families, extremal colourings,
//! packing/tie/join detectors, absorption tiling and an exact arrowing solver.

pub mod bits;
pub mod canon;
pub mod colouring;
pub mod construct;
pub mod detect;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod procedures;
pub mod solver;

pub use bits::{BitSet, VertexBits, VertexSet};
pub use colouring::{Colour, PartitionSpec, TwoColouring};
pub use family::GraphFamily;
pub use graph::{DenseGraph, GraphError, Host, SmallGraph};

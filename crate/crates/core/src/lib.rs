//! Exact verification laboratory for b-fold list coloring.
//!
//! The crate builds a 16-vertex triangle-free planar gadget (and its
//! many-copy composition), decides b-fold list-colorability by exhaustive
//! symmetry-reduced search, and mechanically replays the counting argument
//! that blocks certain adversarial list assignments. Everything that feeds
//! a verdict is exact: rationals for the ε-arithmetic, bitmask search for
//! the solver, rotation-system face tracing for planarity certificates.

pub mod audit;
pub mod color;
pub mod embed;
pub mod exec;
pub mod fractional;
pub mod gadget;
pub mod graph;
pub mod solver;

pub use color::{ColorUniverse, FoldParams, ListAssignment, MultiColoring};
pub use graph::{Graph, VertexId};
pub use solver::{Budget, SolveOutcome, Verdict};

//! Polygonal 2-trees: recognition, cycle structure, and minimum average
//! stretch spanning trees.
//!
//! A polygonal 2-tree is built from a cycle by repeatedly gluing a path of
//! at least two edges (with fresh internal vertices) onto the endpoints of
//! an existing edge. Graphs in this class have a unique minimum cycle basis
//! (their induced cycles), and a minimum average stretch spanning tree can
//! be computed in O(n log n) by repeatedly discarding a cheapest external
//! edge. This crate implements:
//!
//! * [`graph`] — immutable graph container, edge sets, bridges,
//!   biconnected components, and BFS with removed-edge views;
//! * [`edgelist`] — the plain-text edge list exchange format;
//! * [`decomp`] — recognition via reverse ear peeling, producing a nice
//!   ear decomposition;
//! * [`cycles`] — induced cycles of a decomposition and GF(2) cycle-space
//!   checks;
//! * [`mast`] — the minimum average stretch spanning tree engine, stretch
//!   accounting, fundamental cycles, and the support oracle;
//! * [`oracle`] — brute-force references (spanning tree enumeration,
//!   exhaustive stretch minimization, Horton-style minimum cycle basis,
//!   series-parallel recognition) used to validate the fast paths;
//! * [`generator`] — reproducible random and k-gonal instance generators;
//! * [`bench`] — a small scaling harness around the solve pipeline;
//! * [`samples`] — hand-built example instances used throughout the tests.

pub mod bench;
pub mod cycles;
pub mod decomp;
pub mod edgelist;
pub mod generator;
pub mod graph;
pub mod mast;
pub mod oracle;
pub mod samples;

pub use cycles::{Cycle, InducedCycleSet};
pub use decomp::{Ear, NiceEarDecomposition, RecognitionOutcome, RejectionReason};
pub use graph::{EdgeId, EdgeSet, Graph, GraphError, VertexId};
pub use mast::{Fraction, MastResult};

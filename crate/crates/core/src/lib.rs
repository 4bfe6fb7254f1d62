//! Per-vertex homomorphism orbit counting on bounded-degeneracy graphs.
//!
//! Given a small connected pattern `H` and a large sparse graph `G`, the
//! engine computes for every orbit `psi` of `Aut(H)` and every vertex `v` of
//! `G` the number of homomorphisms `H -> G` that send some vertex of `psi`
//! to `v`. Patterns whose longest induced path between same-orbit vertices
//! (LIPCO) is at most 5 are counted in near-linear time; others are refused.
//!
//! * [`graph`]: edge-list loading, degeneracy ordering and orientation.
//! * [`pattern`]: orbits, LICL/LIPCO, merged patterns, acyclic orientations.
//! * [`decomposition`]: width-1 DAG-tree decompositions.
//! * [`engine`]: the dynamic program and the inclusion–exclusion step.
//! * [`oracle`]: brute-force ground truth for small inputs.
//! * [`cli`]: the `analyze`, `count`, `verify` and `bench` commands.

pub mod cli;
pub mod decomposition;
pub mod engine;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod pattern;

pub use engine::{orbit_homs, vertex_homs, EngineConfig, EngineError, OrbitHomTable};
pub use graph::{load_graph, Graph, OrientedGraph};
pub use pattern::{parse_pattern, Pattern};

//! The counting engine: bag enumeration, extension dictionaries,
//! vertex-centric counts and orbit counts.

use thiserror::Error;

use crate::decomposition::DecompositionError;

pub mod bag;
pub mod dictionary;
pub mod orbit;
pub mod vertex;

pub use bag::{enumerate_bag_homomorphisms, BagLayout, HomKey};
pub use dictionary::{build_extension_dictionary, ExtensionDictionary, PreparedOrientation};
pub use orbit::{
    aggregate, orbit_homs, orbit_homs_with, MergeEntry, MergedClass, OrbitCountPlan, OrbitCounts,
    OrbitHomTable, Term,
};
pub use vertex::{
    vertex_homs, vertex_homs_for_orientation, vertex_homs_with, VertexCountPlan, VertexHomTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// The pattern is on the hard side of the dichotomy for this count.
    #[error("{measure} is {value} > 5; refusing to count")]
    DichotomyViolation { measure: &'static str, value: usize },
    #[error("count exceeds the 64-bit accumulator range")]
    ArithmeticOverflow,
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// Execution settings for the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Worker threads; 1 runs everything on the calling thread.
    pub threads: usize,
}

impl EngineConfig {
    pub fn sequential() -> EngineConfig {
        EngineConfig { threads: 1 }
    }
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        EngineConfig { threads }
    }
}

//! Vertex-centric homomorphism counts.

use rayon::prelude::*;

use super::dictionary::PreparedOrientation;
use super::{EngineConfig, EngineError};
use crate::decomposition::width1_decomposition;
use crate::graph::{degeneracy_orientation, Graph, OrientedGraph};
use crate::pattern::{acyclic_orientations, bits, full_mask, licl, DagPattern, Pattern};

/// `counts[h][v]`: homomorphisms mapping pattern vertex `h` to graph vertex
/// `v`. Rows outside the requested set are left at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexHomTable {
    counts: Vec<Vec<u64>>,
}

impl VertexHomTable {
    pub fn zeros(k: usize, n: usize) -> VertexHomTable {
        VertexHomTable {
            counts: vec![vec![0; n]; k],
        }
    }

    pub fn pattern_vertices(&self) -> usize {
        self.counts.len()
    }

    pub fn row(&self, h: usize) -> &[u64] {
        &self.counts[h]
    }

    pub fn get(&self, h: usize, v: usize) -> u64 {
        self.counts[h][v]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// `Σ_v counts[h][v]`.
    pub fn column_sum(&self, h: usize) -> Result<u64, EngineError> {
        checked_sum(&self.counts[h])
    }

    fn add(&mut self, h: usize, v: usize, amount: u64) -> Result<(), EngineError> {
        let cell = &mut self.counts[h][v];
        *cell = cell
            .checked_add(amount)
            .ok_or(EngineError::ArithmeticOverflow)?;
        Ok(())
    }

    fn merge(mut self, other: VertexHomTable) -> Result<VertexHomTable, EngineError> {
        for (mine, theirs) in self.counts.iter_mut().zip(other.counts) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                *a = a.checked_add(b).ok_or(EngineError::ArithmeticOverflow)?;
            }
        }
        Ok(self)
    }
}

pub(crate) fn checked_sum(values: &[u64]) -> Result<u64, EngineError> {
    values
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or(EngineError::ArithmeticOverflow)
}

/// Adds `VertexHom_{P,h}` into `acc` for every `h` in `wanted`.
///
/// Walks the decomposition's nodes in order; re-rooting at node `b` makes
/// the root dictionary cover `Reach(b)`, and each pending pattern vertex is
/// filled by the first rooting that covers it.
pub(crate) fn accumulate_orientation(
    prepared: &PreparedOrientation,
    g: &OrientedGraph,
    wanted: u32,
    acc: &mut VertexHomTable,
) -> Result<(), EngineError> {
    let mut pending = wanted;
    for node in 0..prepared.tree.node_count() {
        let layout = &prepared.layouts[node];
        let covered = layout.reach() & pending;
        if covered == 0 {
            continue;
        }
        pending &= !covered;
        let targets: Vec<(usize, usize)> = bits(covered)
            .map(|h| (h, layout.slot(h).expect("covered vertex lies in the bag")))
            .collect();
        let tree = prepared.tree.rerooted(node);
        prepared.fold_root(&tree, g, &mut |key, ext| {
            for &(h, slot) in &targets {
                acc.add(h, key[slot], ext)?;
            }
            Ok(())
        })?;
    }
    debug_assert_eq!(pending, 0, "every vertex is reachable from a source");
    Ok(())
}

/// `VertexHom_P` for one oriented pattern.
pub fn vertex_homs_for_orientation(
    p: &DagPattern,
    g: &OrientedGraph,
) -> Result<VertexHomTable, EngineError> {
    let tree = width1_decomposition(p)?;
    let prepared = PreparedOrientation::new(p.clone(), tree);
    let mut acc = VertexHomTable::zeros(p.vertex_count(), g.vertex_count());
    accumulate_orientation(&prepared, g, full_mask(p.vertex_count()), &mut acc)?;
    Ok(acc)
}

/// Every acyclic orientation of a pattern with its decomposition, reusable
/// across input graphs.
#[derive(Debug, Clone)]
pub struct VertexCountPlan {
    pattern: Pattern,
    orientations: Vec<PreparedOrientation>,
}

impl VertexCountPlan {
    /// Fails with `DichotomyViolation` when the pattern's longest induced
    /// cycle exceeds 5.
    pub fn new(h: &Pattern) -> Result<VertexCountPlan, EngineError> {
        let cycle = licl(h);
        if cycle > 5 {
            return Err(EngineError::DichotomyViolation {
                measure: "LICL",
                value: cycle,
            });
        }
        let orientations = acyclic_orientations(h)
            .into_iter()
            .map(|p| {
                let tree = width1_decomposition(&p)?;
                Ok(PreparedOrientation::new(p, tree))
            })
            .collect::<Result<Vec<_>, EngineError>>()?;
        Ok(VertexCountPlan {
            pattern: h.clone(),
            orientations,
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn orientations(&self) -> &[PreparedOrientation] {
        &self.orientations
    }

    /// Sums `VertexHom_P` over all orientations for the pattern vertices in
    /// `wanted`, on an already oriented graph.
    pub fn run_oriented(
        &self,
        g: &OrientedGraph,
        wanted: u32,
        config: &EngineConfig,
    ) -> Result<VertexHomTable, EngineError> {
        let k = self.pattern.vertex_count();
        let n = g.vertex_count();
        let wanted = wanted & full_mask(k);
        if wanted == 0 {
            return Ok(VertexHomTable::zeros(k, n));
        }
        if config.threads <= 1 {
            let mut acc = VertexHomTable::zeros(k, n);
            for prepared in &self.orientations {
                accumulate_orientation(prepared, g, wanted, &mut acc)?;
            }
            return Ok(acc);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            self.orientations
                .par_iter()
                .try_fold(
                    || VertexHomTable::zeros(k, n),
                    |mut acc, prepared| {
                        accumulate_orientation(prepared, g, wanted, &mut acc)?;
                        Ok(acc)
                    },
                )
                .try_reduce(|| VertexHomTable::zeros(k, n), VertexHomTable::merge)
        })
    }

    pub fn run(&self, g: &Graph, config: &EngineConfig) -> Result<VertexHomTable, EngineError> {
        let o = degeneracy_orientation(g);
        self.run_oriented(&o, full_mask(self.pattern.vertex_count()), config)
    }
}

/// `VertexHom_H(G)`: orient `g` by degeneracy and sum the vertex counts of
/// every acyclic orientation of `h`.
pub fn vertex_homs(h: &Pattern, g: &Graph) -> Result<VertexHomTable, EngineError> {
    vertex_homs_with(h, g, &EngineConfig::sequential())
}

pub fn vertex_homs_with(
    h: &Pattern,
    g: &Graph,
    config: &EngineConfig,
) -> Result<VertexHomTable, EngineError> {
    VertexCountPlan::new(h)?.run(g, config)
}

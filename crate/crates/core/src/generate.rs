//! Seeded random graph generators for benchmarks and tests.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Deterministic generator for a given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph of degeneracy at most `kappa` (for `kappa >= 1`).
///
/// Vertex `i > 0` attaches to a uniformly random earlier vertex, which
/// builds a random spanning tree, and then draws `kappa - 1` more earlier
/// vertices as extra back-edges (repeats collapse). Every vertex has at most
/// `kappa` earlier neighbors, so peeling in reverse index order certifies the
/// bound.
pub fn bounded_degeneracy_graph<R: Rng>(n: usize, kappa: usize, rng: &mut R) -> Graph {
    let kappa = kappa.max(1);
    let mut edges = Vec::with_capacity(n * kappa);
    for i in 1..n {
        edges.push((rng.gen_range(0..i), i));
        for _ in 1..kappa {
            let j = rng.gen_range(0..i);
            edges.push((j, i));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Uniform random simple graph with exactly `m` edges (capped at the
/// complete graph).
pub fn random_graph<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let m = m.min(pairs.len());
    let chosen = sample(rng, pairs.len(), m);
    let edges: Vec<(usize, usize)> = chosen.iter().map(|i| pairs[i]).collect();
    Graph::from_edges(n, &edges)
}

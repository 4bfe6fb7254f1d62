//! Exhaustive ground truth.
//!
//! Every homomorphism is enumerated explicitly by backtracking and the
//! counts are tallied straight from their definitions. Nothing here shares
//! code with the counting engine.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, OrientedGraph};
use crate::pattern::{automorphism_orbits, bits, DagPattern, Pattern};

/// Default preflight budget on `n^k` candidate maps.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute force needs {estimate} candidate maps, budget is {budget}")]
    BudgetExceeded { estimate: u64, budget: u64 },
}

fn preflight(n: usize, k: usize, budget: u64) -> Result<(), OracleError> {
    let estimate = (n as u64).saturating_pow(k as u32);
    if estimate > budget {
        return Err(OracleError::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

/// Pattern side of the search: `arcs[a]` is the mask of `b` with a required
/// arc `a -> b`. An undirected edge is a pair of opposite arcs.
struct Constraints {
    arcs: Vec<u32>,
}

/// Target side: sorted forward and backward adjacency lists.
struct Target {
    fwd: Vec<Vec<usize>>,
    back: Vec<Vec<usize>>,
}

impl Target {
    fn undirected(g: &Graph) -> Target {
        let fwd: Vec<Vec<usize>> = (0..g.vertex_count())
            .map(|v| g.neighbors(v).to_vec())
            .collect();
        Target {
            back: fwd.clone(),
            fwd,
        }
    }

    fn directed(o: &OrientedGraph) -> Target {
        let n = o.vertex_count();
        let fwd: Vec<Vec<usize>> = (0..n)
            .map(|v| o.out_neighbors(v).iter().map(|&w| w as usize).collect())
            .collect();
        let mut back = vec![Vec::new(); n];
        for (u, row) in fwd.iter().enumerate() {
            for &w in row {
                back[w].push(u);
            }
        }
        Target { fwd, back }
    }

    fn has_arc(&self, a: usize, b: usize) -> bool {
        self.fwd[a].binary_search(&b).is_ok()
    }
}

/// Breadth-first vertex order so that every vertex after the first has an
/// earlier neighbor (patterns are connected).
fn search_order(c: &Constraints) -> Vec<usize> {
    let k = c.arcs.len();
    let mut order = vec![0usize];
    let mut placed = 1u32;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let mut around = c.arcs[v];
        for (w, &m) in c.arcs.iter().enumerate() {
            if m >> v & 1 == 1 {
                around |= 1 << w;
            }
        }
        for w in bits(around & !placed) {
            placed |= 1 << w;
            order.push(w);
        }
        i += 1;
    }
    // disconnected leftovers are enumerated over every target vertex
    for v in 0..k {
        if placed >> v & 1 == 0 {
            order.push(v);
        }
    }
    order
}

fn for_each_map(c: &Constraints, t: &Target, visit: &mut dyn FnMut(&[usize])) {
    let k = c.arcs.len();
    let n = t.fwd.len();
    if n == 0 {
        return;
    }
    let order = search_order(c);
    let all: Vec<usize> = (0..n).collect();
    let mut image = vec![usize::MAX; k];

    fn rec(
        c: &Constraints,
        t: &Target,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        all: &[usize],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if depth == order.len() {
            visit(image);
            return;
        }
        let x = order[depth];
        let earlier = &order[..depth];
        // candidate pool from one placed neighbor, if any
        let mut pool: &[usize] = all;
        for &y in earlier {
            if c.arcs[y] >> x & 1 == 1 {
                pool = &t.fwd[image[y]];
                break;
            }
            if c.arcs[x] >> y & 1 == 1 {
                pool = &t.back[image[y]];
                break;
            }
        }
        for &cand in pool {
            let ok = earlier.iter().all(|&y| {
                (c.arcs[y] >> x & 1 == 0 || t.has_arc(image[y], cand))
                    && (c.arcs[x] >> y & 1 == 0 || t.has_arc(cand, image[y]))
            });
            if ok {
                image[x] = cand;
                rec(c, t, order, depth + 1, image, all, visit);
            }
        }
        image[x] = usize::MAX;
    }

    rec(c, t, &order, 0, &mut image, &all, visit);
}

fn undirected_constraints(h: &Pattern) -> Constraints {
    Constraints {
        arcs: (0..h.vertex_count()).map(|v| h.neighbor_mask(v)).collect(),
    }
}

/// Calls `visit` with every homomorphism `h -> g` as an image table.
pub fn for_each_homomorphism(
    h: &Pattern,
    g: &Graph,
    budget: u64,
    visit: &mut dyn FnMut(&[usize]),
) -> Result<(), OracleError> {
    preflight(g.vertex_count(), h.vertex_count(), budget)?;
    for_each_map(&undirected_constraints(h), &Target::undirected(g), visit);
    Ok(())
}

/// `Hom(H, G)`.
pub fn oracle_hom(h: &Pattern, g: &Graph, budget: u64) -> Result<u64, OracleError> {
    let mut count = 0u64;
    for_each_homomorphism(h, g, budget, &mut |_| count += 1)?;
    Ok(count)
}

/// Number of arc-preserving maps from the oriented pattern into `o`.
pub fn oracle_dag_hom(p: &DagPattern, o: &OrientedGraph, budget: u64) -> Result<u64, OracleError> {
    preflight(o.vertex_count(), p.vertex_count(), budget)?;
    let c = Constraints {
        arcs: (0..p.vertex_count()).map(|v| p.out_mask(v)).collect(),
    };
    let mut count = 0u64;
    for_each_map(&c, &Target::directed(o), &mut |_| count += 1);
    Ok(count)
}

/// Hom total plus per-vertex and per-orbit tables, from one enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTables {
    pub hom: u64,
    /// `vertex[h][v]`: homomorphisms with `h -> v`.
    pub vertex: Vec<Vec<u64>>,
    /// `orbit[i][v]`: homomorphisms sending at least one vertex of orbit `i`
    /// to `v`, orbits indexed as in `automorphism_orbits`.
    pub orbit: Vec<Vec<u64>>,
}

pub fn oracle_tables(h: &Pattern, g: &Graph, budget: u64) -> Result<OracleTables, OracleError> {
    let n = g.vertex_count();
    let k = h.vertex_count();
    let orbits = automorphism_orbits(h);
    let mut tables = OracleTables {
        hom: 0,
        vertex: vec![vec![0; n]; k],
        orbit: vec![vec![0; n]; orbits.len()],
    };
    let mut touched: Vec<usize> = Vec::with_capacity(k);
    for_each_homomorphism(h, g, budget, &mut |img| {
        tables.hom += 1;
        for (x, &v) in img.iter().enumerate() {
            tables.vertex[x][v] += 1;
        }
        for (i, orbit) in orbits.orbits().iter().enumerate() {
            touched.clear();
            for &x in orbit {
                if !touched.contains(&img[x]) {
                    touched.push(img[x]);
                }
            }
            for &v in &touched {
                tables.orbit[i][v] += 1;
            }
        }
    })?;
    Ok(tables)
}

pub fn oracle_vertex_homs(
    h: &Pattern,
    g: &Graph,
    budget: u64,
) -> Result<Vec<Vec<u64>>, OracleError> {
    Ok(oracle_tables(h, g, budget)?.vertex)
}

pub fn oracle_orbit_homs(
    h: &Pattern,
    g: &Graph,
    budget: u64,
) -> Result<Vec<Vec<u64>>, OracleError> {
    Ok(oracle_tables(h, g, budget)?.orbit)
}

/// The orbit vertices a homomorphism sends to `v`, sorted.
pub fn signature(image: &[usize], orbit: &[usize], v: usize) -> Vec<usize> {
    let mut sig: Vec<usize> = orbit.iter().copied().filter(|&x| image[x] == v).collect();
    sig.sort_unstable();
    sig
}

/// How many homomorphisms have each nonempty signature at `(orbit, v)`.
pub fn oracle_signature_histogram(
    h: &Pattern,
    g: &Graph,
    orbit: &[usize],
    v: usize,
    budget: u64,
) -> Result<BTreeMap<Vec<usize>, u64>, OracleError> {
    let mut hist = BTreeMap::new();
    for_each_homomorphism(h, g, budget, &mut |img| {
        let sig = signature(img, orbit, v);
        if !sig.is_empty() {
            *hist.entry(sig).or_insert(0) += 1;
        }
    })?;
    Ok(hist)
}

/// For every graph vertex `v`, the number of homomorphisms sending all of
/// `set` to `v`.
pub fn oracle_pinned_homs(
    h: &Pattern,
    g: &Graph,
    set: &[usize],
    budget: u64,
) -> Result<Vec<u64>, OracleError> {
    let mut counts = vec![0u64; g.vertex_count()];
    for_each_homomorphism(h, g, budget, &mut |img| {
        let v = img[set[0]];
        if set.iter().all(|&x| img[x] == v) {
            counts[v] += 1;
        }
    })?;
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degeneracy_orientation;
    use crate::pattern::{acyclic_orientations, fixtures::*};

    fn k(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn hom_examples() {
        assert_eq!(oracle_hom(&clique(3), &k(3), DEFAULT_BUDGET).unwrap(), 6);
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
        assert_eq!(oracle_hom(&clique(2), &g, DEFAULT_BUDGET).unwrap(), 8);
        assert_eq!(oracle_hom(&path(3), &k(3), DEFAULT_BUDGET).unwrap(), 12);
        assert_eq!(
            oracle_hom(&clique(3), &Graph::from_edges(0, &[]), DEFAULT_BUDGET).unwrap(),
            0
        );
    }

    #[test]
    fn table_examples() {
        let t = oracle_tables(&clique(2), &k(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.orbit, vec![vec![4, 4, 4]]);
        assert_eq!(t.vertex, vec![vec![2, 2, 2], vec![2, 2, 2]]);

        let t = oracle_tables(&clique(3), &k(4), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.hom, 24);
        assert_eq!(t.orbit, vec![vec![18; 4]]);

        let edgeless = Graph::from_edges(4, &[]);
        let t = oracle_tables(&cycle(4), &edgeless, DEFAULT_BUDGET).unwrap();
        assert!(t.orbit.iter().flatten().all(|&c| c == 0));
    }

    #[test]
    fn budget_is_a_preflight() {
        let err = oracle_hom(&path(8), &k(20), 1000).unwrap_err();
        assert_eq!(
            err,
            OracleError::BudgetExceeded {
                estimate: 20u64.pow(8),
                budget: 1000
            }
        );
    }

    #[test]
    fn signature_examples() {
        let hist =
            oracle_signature_histogram(&clique(2), &k(3), &[0, 1], 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(hist.len(), 2);
        assert_eq!(hist[&vec![0]], 2);
        assert_eq!(hist[&vec![1]], 2);

        let hist =
            oracle_signature_histogram(&clique(3), &k(4), &[0, 1, 2], 0, DEFAULT_BUDGET).unwrap();
        assert!(hist.keys().all(|s| s.len() == 1));

        let c4 = cycle(4).to_graph();
        let hist =
            oracle_signature_histogram(&cycle(4), &c4, &[0, 1, 2, 3], 0, DEFAULT_BUDGET).unwrap();
        assert!(hist.get(&vec![0, 2]).copied().unwrap_or(0) > 0);
    }

    #[test]
    fn orientation_partition_small() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 0)]);
        let o = degeneracy_orientation(&g);
        for h in [path(3), cycle(4), clique(3)] {
            let total: u64 = acyclic_orientations(&h)
                .iter()
                .map(|p| oracle_dag_hom(p, &o, DEFAULT_BUDGET).unwrap())
                .sum();
            assert_eq!(total, oracle_hom(&h, &g, DEFAULT_BUDGET).unwrap());
        }
    }
}

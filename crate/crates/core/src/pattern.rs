//! Small-pattern combinatorics: automorphism orbits, induced cycles and
//! paths, independent sets inside orbits, vertex merging, acyclic
//! orientations and isomorphism classes.
//!
//! Patterns are tiny (at most [`HARD_K_MAX`] vertices, [`DEFAULT_K_MAX`]
//! unless raised), so everything here is exhaustive search over adjacency
//! bitmasks.

use std::cell::Cell;
use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{load_graph, Graph, ParseError};

/// Default cap on pattern size. The factorial-time searches in this module
/// stay in the millisecond range up to here.
pub const DEFAULT_K_MAX: usize = 8;

/// Absolute cap: adjacency rows are `u32` masks and orientations are keyed by
/// a `u128` edge bitmask.
pub const HARD_K_MAX: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern has {k} vertices, limit is {limit}")]
    PatternTooLarge { k: usize, limit: usize },
    #[error("pattern must have at least one vertex")]
    Empty,
    #[error("pattern is not connected")]
    Disconnected,
    #[error("self-loop at pattern vertex {0}")]
    SelfLoop(usize),
    #[error("pattern edge ({0}, {1}) out of range")]
    OutOfRange(usize, usize),
    #[error("merge set {0:?} is empty, out of range or not independent")]
    InvalidMergeSet(Vec<usize>),
    #[error("orientation contains a directed cycle")]
    Cyclic,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Connected simple pattern graph on vertices `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    adj: Vec<u32>,
}

impl Pattern {
    /// Validates against [`DEFAULT_K_MAX`].
    pub fn new(k: usize, edges: &[(usize, usize)]) -> Result<Pattern, PatternError> {
        Pattern::with_limit(k, edges, DEFAULT_K_MAX)
    }

    pub fn with_limit(
        k: usize,
        edges: &[(usize, usize)],
        k_max: usize,
    ) -> Result<Pattern, PatternError> {
        let limit = k_max.min(HARD_K_MAX);
        if k > limit {
            return Err(PatternError::PatternTooLarge { k, limit });
        }
        if k_max > DEFAULT_K_MAX && k > DEFAULT_K_MAX {
            log::warn!(
                "pattern has {k} vertices; orbit, orientation and LIPCO searches scale as k!"
            );
        }
        let p = Pattern::build(k, edges)?;
        if !p.is_connected() {
            return Err(PatternError::Disconnected);
        }
        Ok(p)
    }

    fn build(k: usize, edges: &[(usize, usize)]) -> Result<Pattern, PatternError> {
        if k == 0 {
            return Err(PatternError::Empty);
        }
        let mut adj = vec![0u32; k];
        for &(u, v) in edges {
            if u >= k || v >= k {
                return Err(PatternError::OutOfRange(u, v));
            }
            if u == v {
                return Err(PatternError::SelfLoop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Pattern { adj })
    }

    pub fn from_graph(g: &Graph, k_max: usize) -> Result<Pattern, PatternError> {
        let edges: Vec<_> = g.edges().collect();
        Pattern::with_limit(g.vertex_count(), &edges, k_max)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbor set of `v` as a bitmask.
    pub fn neighbor_mask(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.vertex_count();
        (0..k)
            .flat_map(|u| {
                bits(self.adj[u])
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.vertex_count(), &self.edges())
    }

    pub fn to_edge_list(&self) -> String {
        self.to_graph().to_edge_list()
    }

    fn is_connected(&self) -> bool {
        let full = full_mask(self.vertex_count());
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & full == full
    }

    /// Edge-preserving relabeling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Pattern {
        let mut adj = vec![0u32; self.vertex_count()];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Pattern { adj }
    }
}

/// Parses a pattern from the graph edge-list format.
pub fn parse_pattern(text: &str, k_max: usize) -> Result<Pattern, PatternError> {
    let g = load_graph(text)?;
    Pattern::from_graph(&g, k_max)
}

pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

pub(crate) fn full_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

// ---------------------------------------------------------------------------
// Isomorphisms and orbits

/// Backtracking bijection search from `a` onto `b`. `fixed` pins some images
/// up front. Calls `visit` for every isomorphism; stops when it returns false.
fn search_isomorphisms(
    a: &Pattern,
    b: &Pattern,
    fixed: &[(usize, usize)],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let k = a.vertex_count();
    if k != b.vertex_count() || a.edge_count() != b.edge_count() {
        return;
    }
    let mut image = vec![usize::MAX; k];
    let mut used = 0u32;
    for &(x, y) in fixed {
        if a.degree(x) != b.degree(y) || used >> y & 1 == 1 {
            return;
        }
        image[x] = y;
        used |= 1 << y;
    }
    for &(x, _) in fixed {
        for &(z, _) in fixed {
            if a.has_edge(x, z) != b.has_edge(image[x], image[z]) {
                return;
            }
        }
    }
    let free: Vec<usize> = (0..k).filter(|&v| image[v] == usize::MAX).collect();

    fn rec(
        a: &Pattern,
        b: &Pattern,
        free: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut u32,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == free.len() {
            return visit(image);
        }
        let x = free[depth];
        for y in 0..b.vertex_count() {
            if *used >> y & 1 == 1 || a.degree(x) != b.degree(y) {
                continue;
            }
            let consistent = (0..a.vertex_count())
                .filter(|&z| image[z] != usize::MAX)
                .all(|z| a.has_edge(x, z) == b.has_edge(y, image[z]));
            if !consistent {
                continue;
            }
            image[x] = y;
            *used |= 1 << y;
            let go_on = rec(a, b, free, depth + 1, image, used, visit);
            image[x] = usize::MAX;
            *used &= !(1 << y);
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(a, b, &free, 0, &mut image, &mut used, visit);
}

/// An isomorphism `a -> b` as an image table, if one exists.
pub fn find_isomorphism(a: &Pattern, b: &Pattern) -> Option<Vec<usize>> {
    find_rooted_isomorphism(a, b, &[])
}

/// An isomorphism `a -> b` that respects the given `(a_vertex, b_vertex)` pins.
pub fn find_rooted_isomorphism(
    a: &Pattern,
    b: &Pattern,
    pins: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut found = None;
    search_isomorphisms(a, b, pins, &mut |img| {
        found = Some(img.to_vec());
        false
    });
    found
}

/// Every automorphism of `h`, each as an image table. The identity is always
/// included.
pub fn automorphisms(h: &Pattern) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    search_isomorphisms(h, h, &[], &mut |img| {
        all.push(img.to_vec());
        true
    });
    all
}

/// Partition of the pattern's vertices into automorphism orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Sorted orbits, ordered by representative (their smallest vertex).
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Index into [`orbits`](Self::orbits) of the orbit holding `v`.
    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbit_of[v]
    }

    pub fn representative(&self, orbit: usize) -> usize {
        self.orbits[orbit][0]
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbit_of[u] == self.orbit_of[v]
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Orbits of `Aut(h)`: union `v` with `sigma(v)` for every automorphism.
pub fn automorphism_orbits(h: &Pattern) -> OrbitPartition {
    let k = h.vertex_count();
    let mut parent: Vec<usize> = (0..k).collect();
    for sigma in automorphisms(h) {
        for (v, &w) in sigma.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut orbit_of = vec![0usize; k];
    let mut index_of_root = vec![usize::MAX; k];
    for (v, slot) in orbit_of.iter_mut().enumerate() {
        let r = find(&mut parent, v);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[index_of_root[r]].push(v);
        *slot = index_of_root[r];
    }
    debug_assert!(orbits
        .iter()
        .all(|o| o.iter().all(|&v| h.degree(v) == h.degree(o[0]))));
    OrbitPartition { orbits, orbit_of }
}

// ---------------------------------------------------------------------------
// Induced cycles and paths

/// Walks every induced path starting at `start`. For each path calls
/// `on_path(path)`; for each induced cycle closing back at `start` calls
/// `on_cycle(length)`. Paths are extended only through vertices accepted by
/// `allowed`.
fn walk_induced_paths(
    h: &Pattern,
    start: usize,
    allowed: u32,
    on_path: &mut dyn FnMut(&[usize]),
    on_cycle: &mut dyn FnMut(usize),
) {
    fn rec(
        h: &Pattern,
        path: &mut Vec<usize>,
        on_path_mask: u32,
        allowed: u32,
        on_path: &mut dyn FnMut(&[usize]),
        on_cycle: &mut dyn FnMut(usize),
    ) {
        on_path(path);
        let last = *path.last().unwrap();
        let start = path[0];
        // vertices on the path other than the last one
        let interior = on_path_mask & !(1 << last);
        for w in bits(h.neighbor_mask(last) & allowed & !on_path_mask) {
            let touches = h.neighbor_mask(w) & interior;
            if touches == 0 {
                path.push(w);
                rec(h, path, on_path_mask | 1 << w, allowed, on_path, on_cycle);
                path.pop();
            } else if touches == 1 << start && path.len() >= 2 {
                // w closes a chordless cycle through start
                on_cycle(path.len() + 1);
            }
        }
    }
    let mut path = vec![start];
    rec(h, &mut path, 1 << start, allowed, on_path, on_cycle);
}

/// Length (in edges) of the longest chordless cycle, 0 for a forest.
pub fn licl(h: &Pattern) -> usize {
    let k = h.vertex_count();
    let mut best = 0;
    for s in 0..k {
        // s is the smallest vertex of every cycle found from it
        let allowed = full_mask(k) & !full_mask(s + 1);
        walk_induced_paths(h, s, allowed, &mut |_| {}, &mut |len| best = best.max(len));
    }
    best
}

/// Longest induced path, in edges, joining two vertices of the same orbit.
/// When both ends coincide the path is an induced cycle through that vertex.
/// 0 if no such path exists.
pub fn lipco(h: &Pattern) -> usize {
    lipco_with_orbits(h, &automorphism_orbits(h))
}

pub fn lipco_with_orbits(h: &Pattern, orbits: &OrbitPartition) -> usize {
    let k = h.vertex_count();
    let best = Cell::new(0);
    for s in 0..k {
        walk_induced_paths(
            h,
            s,
            full_mask(k),
            &mut |path| {
                let end = *path.last().unwrap();
                if path.len() >= 2 && orbits.same_orbit(s, end) {
                    best.set(best.get().max(path.len() - 1));
                }
            },
            &mut |len| best.set(best.get().max(len)),
        );
    }
    best.get()
}

// ---------------------------------------------------------------------------
// Independent sets and merging

/// All nonempty independent subsets of `orbit`, ordered by size and then
/// lexicographically. Each set is sorted.
pub fn orbit_independent_sets(h: &Pattern, orbit: &[usize]) -> Vec<Vec<usize>> {
    let mut members = orbit.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut sets = Vec::new();
    for size in 1..=members.len() {
        for combo in members.iter().copied().combinations(size) {
            let mask: u32 = combo.iter().map(|&v| 1u32 << v).sum();
            if combo.iter().all(|&v| h.neighbor_mask(v) & mask == 0) {
                sets.push(combo);
            }
        }
    }
    sets
}

/// A pattern obtained by contracting an independent set into one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedPattern {
    pub base: Pattern,
    /// The contracted vertex inside `base`.
    pub merged_vertex: usize,
    pub source_set: Vec<usize>,
    /// `(-1)^(|S|+1)`.
    pub sign: i64,
}

/// Contracts the independent set `s` into a single vertex. The merged vertex
/// takes the slot of `min(s)`; the remaining vertices keep their relative
/// order and are renumbered densely.
pub fn merge_pattern(h: &Pattern, s: &[usize]) -> Result<MergedPattern, PatternError> {
    let k = h.vertex_count();
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    let invalid = || PatternError::InvalidMergeSet(s.to_vec());
    if set.is_empty() || set.iter().any(|&v| v >= k) {
        return Err(invalid());
    }
    let mask: u32 = set.iter().map(|&v| 1u32 << v).sum();
    if set.iter().any(|&v| h.neighbor_mask(v) & mask != 0) {
        return Err(invalid());
    }

    let anchor = set[0];
    let mut relabel = vec![0usize; k];
    let mut next = 0;
    for (v, slot) in relabel.iter_mut().enumerate() {
        if mask >> v & 1 == 1 && v != anchor {
            continue;
        }
        *slot = next;
        next += 1;
    }
    let merged_vertex = relabel[anchor];
    for &v in &set {
        relabel[v] = merged_vertex;
    }
    let edges: Vec<(usize, usize)> = h
        .edges()
        .into_iter()
        .map(|(u, v)| (relabel[u], relabel[v]))
        .collect();
    let base = Pattern::build(next, &edges)?;
    let sign = if set.len() % 2 == 1 { 1 } else { -1 };
    Ok(MergedPattern {
        base,
        merged_vertex,
        source_set: set,
        sign,
    })
}

// ---------------------------------------------------------------------------
// Acyclic orientations

/// A pattern with every edge directed, guaranteed acyclic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DagPattern {
    out: Vec<u32>,
    inn: Vec<u32>,
}

impl DagPattern {
    /// Builds from arcs `(tail, head)`; rejects cycles.
    pub fn new(k: usize, arcs: &[(usize, usize)]) -> Result<DagPattern, PatternError> {
        if k == 0 {
            return Err(PatternError::Empty);
        }
        if k > HARD_K_MAX {
            return Err(PatternError::PatternTooLarge {
                k,
                limit: HARD_K_MAX,
            });
        }
        let mut out = vec![0u32; k];
        let mut inn = vec![0u32; k];
        for &(u, v) in arcs {
            if u >= k || v >= k {
                return Err(PatternError::OutOfRange(u, v));
            }
            if u == v {
                return Err(PatternError::SelfLoop(u));
            }
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
        }
        let p = DagPattern { out, inn };
        if p.topological_order().is_none() {
            return Err(PatternError::Cyclic);
        }
        Ok(p)
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn out_mask(&self, v: usize) -> u32 {
        self.out[v]
    }

    pub fn in_mask(&self, v: usize) -> u32 {
        self.inn[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    /// Arcs `(tail, head)` sorted lexicographically.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| bits(self.out[u]).map(move |v| (u, v)))
            .collect()
    }

    /// Kahn's algorithm taking the smallest ready vertex first, so the order
    /// is unique for a given DAG. `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let k = self.vertex_count();
        let mut placed = 0u32;
        let mut order = Vec::with_capacity(k);
        while order.len() < k {
            let ready = (0..k).find(|&v| placed >> v & 1 == 0 && self.inn[v] & !placed == 0)?;
            placed |= 1 << ready;
            order.push(ready);
        }
        Some(order)
    }

    /// The undirected pattern underneath.
    pub fn underlying(&self) -> Pattern {
        let adj = (0..self.vertex_count())
            .map(|v| self.out[v] | self.inn[v])
            .collect();
        Pattern { adj }
    }
}

/// Every acyclic orientation of `h`, without duplicates.
///
/// Each of the `k!` vertex orders induces one orientation (edges point from
/// earlier to later); orientations are deduplicated by their edge-direction
/// bitmask and returned in increasing bitmask order.
pub fn acyclic_orientations(h: &Pattern) -> Vec<DagPattern> {
    let k = h.vertex_count();
    let edges = h.edges();
    let mut seen: BTreeSet<u128> = BTreeSet::new();
    let mut position = vec![0usize; k];
    for order in (0..k).permutations(k) {
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut key = 0u128;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if position[u] < position[v] {
                key |= 1 << i;
            }
        }
        seen.insert(key);
    }
    seen.into_iter()
        .map(|key| {
            let arcs: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if key >> i & 1 == 1 { (u, v) } else { (v, u) })
                .collect();
            DagPattern::new(k, &arcs).expect("orientation from a vertex order is acyclic")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Isomorphism classes

/// One isomorphism class of a pattern family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: Pattern,
    /// Indices into the input list.
    pub members: Vec<usize>,
    /// Sum of the members' signs.
    pub tally: i64,
}

/// Groups `(pattern, sign)` pairs into isomorphism classes, in order of first
/// appearance, with the signed multiplicity of each class.
pub fn isomorphism_classes(patterns: &[(Pattern, i64)]) -> Vec<IsoClass> {
    let mut classes: Vec<IsoClass> = Vec::new();
    for (i, (p, sign)) in patterns.iter().enumerate() {
        match classes
            .iter_mut()
            .find(|c| find_isomorphism(p, &c.representative).is_some())
        {
            Some(c) => {
                c.members.push(i);
                c.tally += sign;
            }
            None => classes.push(IsoClass {
                representative: p.clone(),
                members: vec![i],
                tally: *sign,
            }),
        }
    }
    classes
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(
            Pattern::new(9, &[]).unwrap_err(),
            PatternError::PatternTooLarge { k: 9, limit: 8 }
        );
        assert!(
            Pattern::with_limit(9, &(1..9).map(|i| (i - 1, i)).collect::<Vec<_>>(), 10).is_ok()
        );
        assert_eq!(
            Pattern::new(3, &[(0, 1)]).unwrap_err(),
            PatternError::Disconnected
        );
        assert_eq!(
            Pattern::new(2, &[(1, 1)]).unwrap_err(),
            PatternError::SelfLoop(1)
        );
        assert_eq!(Pattern::new(0, &[]).unwrap_err(), PatternError::Empty);
        assert!(Pattern::new(1, &[]).is_ok());
        assert!(matches!(
            parse_pattern("0 0", 8),
            Err(PatternError::Parse(_))
        ));
        assert_eq!(parse_pattern("0 1\n1 2\n", 8).unwrap(), path(3));
    }

    #[test]
    fn orbit_examples() {
        let o = automorphism_orbits(&path(7));
        assert_eq!(o.len(), 4);
        assert_eq!(o.orbits(), &[vec![0, 6], vec![1, 5], vec![2, 4], vec![3]]);

        let o = automorphism_orbits(&clique(3));
        assert_eq!(o.orbits(), &[vec![0, 1, 2]]);

        let o = automorphism_orbits(&path(3));
        assert_eq!(o.orbits(), &[vec![0, 2], vec![1]]);

        let o = automorphism_orbits(&path7_triangle());
        assert_eq!(o.len(), 7);
        assert!(o.same_orbit(6, 7));
    }

    #[test]
    fn automorphism_group_sizes() {
        assert_eq!(automorphisms(&clique(4)).len(), 24);
        assert_eq!(automorphisms(&cycle(5)).len(), 10);
        assert_eq!(automorphisms(&path(4)).len(), 2);
    }

    #[test]
    fn licl_examples() {
        assert_eq!(licl(&cycle(6)), 6);
        assert_eq!(licl(&path(5)), 0);
        assert_eq!(licl(&clique(4)), 3);
        assert_eq!(licl(&path7_triangle()), 3);
        // diamond: two triangles sharing an edge, the 4-cycle has a chord
        let diamond = Pattern::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(licl(&diamond), 3);
    }

    #[test]
    fn lipco_examples() {
        assert_eq!(lipco(&path(7)), 6);
        assert_eq!(lipco(&path7_triangle()), 3);
        assert_eq!(lipco(&path(6)), 5);
        assert_eq!(lipco(&cycle(4)), 4);
        assert_eq!(lipco(&clique(2)), 1);
        assert_eq!(lipco(&Pattern::new(1, &[]).unwrap()), 0);
    }

    #[test]
    fn c4_lipco_by_enumeration() {
        // C4 is vertex transitive: longest induced path between any two of
        // its vertices is 2 (opposite) and every vertex lies on the 4-cycle.
        let c4 = cycle(4);
        let o = automorphism_orbits(&c4);
        assert_eq!(o.len(), 1);
        assert_eq!(licl(&c4), 4);
        assert!(lipco(&c4) >= licl(&c4));
    }

    #[test]
    fn independent_set_examples() {
        let sets = orbit_independent_sets(&cycle(4), &[0, 1, 2, 3]);
        assert_eq!(
            sets,
            vec![vec![0], vec![1], vec![2], vec![3], vec![0, 2], vec![1, 3]]
        );
        assert_eq!(orbit_independent_sets(&clique(3), &[0, 1, 2]).len(), 3);
        assert_eq!(
            orbit_independent_sets(&clique(2), &[0, 1]),
            vec![vec![0], vec![1]]
        );
    }

    #[test]
    fn merge_examples() {
        let m = merge_pattern(&cycle(4), &[0, 2]).unwrap();
        assert_eq!(m.sign, -1);
        assert_eq!(m.base.vertex_count(), 3);
        assert_eq!(m.base.degree(m.merged_vertex), 2);
        assert!(find_isomorphism(&m.base, &path(3)).is_some());

        let m = merge_pattern(&path(7), &[0, 6]).unwrap();
        assert_eq!(m.sign, -1);
        assert!(find_isomorphism(&m.base, &cycle(6)).is_some());

        let h = path7_triangle();
        let m = merge_pattern(&h, &[3]).unwrap();
        assert_eq!(m.sign, 1);
        assert_eq!(m.base, h);
        assert_eq!(m.merged_vertex, 3);

        assert!(matches!(
            merge_pattern(&cycle(4), &[0, 1]),
            Err(PatternError::InvalidMergeSet(_))
        ));
        assert!(merge_pattern(&cycle(4), &[]).is_err());
        assert!(merge_pattern(&cycle(4), &[7]).is_err());
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(acyclic_orientations(&clique(2)).len(), 2);
        assert_eq!(acyclic_orientations(&clique(3)).len(), 6);
        assert_eq!(acyclic_orientations(&path(3)).len(), 4);
        assert_eq!(acyclic_orientations(&cycle(4)).len(), 14);
        assert_eq!(acyclic_orientations(&clique(4)).len(), 24);
        for p in acyclic_orientations(&cycle(5)) {
            assert!(p.topological_order().is_some());
            assert_eq!(p.underlying(), cycle(5));
        }
    }

    #[test]
    fn dag_pattern_rejects_cycles() {
        assert_eq!(
            DagPattern::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err(),
            PatternError::Cyclic
        );
        let p = DagPattern::new(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(p.topological_order().unwrap(), vec![2, 1, 0]);
    }

    #[test]
    fn iso_class_examples() {
        let c4 = cycle(4);
        let merged: Vec<(Pattern, i64)> = [[0, 2], [1, 3]]
            .iter()
            .map(|s| {
                let m = merge_pattern(&c4, s).unwrap();
                (m.base, m.sign)
            })
            .collect();
        let classes = isomorphism_classes(&merged);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].tally, -2);

        let classes = isomorphism_classes(&[(path(4), 1), (path(4), 1)]);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].tally, 2);

        let classes = isomorphism_classes(&[(clique(3), 1), (path(3), 1)]);
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn rooted_isomorphism_respects_pins() {
        let p = path(3);
        assert!(find_rooted_isomorphism(&p, &p, &[(0, 2)]).is_some());
        assert!(find_rooted_isomorphism(&p, &p, &[(0, 1)]).is_none());
    }
}

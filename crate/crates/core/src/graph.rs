//! Sparse undirected input graphs, degeneracy orderings and acyclic
//! orientations.
//!
//! Both [`Graph`] and [`OrientedGraph`] are stored in compressed sparse row
//! form: one flat `targets` array plus per-vertex `offsets`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use thiserror::Error;

/// Why a line of an edge-list document was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    SelfLoop,
    Syntax,
    /// A vertex id at or beyond the count given in the `n <count>` header.
    OutOfRange,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::SelfLoop => f.write_str("self_loop"),
            ParseErrorKind::Syntax => f.write_str("syntax"),
            ParseErrorKind::OutOfRange => f.write_str("out_of_range"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error ({kind}) on line {line}: {detail}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// 1-based line number.
    pub line: usize,
    pub detail: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, line: usize, detail: impl Into<String>) -> Self {
        ParseError {
            kind,
            line,
            detail: detail.into(),
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// direction) are collapsed. Panics on a self-loop or an endpoint `>= n`;
    /// use [`load_graph`] for untrusted input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            assert!(u != v, "self-loop at vertex {u}");
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }

        // sort and dedup each row, then compact
        let mut compact = Vec::with_capacity(targets.len());
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        for v in 0..n {
            let row = &mut targets[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            let start = compact.len();
            for &w in row.iter() {
                if compact.len() == start || *compact.last().unwrap() != w {
                    compact.push(w);
                }
            }
            new_offsets.push(compact.len());
        }
        Graph {
            offsets: new_offsets,
            targets: compact,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted, duplicate-free neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Renders the graph in the edge-list text format accepted by
    /// [`load_graph`], including the `n <count>` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A parsed edge-list document before vertex ids are fixed.
struct RawEdgeList {
    declared_n: Option<usize>,
    edges: Vec<(u64, u64)>,
}

fn parse_edge_list(text: &str) -> Result<RawEdgeList, ParseError> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = content.split_whitespace();
        let Some(first) = tokens.next() else {
            continue;
        };
        let second = tokens.next();
        if tokens.next().is_some() {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                line_no,
                "expected exactly two tokens",
            ));
        }
        let Some(second) = second else {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                line_no,
                "expected two tokens",
            ));
        };

        if first == "n" {
            if seen_content {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    line_no,
                    "the `n <count>` header must be the first non-comment line",
                ));
            }
            let count = second.parse::<usize>().map_err(|_| {
                ParseError::new(
                    ParseErrorKind::Syntax,
                    line_no,
                    format!("bad vertex count {second:?}"),
                )
            })?;
            declared_n = Some(count);
            seen_content = true;
            continue;
        }
        seen_content = true;

        let parse_id = |tok: &str| {
            tok.parse::<u64>().map_err(|_| {
                ParseError::new(
                    ParseErrorKind::Syntax,
                    line_no,
                    format!("bad vertex id {tok:?}"),
                )
            })
        };
        let u = parse_id(first)?;
        let v = parse_id(second)?;
        if u == v {
            return Err(ParseError::new(
                ParseErrorKind::SelfLoop,
                line_no,
                format!("self-loop at vertex {u}"),
            ));
        }
        if let Some(n) = declared_n {
            if u >= n as u64 || v >= n as u64 {
                return Err(ParseError::new(
                    ParseErrorKind::OutOfRange,
                    line_no,
                    format!("edge ({u}, {v}) exceeds declared vertex count {n}"),
                ));
            }
        }
        edges.push((u, v));
    }
    Ok(RawEdgeList { declared_n, edges })
}

/// Parses an edge-list document into a [`Graph`] with dense ids.
///
/// Format: one `u v` pair per line, `#` starts a comment, blank lines are
/// ignored, and an optional first line `n <count>` fixes the vertex count
/// (so trailing isolated vertices survive). Without the header the vertex
/// count is `1 + max id`.
pub fn load_graph(text: &str) -> Result<Graph, ParseError> {
    let raw = parse_edge_list(text)?;
    let max_id = raw.edges.iter().map(|&(u, v)| u.max(v)).max();
    let n = match (raw.declared_n, max_id) {
        (Some(n), _) => n,
        (None, Some(m)) => {
            usize::try_from(m).map_err(|_| {
                ParseError::new(ParseErrorKind::Syntax, 0, "vertex id does not fit in usize")
            })? + 1
        }
        (None, None) => 0,
    };
    let edges: Vec<(usize, usize)> = raw
        .edges
        .iter()
        .map(|&(u, v)| (u as usize, v as usize))
        .collect();
    Ok(Graph::from_edges(n, &edges))
}

/// A graph loaded from sparse external ids, with the table mapping dense
/// ids back to the original ones.
#[derive(Debug, Clone)]
pub struct RemappedGraph {
    pub graph: Graph,
    /// `external_ids[dense] = original id`, in order of first appearance.
    pub external_ids: Vec<u64>,
}

/// Like [`load_graph`] but assigns dense ids in order of first appearance.
/// An `n <count>` header is accepted and ignored.
pub fn load_graph_remapped(text: &str) -> Result<RemappedGraph, ParseError> {
    let raw = parse_edge_list(text)?;
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut external_ids = Vec::new();
    let mut dense = |id: u64| {
        *index.entry(id).or_insert_with(|| {
            external_ids.push(id);
            external_ids.len() - 1
        })
    };
    let edges: Vec<(usize, usize)> = raw
        .edges
        .iter()
        .map(|&(u, v)| (dense(u), dense(v)))
        .collect();
    let graph = Graph::from_edges(external_ids.len(), &edges);
    Ok(RemappedGraph {
        graph,
        external_ids,
    })
}

/// A min-degree peeling order and the degeneracy it certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    /// Vertices in the order they were peeled.
    pub order: Vec<usize>,
    pub kappa: usize,
}

impl DegeneracyOrdering {
    /// `position[v]` = index of `v` in `order`.
    pub fn positions(&self) -> Vec<usize> {
        let mut position = vec![0usize; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            position[v] = i;
        }
        position
    }
}

/// Matula–Beck peeling: repeatedly remove a vertex of minimum remaining
/// degree, breaking ties by smallest id.
///
/// The frontier is a lazy min-heap keyed by `(degree, id)`; stale entries are
/// skipped when popped. Every edge pushes at most one entry, so the run is
/// `O((n + m) log n)`.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrdering {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).map(|v| Reverse((degree[v], v))).collect();
    let mut order = Vec::with_capacity(n);
    let mut kappa = 0;

    while let Some(Reverse((d, v))) = heap.pop() {
        if removed[v] || d != degree[v] {
            continue;
        }
        removed[v] = true;
        order.push(v);
        kappa = kappa.max(d);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                heap.push(Reverse((degree[w], w)));
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    DegeneracyOrdering { order, kappa }
}

/// Acyclic orientation of a [`Graph`] with out-neighbor lists.
///
/// Stored as 32-bit CSR: the engine's inner loops are bound by how much of
/// this structure stays in cache.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    max_outdegree: usize,
}

impl OrientedGraph {
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    /// Sorted out-neighbors of `v`.
    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        // out-degrees are at most the degeneracy, so a scan beats bisection
        self.out_neighbors(u).contains(&(v as u32))
    }

    pub fn max_outdegree(&self) -> usize {
        self.max_outdegree
    }

    /// Kahn's algorithm; `None` if the digraph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indegree = vec![0usize; n];
        for &w in &self.targets {
            indegree[w as usize] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in self.out_neighbors(v) {
                let w = w as usize;
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// Directs every edge from the endpoint peeled earlier to the one peeled
/// later. The out-degree of `v` is its degree at removal time, so the
/// maximum out-degree equals `o.kappa`.
pub fn orient_acyclic(g: &Graph, o: &DegeneracyOrdering) -> OrientedGraph {
    let n = g.vertex_count();
    assert_eq!(o.order.len(), n, "ordering does not match graph");
    assert!(
        2 * g.edge_count() < u32::MAX as usize,
        "graph too large for 32-bit ids"
    );
    let position = o.positions();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let mut targets = Vec::with_capacity(g.edge_count());
    let mut max_outdegree = 0;
    for v in 0..n {
        let start = targets.len();
        targets.extend(
            g.neighbors(v)
                .iter()
                .filter(|&&w| position[w] > position[v])
                .map(|&w| w as u32),
        );
        max_outdegree = max_outdegree.max(targets.len() - start);
        offsets.push(targets.len() as u32);
    }
    OrientedGraph {
        offsets,
        targets,
        max_outdegree,
    }
}

/// Degeneracy orientation in one step.
pub fn degeneracy_orientation(g: &Graph) -> OrientedGraph {
    orient_acyclic(g, &degeneracy_order(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn loads_triangle() {
        let g = load_graph("0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn collapses_duplicate_edges() {
        let g = load_graph("0 1\n0 1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let g = load_graph("0 1\n1 0\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_self_loop() {
        let err = load_graph("0 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SelfLoop);
        assert_eq!(err.line, 1);
    }

    #[test]
    fn rejects_bad_tokens() {
        for text in ["0 x", "0", "0 1 2", "-1 2", "n 3\n0 1\nn 4"] {
            assert_eq!(
                load_graph(text).unwrap_err().kind,
                ParseErrorKind::Syntax,
                "{text:?}"
            );
        }
        assert_eq!(
            load_graph("n 2\n0 5").unwrap_err().kind,
            ParseErrorKind::OutOfRange
        );
    }

    #[test]
    fn header_and_comments() {
        let g = load_graph("# a comment\nn 6\n0 1 # trailing\n\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(5), 0);
        assert_eq!(load_graph("").unwrap().vertex_count(), 0);
        assert_eq!(load_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn remapping_sparse_ids() {
        let r = load_graph_remapped("1000 7\n7 42\n").unwrap();
        assert_eq!(r.external_ids, vec![1000, 7, 42]);
        assert_eq!(r.graph.vertex_count(), 3);
        assert!(r.graph.has_edge(1, 2));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_order(&k(3)).kappa, 2);
        let star = Graph::from_edges(6, &[(5, 0), (5, 1), (5, 2), (5, 3), (5, 4)]);
        assert_eq!(degeneracy_order(&star).kappa, 1);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(degeneracy_order(&c4).kappa, 2);
        assert_eq!(degeneracy_order(&Graph::from_edges(0, &[])).kappa, 0);
    }

    #[test]
    fn smallest_id_tie_break() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        // all degree 2: peel 0, then 1 and 3 drop to 1, peel 1, then 2 (deg 1), then 3
        assert_eq!(degeneracy_order(&c4).order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn orientation_examples() {
        let o = degeneracy_orientation(&k(3));
        let mut outdeg: Vec<usize> = (0..3).map(|v| o.out_neighbors(v).len()).collect();
        outdeg.sort_unstable();
        assert_eq!(outdeg, vec![0, 1, 2]);

        // hub has the largest id, so every leaf is peeled first
        let star = Graph::from_edges(6, &[(5, 0), (5, 1), (5, 2), (5, 3), (5, 4)]);
        let o = degeneracy_orientation(&star);
        for leaf in 0..5 {
            assert_eq!(o.out_neighbors(leaf), &[5]);
        }
        assert!(o.out_neighbors(5).is_empty());
        assert_eq!(o.max_outdegree(), 1);

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let o = degeneracy_orientation(&c4);
        assert_eq!(o.max_outdegree(), 2);
        assert!(o.topological_order().is_some());
        assert_eq!(o.out_neighbors(0), &[1, 3]);
    }

    #[test]
    fn isolated_vertices_kept() {
        let g = load_graph("n 4\n0 1").unwrap();
        let o = degeneracy_orientation(&g);
        assert_eq!(o.vertex_count(), 4);
        assert_eq!(o.arc_count(), 1);
    }
}

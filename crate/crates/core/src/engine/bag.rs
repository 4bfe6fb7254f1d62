//! Homomorphisms of a single-source bag `P[{s}]` into an oriented graph.

use smallvec::SmallVec;

use crate::decomposition::reach;
use crate::graph::OrientedGraph;
use crate::pattern::{bits, DagPattern};

/// Images of the bag's pattern vertices, in the bag's fixed vertex order.
pub type HomKey = SmallVec<[usize; 8]>;

/// Fixed vertex order of a bag `P[{s}]` and the arc constraints between
/// positions.
///
/// Vertices of `Reach(s)` are listed in the pattern's global topological
/// order, so `s` comes first and every arc points to a later position.
/// Because the order is global, restricting two bags' keys to a shared
/// vertex set yields comparable keys.
#[derive(Debug, Clone)]
pub struct BagLayout {
    source: usize,
    reach: u32,
    vertices: Vec<usize>,
    /// `slot[h]` = position of pattern vertex `h`, or `usize::MAX`.
    slot: Vec<usize>,
    /// For each position, the earlier positions with an arc into it.
    preds: Vec<Vec<usize>>,
}

impl BagLayout {
    pub fn new(p: &DagPattern, topo: &[usize], source: usize) -> BagLayout {
        let k = p.vertex_count();
        let reach = reach(p, 1 << source);
        let vertices: Vec<usize> = topo
            .iter()
            .copied()
            .filter(|&v| reach >> v & 1 == 1)
            .collect();
        debug_assert_eq!(vertices[0], source);
        let mut slot = vec![usize::MAX; k];
        for (i, &v) in vertices.iter().enumerate() {
            slot[v] = i;
        }
        let preds = vertices
            .iter()
            .map(|&v| {
                let mut ps: Vec<usize> = bits(p.in_mask(v) & reach).map(|u| slot[u]).collect();
                ps.sort_unstable();
                ps
            })
            .collect();
        BagLayout {
            source,
            reach,
            vertices,
            slot,
            preds,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    /// `Reach(s)` as a bitmask.
    pub fn reach(&self) -> u32 {
        self.reach
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Key position of pattern vertex `h`, if it belongs to the bag.
    pub fn slot(&self, h: usize) -> Option<usize> {
        self.slot.get(h).copied().filter(|&s| s != usize::MAX)
    }

    /// Key positions of the vertices in `mask` (which must lie inside the
    /// bag), in global topological order.
    pub fn positions_of(&self, mask: u32) -> Vec<usize> {
        debug_assert_eq!(mask & !self.reach, 0);
        (0..self.vertices.len())
            .filter(|&i| mask >> self.vertices[i] & 1 == 1)
            .collect()
    }
}

/// Receives the homomorphisms of a bag as they are built.
pub trait BagVisitor {
    /// Called once position `pos` of `image` has been assigned (positions
    /// after `pos` hold stale values). Returning false abandons every
    /// homomorphism with this prefix.
    fn keep(&mut self, _pos: usize, _image: &[usize]) -> bool {
        true
    }

    fn visit(&mut self, image: &[usize]);
}

struct Collect<'f, F>(&'f mut F);

impl<F: FnMut(&[usize])> BagVisitor for Collect<'_, F> {
    fn visit(&mut self, image: &[usize]) {
        (self.0)(image)
    }
}

/// Calls `visit` with every homomorphism of the bag into `g`.
///
/// The source ranges over all vertices; each later position is drawn from
/// the out-neighbors of its first predecessor's image and checked against
/// the remaining predecessors, so the output has size `O(d^(|Reach(s)|-1) n)`.
pub fn for_each_bag_hom<F: FnMut(&[usize])>(layout: &BagLayout, g: &OrientedGraph, visit: &mut F) {
    walk_bag_homs(layout, g, &mut Collect(visit));
}

/// Like [`for_each_bag_hom`], with prefix pruning through
/// [`BagVisitor::keep`].
pub fn walk_bag_homs<V: BagVisitor>(layout: &BagLayout, g: &OrientedGraph, visitor: &mut V) {
    let len = layout.vertices.len();
    let mut image: HomKey = SmallVec::from_elem(0, len);
    for v in 0..g.vertex_count() {
        image[0] = v;
        if visitor.keep(0, &image) {
            extend(layout, g, 1, &mut image, visitor);
        }
    }
}

fn extend<V: BagVisitor>(
    layout: &BagLayout,
    g: &OrientedGraph,
    pos: usize,
    image: &mut HomKey,
    visitor: &mut V,
) {
    if pos == layout.vertices.len() {
        visitor.visit(image);
        return;
    }
    let preds = &layout.preds[pos];
    let first = image[preds[0]];
    for &cand in g.out_neighbors(first) {
        let cand = cand as usize;
        if preds[1..].iter().all(|&q| g.has_arc(image[q], cand)) {
            image[pos] = cand;
            if visitor.keep(pos, image) {
                extend(layout, g, pos + 1, image, visitor);
            }
        }
    }
}

/// Collects every homomorphism of `P[{source}]` into `g`.
pub fn enumerate_bag_homomorphisms(
    p: &DagPattern,
    source: usize,
    g: &OrientedGraph,
) -> (BagLayout, Vec<HomKey>) {
    let topo = p.topological_order().expect("DagPattern is acyclic");
    let layout = BagLayout::new(p, &topo, source);
    let mut keys = Vec::new();
    for_each_bag_hom(&layout, g, &mut |k| keys.push(SmallVec::from_slice(k)));
    (layout, keys)
}

//! Extension counts over a width-1 DAG-tree decomposition.
//!
//! For the root bag `b` and every homomorphism `phi` of `P[b]`, the
//! dictionary holds `ext(P[down(b)]; phi)`: the number of homomorphisms of
//! the down-closure that agree with `phi`. Children are processed first and
//! each child's table is collapsed to the vertices it shares with its
//! parent, so the parent needs one lookup per child.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::bag::{walk_bag_homs, BagLayout, BagVisitor, HomKey};
use super::EngineError;
use crate::decomposition::DagTreeDecomposition;
use crate::graph::OrientedGraph;
use crate::pattern::{bits, DagPattern};

/// Aggregated child counts keyed by the images of the vertices a child
/// shares with its parent. One shared vertex indexes a dense array; up to
/// four are packed into a `u128`; wider keys fall back to `HomKey`.
#[derive(Debug)]
enum Table {
    Dense { counts: Vec<u64>, nonzero: usize },
    Packed(FxHashMap<u128, u64>),
    Wide(FxHashMap<HomKey, u64>),
}

impl Table {
    fn new(width: usize, n: usize) -> Table {
        if width == 1 {
            Table::Dense {
                counts: vec![0; n],
                nonzero: 0,
            }
        } else if width <= 4 && n <= 1 << 32 {
            Table::Packed(FxHashMap::default())
        } else {
            Table::Wide(FxHashMap::default())
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Table::Dense { nonzero, .. } => *nonzero == 0,
            Table::Packed(m) => m.is_empty(),
            Table::Wide(m) => m.is_empty(),
        }
    }

    /// Adds `amount` (nonzero) under `key` restricted to `positions`.
    fn add(&mut self, positions: &[usize], key: &[usize], amount: u64) -> Result<(), EngineError> {
        let slot = match self {
            Table::Dense { counts, nonzero } => {
                let slot = &mut counts[key[positions[0]]];
                if *slot == 0 {
                    *nonzero += 1;
                }
                slot
            }
            Table::Packed(m) => m.entry(pack(positions, key)).or_insert(0),
            Table::Wide(m) => m
                .entry(positions.iter().map(|&i| key[i]).collect())
                .or_insert(0),
        };
        *slot = slot
            .checked_add(amount)
            .ok_or(EngineError::ArithmeticOverflow)?;
        Ok(())
    }

    /// Count under `key` restricted to `positions`, 0 when absent.
    fn get(&self, positions: &[usize], key: &[usize]) -> u64 {
        match self {
            Table::Dense { counts, .. } => counts[key[positions[0]]],
            Table::Packed(m) => m.get(&pack(positions, key)).copied().unwrap_or(0),
            Table::Wide(m) => {
                let restricted: HomKey = positions.iter().map(|&i| key[i]).collect();
                m.get(&restricted).copied().unwrap_or(0)
            }
        }
    }
}

fn pack(positions: &[usize], key: &[usize]) -> u128 {
    positions
        .iter()
        .fold(0u128, |acc, &i| acc << 32 | key[i] as u128)
}

/// Receives each root key with its nonzero extension count.
pub type Visit<'a> = dyn FnMut(&[usize], u64) -> Result<(), EngineError> + 'a;

/// Child tables paired with the parent key positions they are looked up by.
type ChildTables = Vec<(Vec<usize>, Table)>;

/// An oriented pattern, a width-1 decomposition of it and the per-node bag
/// layouts, ready to be evaluated against any oriented graph.
#[derive(Debug, Clone)]
pub struct PreparedOrientation {
    pub pattern: DagPattern,
    pub tree: DagTreeDecomposition,
    /// Indexed by tree node.
    pub layouts: Vec<BagLayout>,
}

impl PreparedOrientation {
    pub fn new(pattern: DagPattern, tree: DagTreeDecomposition) -> PreparedOrientation {
        let topo = pattern.topological_order().expect("DagPattern is acyclic");
        let layouts = (0..tree.node_count())
            .map(|node| {
                let bag = tree.bag(node);
                assert_eq!(
                    bag.count_ones(),
                    1,
                    "only width-1 decompositions are supported"
                );
                BagLayout::new(&pattern, &topo, bits(bag).next().unwrap())
            })
            .collect();
        PreparedOrientation {
            pattern,
            tree,
            layouts,
        }
    }

    /// Evaluates `ext` for every homomorphism of the root bag of `tree` (which
    /// may be any re-rooting of `self.tree`) and hands each `(key, ext)` with
    /// a nonzero count to `visit`.
    pub fn fold_root(
        &self,
        tree: &DagTreeDecomposition,
        g: &OrientedGraph,
        visit: &mut Visit<'_>,
    ) -> Result<(), EngineError> {
        let root = tree.root();
        let Some(children) = self.child_tables(tree, root, g)? else {
            return Ok(());
        };
        let layout = &self.layouts[root];
        let mut walker = Walker::new(&children, layout.vertices().len(), |key: &[usize], ext| {
            visit(key, ext)
        });
        walk_bag_homs(layout, g, &mut walker);
        walker.status
    }

    /// Aggregated tables of every child of `node`, each paired with the key
    /// positions (in `node`'s layout) of the vertices it shares with `node`.
    /// `None` when some child table is empty, which forces every extension
    /// count at `node` to zero.
    fn child_tables(
        &self,
        tree: &DagTreeDecomposition,
        node: usize,
        g: &OrientedGraph,
    ) -> Result<Option<ChildTables>, EngineError> {
        let mut out = Vec::new();
        for child in tree.children(node) {
            let shared = self.layouts[node].reach() & self.layouts[child].reach();
            let table = self.collapsed_table(tree, child, node, g)?;
            if table.is_empty() {
                return Ok(None);
            }
            out.push((self.layouts[node].positions_of(shared), table));
        }
        Ok(Some(out))
    }

    /// `Σ ext(P[down(node)]; phi)` over homomorphisms `phi` of `node`'s bag,
    /// grouped by the restriction of `phi` to the vertices shared with
    /// `parent`.
    fn collapsed_table(
        &self,
        tree: &DagTreeDecomposition,
        node: usize,
        parent: usize,
        g: &OrientedGraph,
    ) -> Result<Table, EngineError> {
        let shared = self.layouts[node].reach() & self.layouts[parent].reach();
        let up = self.layouts[node].positions_of(shared);
        let mut table = Table::new(up.len(), g.vertex_count());
        let Some(children) = self.child_tables(tree, node, g)? else {
            return Ok(table);
        };
        let layout = &self.layouts[node];
        let mut walker = Walker::new(&children, layout.vertices().len(), |key: &[usize], ext| {
            table.add(&up, key, ext)
        });
        walk_bag_homs(layout, g, &mut walker);
        walker.status.map(|_| table)
    }
}

/// Bag walk that multiplies in each child's count as soon as the vertices
/// it shares with the bag are assigned, dropping prefixes whose running
/// product is zero, and emits `(key, ext)` for the surviving full keys.
struct Walker<'c, F> {
    children: &'c [(Vec<usize>, Table)],
    /// `due[pos]`: children whose last shared position is `pos`.
    due: Vec<Vec<usize>>,
    /// `partial[pos]`: product of the factors due at positions `..=pos`.
    partial: Vec<u64>,
    emit: F,
    status: Result<(), EngineError>,
}

impl<'c, F> Walker<'c, F>
where
    F: FnMut(&[usize], u64) -> Result<(), EngineError>,
{
    fn new(children: &'c [(Vec<usize>, Table)], len: usize, emit: F) -> Walker<'c, F> {
        let mut due = vec![Vec::new(); len];
        for (c, (positions, _)) in children.iter().enumerate() {
            due[positions.last().copied().unwrap_or(0)].push(c);
        }
        Walker {
            children,
            due,
            partial: vec![0; len],
            emit,
            status: Ok(()),
        }
    }
}

impl<F> BagVisitor for Walker<'_, F>
where
    F: FnMut(&[usize], u64) -> Result<(), EngineError>,
{
    fn keep(&mut self, pos: usize, image: &[usize]) -> bool {
        if self.status.is_err() {
            return false;
        }
        let mut ext = if pos == 0 { 1 } else { self.partial[pos - 1] };
        for &c in &self.due[pos] {
            let (positions, table) = &self.children[c];
            let count = table.get(positions, image);
            if count == 0 {
                return false;
            }
            match ext.checked_mul(count) {
                Some(x) => ext = x,
                None => {
                    self.status = Err(EngineError::ArithmeticOverflow);
                    return false;
                }
            }
        }
        self.partial[pos] = ext;
        true
    }

    fn visit(&mut self, image: &[usize]) {
        if self.status.is_ok() {
            let ext = self.partial[image.len() - 1];
            self.status = (self.emit)(image, ext);
        }
    }
}

/// Extension counts for every homomorphism of the root bag of `tree`.
#[derive(Debug, Clone)]
pub struct ExtensionDictionary {
    /// Tree node whose bag keys the dictionary.
    pub bag: usize,
    /// Pattern vertices covered by the down-closure of `bag`.
    pub down_set: u32,
    pub layout: BagLayout,
    pub counts: FxHashMap<HomKey, u64>,
}

impl ExtensionDictionary {
    pub fn get(&self, key: &[usize]) -> u64 {
        self.counts
            .get(&SmallVec::from_slice(key))
            .copied()
            .unwrap_or(0)
    }
}

/// Builds the dictionary for the root of `tree`, which must be a width-1
/// decomposition of `p`. Homomorphisms with no extension are omitted.
pub fn build_extension_dictionary(
    p: &DagPattern,
    tree: &DagTreeDecomposition,
    g: &OrientedGraph,
) -> Result<ExtensionDictionary, EngineError> {
    let prepared = PreparedOrientation::new(p.clone(), tree.clone());
    let mut counts = FxHashMap::default();
    prepared.fold_root(tree, g, &mut |key, ext| {
        counts.insert(SmallVec::from_slice(key), ext);
        Ok(())
    })?;
    let down_set = crate::decomposition::down_sets(tree, p)[tree.root()];
    Ok(ExtensionDictionary {
        bag: tree.root(),
        down_set,
        layout: prepared.layouts[tree.root()].clone(),
        counts,
    })
}

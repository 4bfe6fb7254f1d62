//! Orbit counts by inclusion–exclusion over merged patterns.
//!
//! For an orbit `psi` and graph vertex `v`,
//! `OrbitHom(psi, v) = Σ_{S ∈ IS(psi)} (-1)^(|S|+1) · VertexHom_{H_S, h_S}(v)`,
//! where `IS(psi)` are the nonempty independent subsets of `psi` and `H_S`
//! contracts `S` into the vertex `h_S`.
//!
//! Merged patterns that are isomorphic (with `h_S` landing in the same
//! automorphism orbit) share one vertex-count run; the plan stores the
//! signed multiplicity of each such class.

use std::fmt::Write as _;

use super::vertex::{checked_sum, VertexCountPlan, VertexHomTable};
use super::{EngineConfig, EngineError};
use crate::graph::{degeneracy_orientation, Graph, OrientedGraph};
use crate::pattern::{
    automorphism_orbits, find_isomorphism, lipco_with_orbits, merge_pattern,
    orbit_independent_sets, OrbitPartition, Pattern,
};

/// `counts[i][v]` for the `i`-th orbit (ordered by representative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitHomTable {
    representatives: Vec<usize>,
    counts: Vec<Vec<u64>>,
}

impl OrbitHomTable {
    pub fn new(representatives: Vec<usize>, counts: Vec<Vec<u64>>) -> OrbitHomTable {
        assert_eq!(representatives.len(), counts.len());
        OrbitHomTable {
            representatives,
            counts,
        }
    }

    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn row(&self, orbit: usize) -> &[u64] {
        &self.counts[orbit]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// Tab-separated `vertex  orbit_rep  count`, one row per `(v, orbit)`,
    /// sorted by vertex and then representative.
    pub fn to_tsv(&self) -> String {
        let mut out = String::with_capacity(16 * self.vertex_count() * self.orbit_count() + 32);
        out.push_str("vertex\torbit_rep\tcount\n");
        for v in 0..self.vertex_count() {
            for (i, rep) in self.representatives.iter().enumerate() {
                let _ = writeln!(out, "{v}\t{rep}\t{}", self.counts[i][v]);
            }
        }
        out
    }
}

/// `Agg(H, G, psi)`: total of one orbit's row.
pub fn aggregate(t: &OrbitHomTable, orbit: usize) -> Result<u64, EngineError> {
    checked_sum(t.row(orbit))
}

/// One independent set of an orbit and the class its merged pattern fell
/// into.
#[derive(Debug, Clone)]
pub struct MergeEntry {
    pub set: Vec<usize>,
    pub sign: i64,
    /// Index into [`OrbitCountPlan::classes`].
    pub class: usize,
}

/// A distinct merged pattern (up to isomorphism) and the vertex-count
/// columns needed from it.
#[derive(Debug, Clone)]
pub struct MergedClass {
    pub plan: VertexCountPlan,
    /// Canonical `h_S` columns (orbit representatives of the class pattern).
    pub columns: Vec<usize>,
    orbits: OrbitPartition,
}

/// Signed coefficient on one column of one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub class: usize,
    pub column: usize,
    pub coefficient: i64,
}

/// Everything about a pattern that does not depend on the input graph.
#[derive(Debug, Clone)]
pub struct OrbitCountPlan {
    pattern: Pattern,
    orbits: OrbitPartition,
    lipco: usize,
    classes: Vec<MergedClass>,
    entries: Vec<Vec<MergeEntry>>,
    terms: Vec<Vec<Term>>,
}

impl OrbitCountPlan {
    /// Fails with `DichotomyViolation` when `lipco(h) > 5`.
    pub fn new(h: &Pattern) -> Result<OrbitCountPlan, EngineError> {
        let orbits = automorphism_orbits(h);
        let lipco = lipco_with_orbits(h, &orbits);
        if lipco > 5 {
            return Err(EngineError::DichotomyViolation {
                measure: "LIPCO",
                value: lipco,
            });
        }
        let mut classes: Vec<MergedClass> = Vec::new();
        let mut entries = Vec::with_capacity(orbits.len());
        let mut terms = Vec::with_capacity(orbits.len());

        for orbit in orbits.orbits() {
            let mut orbit_entries = Vec::new();
            let mut orbit_terms: Vec<Term> = Vec::new();
            for set in orbit_independent_sets(h, orbit) {
                let merged = merge_pattern(h, &set).expect("independent set from IS(psi)");
                let (class, root) = match classes.iter().enumerate().find_map(|(i, c)| {
                    find_isomorphism(&merged.base, c.plan.pattern()).map(|iso| (i, iso))
                }) {
                    Some((i, iso)) => (i, iso[merged.merged_vertex]),
                    None => {
                        let plan = VertexCountPlan::new(&merged.base)?;
                        let class_orbits = automorphism_orbits(&merged.base);
                        classes.push(MergedClass {
                            plan,
                            columns: Vec::new(),
                            orbits: class_orbits,
                        });
                        (classes.len() - 1, merged.merged_vertex)
                    }
                };
                let c = &mut classes[class];
                let column = c.orbits.representative(c.orbits.orbit_of(root));
                if !c.columns.contains(&column) {
                    c.columns.push(column);
                    c.columns.sort_unstable();
                }
                match orbit_terms
                    .iter_mut()
                    .find(|t| t.class == class && t.column == column)
                {
                    Some(t) => t.coefficient += merged.sign,
                    None => orbit_terms.push(Term {
                        class,
                        column,
                        coefficient: merged.sign,
                    }),
                }
                orbit_entries.push(MergeEntry {
                    set,
                    sign: merged.sign,
                    class,
                });
            }
            entries.push(orbit_entries);
            terms.push(orbit_terms);
        }

        Ok(OrbitCountPlan {
            pattern: h.clone(),
            orbits,
            lipco,
            classes,
            entries,
            terms,
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn orbits(&self) -> &OrbitPartition {
        &self.orbits
    }

    pub fn lipco(&self) -> usize {
        self.lipco
    }

    pub fn classes(&self) -> &[MergedClass] {
        &self.classes
    }

    /// Per orbit, every `S ∈ IS(psi)` with its sign and class.
    pub fn entries(&self) -> &[Vec<MergeEntry>] {
        &self.entries
    }

    /// Per orbit, the signed class columns summed by inclusion–exclusion.
    pub fn terms(&self) -> &[Vec<Term>] {
        &self.terms
    }

    pub fn run(&self, g: &Graph, config: &EngineConfig) -> Result<OrbitCounts, EngineError> {
        let o = degeneracy_orientation(g);
        self.run_oriented(&o, config)
    }

    pub fn run_oriented(
        &self,
        g: &OrientedGraph,
        config: &EngineConfig,
    ) -> Result<OrbitCounts, EngineError> {
        let n = g.vertex_count();
        let tables: Vec<VertexHomTable> = self
            .classes
            .iter()
            .map(|c| {
                let wanted = c.columns.iter().map(|&h| 1u32 << h).sum();
                c.plan.run_oriented(g, wanted, config)
            })
            .collect::<Result<_, _>>()?;

        let mut counts = Vec::with_capacity(self.orbits.len());
        for orbit_terms in &self.terms {
            let mut row = vec![0u64; n];
            for (v, cell) in row.iter_mut().enumerate() {
                let mut total = 0i64;
                for t in orbit_terms {
                    let value = i64::try_from(tables[t.class].get(t.column, v))
                        .map_err(|_| EngineError::ArithmeticOverflow)?;
                    let signed = value
                        .checked_mul(t.coefficient)
                        .ok_or(EngineError::ArithmeticOverflow)?;
                    total = total
                        .checked_add(signed)
                        .ok_or(EngineError::ArithmeticOverflow)?;
                }
                assert!(
                    total >= 0,
                    "inclusion-exclusion produced {total} at vertex {v}"
                );
                *cell = total as u64;
            }
            counts.push(row);
        }

        // the singleton set of orbit 0's representative is H itself
        let first = &self.terms[0][0];
        debug_assert_eq!(self.entries[0][0].set, vec![self.orbits.representative(0)]);
        let hom_total = tables[first.class].column_sum(first.column)?;

        let representatives = (0..self.orbits.len())
            .map(|i| self.orbits.representative(i))
            .collect();
        Ok(OrbitCounts {
            table: OrbitHomTable::new(representatives, counts),
            hom_total,
        })
    }
}

/// Output of an orbit-count run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCounts {
    pub table: OrbitHomTable,
    /// `Hom(H, G)`.
    pub hom_total: u64,
}

/// `OrbitHom_H(G)` for every orbit of `h` and every vertex of `g`.
pub fn orbit_homs(h: &Pattern, g: &Graph) -> Result<OrbitHomTable, EngineError> {
    orbit_homs_with(h, g, &EngineConfig::sequential())
}

pub fn orbit_homs_with(
    h: &Pattern,
    g: &Graph,
    config: &EngineConfig,
) -> Result<OrbitHomTable, EngineError> {
    Ok(OrbitCountPlan::new(h)?.run(g, config)?.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_tables;
    use crate::pattern::fixtures::*;

    fn k(n: usize) -> Graph {
        clique(n).to_graph()
    }

    #[test]
    fn edge_on_triangle() {
        let t = orbit_homs(&clique(2), &k(3)).unwrap();
        assert_eq!(t.rows(), &[vec![4, 4, 4]]);
        assert_eq!(aggregate(&t, 0).unwrap(), 12);
    }

    #[test]
    fn triangle_on_k4() {
        let t = orbit_homs(&clique(3), &k(4)).unwrap();
        assert_eq!(t.rows(), &[vec![18; 4]]);
        assert_eq!(aggregate(&t, 0).unwrap(), 72);
    }

    #[test]
    fn c4_on_k4_matches_formula_and_oracle() {
        let c4 = cycle(4);
        let g = k(4);
        let t = orbit_homs(&c4, &g).unwrap();
        let vh = vertex_homs_table(&c4, &g);
        let p3 = vertex_homs_table(&path(3), &g);
        for v in 0..4 {
            let expected: u64 = (0..4).map(|h| vh.get(h, v)).sum::<u64>() - 2 * p3.get(1, v);
            assert_eq!(t.row(0)[v], expected);
        }
        assert_eq!(
            t.rows(),
            oracle_tables(&c4, &g, u64::MAX).unwrap().orbit.as_slice()
        );
    }

    fn vertex_homs_table(h: &Pattern, g: &Graph) -> VertexHomTable {
        super::super::vertex_homs(h, g).unwrap()
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::from_edges(5, &[]);
        let t = orbit_homs(&clique(3), &g).unwrap();
        assert!(t.rows().iter().flatten().all(|&c| c == 0));
        assert_eq!(aggregate(&t, 0).unwrap(), 0);
    }

    #[test]
    fn refuses_hard_patterns() {
        assert_eq!(
            orbit_homs(&path(7), &k(3)).unwrap_err(),
            EngineError::DichotomyViolation {
                measure: "LIPCO",
                value: 6
            }
        );
    }

    #[test]
    fn plan_structure_for_c5() {
        let plan = OrbitCountPlan::new(&cycle(5)).unwrap();
        assert_eq!(plan.orbits().len(), 1);
        // five singletons (C5 itself) and five non-adjacent pairs (the paw)
        assert_eq!(plan.entries()[0].len(), 10);
        assert_eq!(plan.classes().len(), 2);
        let mut coefficients: Vec<i64> = plan.terms()[0].iter().map(|t| t.coefficient).collect();
        coefficients.sort_unstable();
        assert_eq!(coefficients, vec![-5, 5]);
    }

    #[test]
    fn tsv_layout() {
        let t = OrbitHomTable::new(vec![0, 1], vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(
            t.to_tsv(),
            "vertex\torbit_rep\tcount\n0\t0\t1\n0\t1\t3\n1\t0\t2\n1\t1\t4\n"
        );
    }
}

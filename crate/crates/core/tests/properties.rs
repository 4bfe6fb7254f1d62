use proptest::prelude::*;

use orbithom::engine::{vertex_homs, OrbitCountPlan};
use orbithom::graph::{degeneracy_order, orient_acyclic, Graph};
use orbithom::oracle::{
    oracle_dag_hom, oracle_pinned_homs, oracle_signature_histogram, oracle_tables,
    oracle_vertex_homs,
};
use orbithom::pattern::{
    acyclic_orientations, automorphism_orbits, licl, lipco, merge_pattern, orbit_independent_sets,
    Pattern,
};
use orbithom::{orbit_homs, EngineConfig};

const BUDGET: u64 = u64::MAX;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.3), pairs).prop_map(move |keep| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if keep[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges)
        })
    })
}

/// Connected pattern: a random tree on `k` vertices plus random chords.
fn pattern_strategy(max_k: usize) -> impl Strategy<Value = Pattern> {
    (1..=max_k).prop_flat_map(|k| {
        let parents = (1..k).map(|i| 0..i).collect::<Vec<_>>();
        let chords = proptest::collection::vec(proptest::bool::weighted(0.25), k * k);
        (parents, chords).prop_map(move |(parents, chords)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            for u in 0..k {
                for v in u + 1..k {
                    if chords[u * k + v] {
                        edges.push((u, v));
                    }
                }
            }
            edges.sort_unstable();
            edges.dedup();
            Pattern::new(k, &edges).unwrap()
        })
    })
}

/// Smallest max-min-degree over all vertex subsets, by brute force.
fn reference_degeneracy(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for mask in 1u32..1 << n {
        let min_deg = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| mask >> w & 1 == 1)
                    .count()
            })
            .min()
            .unwrap();
        best = best.max(min_deg);
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degeneracy_orientation_is_acyclic_and_tight(g in graph_strategy(12)) {
        let order = degeneracy_order(&g);
        let o = orient_acyclic(&g, &order);
        prop_assert!(o.topological_order().is_some());
        prop_assert_eq!(o.arc_count(), g.edge_count());
        for (u, v) in g.edges() {
            prop_assert!(o.has_arc(u, v) ^ o.has_arc(v, u));
        }
        prop_assert_eq!(o.max_outdegree(), order.kappa);
        prop_assert_eq!(order.kappa, reference_degeneracy(&g));
    }

    #[test]
    fn engine_matches_oracle(h in pattern_strategy(6), g in graph_strategy(9)) {
        prop_assume!(lipco(&h) <= 5);
        let got = orbit_homs(&h, &g).unwrap();
        let want = oracle_tables(&h, &g, BUDGET).unwrap();
        prop_assert_eq!(got.rows(), want.orbit.as_slice());
        let vertex = vertex_homs(&h, &g).unwrap();
        prop_assert_eq!(vertex.rows(), want.vertex.as_slice());
    }

    #[test]
    fn thread_count_does_not_change_counts(h in pattern_strategy(5), g in graph_strategy(10)) {
        prop_assume!(lipco(&h) <= 5);
        let plan = OrbitCountPlan::new(&h).unwrap();
        let seq = plan.run(&g, &EngineConfig::sequential()).unwrap();
        let par = plan.run(&g, &EngineConfig { threads: 4 }).unwrap();
        prop_assert_eq!(seq.table.to_tsv(), par.table.to_tsv());
        prop_assert_eq!(seq.hom_total, par.hom_total);
    }

    #[test]
    fn sandwich_and_column_sums(h in pattern_strategy(5), g in graph_strategy(8)) {
        let t = oracle_tables(&h, &g, BUDGET).unwrap();
        for row in &t.vertex {
            prop_assert_eq!(row.iter().sum::<u64>(), t.hom);
        }
        let orbits = automorphism_orbits(&h);
        for (i, orbit) in orbits.orbits().iter().enumerate() {
            for v in 0..g.vertex_count() {
                let upper: u64 = orbit.iter().map(|&x| t.vertex[x][v]).sum();
                prop_assert!(t.vertex[orbit[0]][v] <= t.orbit[i][v]);
                prop_assert!(t.orbit[i][v] <= upper);
            }
        }
    }

    #[test]
    fn orientation_partition(h in pattern_strategy(5), g in graph_strategy(8)) {
        let o = orient_acyclic(&g, &degeneracy_order(&g));
        let total: u64 = acyclic_orientations(&h)
            .iter()
            .map(|p| oracle_dag_hom(p, &o, BUDGET).unwrap())
            .sum();
        prop_assert_eq!(total, oracle_tables(&h, &g, BUDGET).unwrap().hom);
    }

    #[test]
    fn merging_is_a_bijection_with_pinned_maps(h in pattern_strategy(5), g in graph_strategy(7)) {
        let orbits = automorphism_orbits(&h);
        for orbit in orbits.orbits() {
            for s in orbit_independent_sets(&h, orbit) {
                let m = merge_pattern(&h, &s).unwrap();
                let pinned = oracle_pinned_homs(&h, &g, &s, BUDGET).unwrap();
                let merged = oracle_vertex_homs(&m.base, &g, BUDGET).unwrap();
                prop_assert_eq!(&pinned, &merged[m.merged_vertex]);
            }
        }
    }

    #[test]
    fn signatures_are_independent_and_inclusion_exclusion_holds(
        h in pattern_strategy(5),
        g in graph_strategy(7),
    ) {
        let t = oracle_tables(&h, &g, BUDGET).unwrap();
        let orbits = automorphism_orbits(&h);
        for (i, orbit) in orbits.orbits().iter().enumerate() {
            let sets = orbit_independent_sets(&h, orbit);
            for v in 0..g.vertex_count() {
                let hist = oracle_signature_histogram(&h, &g, orbit, v, BUDGET).unwrap();
                for sig in hist.keys() {
                    prop_assert!(sets.contains(sig), "signature {:?} is not independent", sig);
                }
                prop_assert_eq!(hist.values().sum::<u64>(), t.orbit[i][v]);
            }
            let mut ie = vec![0i64; g.vertex_count()];
            for s in &sets {
                let sign = if s.len() % 2 == 1 { 1 } else { -1 };
                for (v, c) in oracle_pinned_homs(&h, &g, s, BUDGET).unwrap().into_iter().enumerate() {
                    ie[v] += sign * c as i64;
                }
            }
            let want: Vec<i64> = t.orbit[i].iter().map(|&c| c as i64).collect();
            prop_assert_eq!(ie, want);
        }
    }

    #[test]
    fn lipco_bound_matches_merged_cycle_bound(h in pattern_strategy(7)) {
        let orbits = automorphism_orbits(&h);
        let merged_ok = orbits.orbits().iter().all(|orbit| {
            orbit_independent_sets(&h, orbit)
                .iter()
                .all(|s| licl(&merge_pattern(&h, s).unwrap().base) <= 5)
        });
        prop_assert_eq!(lipco(&h) <= 5, merged_ok);
    }

    #[test]
    fn engine_is_deterministic(h in pattern_strategy(5), g in graph_strategy(10)) {
        prop_assume!(lipco(&h) <= 5);
        prop_assert_eq!(orbit_homs(&h, &g).unwrap(), orbit_homs(&h, &g).unwrap());
    }
}

use proptest::prelude::*;
use rainbow_forge::generators::{c4_free_process, named, NamedGraph, Seed};
use rainbow_forge::oracles::{longest_induced_cycle, SearchBudget};
use rainbow_forge::structures::{
    cycles_from_pending, embed_rooted_forest, is_non_extendable, lift_cycle, long_cycle_bound,
    long_induced_cycle, maximal_induced_path, pending_cycle_count_bound, separated_set,
    tree_partition, ForestSpec,
};
use rainbow_forge::{Graph, GraphBuilder};

/// Replaces every edge by a path with `s` inner vertices.
fn subdivide(g: &Graph, s: usize) -> Graph {
    let mut b = GraphBuilder::new(g.n() + g.m() * s);
    let mut next = g.n();
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..s {
            b.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        b.add_edge(prev, v);
    }
    b.build()
}

fn girth5(n: usize, s: u64) -> Graph {
    c4_free_process(n, Seed(s), true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn maximal_paths_are_non_extendable(n in 5usize..=120, s in any::<u64>(), start in 0usize..5) {
        let g = girth5(n, s);
        let p = maximal_induced_path(&g, start);
        prop_assert!(p.validate(&g).is_ok());
        prop_assert!(is_non_extendable(&g, &p.vertices));
    }

    #[test]
    fn pending_cycles_on_girth5_graphs(n in 20usize..=200, s in any::<u64>()) {
        let g = girth5(n, s);
        prop_assume!(g.min_degree() >= 2);
        let cycles = cycles_from_pending(&g, 2, 0).unwrap();
        let mut lengths: Vec<usize> = cycles.iter().map(|c| c.length()).collect();
        for c in &cycles {
            prop_assert!(c.validate(&g).is_ok());
        }
        prop_assert!(cycles.len() >= pending_cycle_count_bound(g.min_degree(), 2));
        lengths.dedup();
        prop_assert_eq!(lengths.len(), cycles.len());
    }

    #[test]
    fn long_cycle_at_radius_zero(n in 20usize..=150, s in any::<u64>()) {
        let g = girth5(n, s);
        prop_assume!(g.min_degree() >= 2);
        let c = long_induced_cycle(&g, 0).unwrap();
        prop_assert!(c.validate(&g).is_ok());
        prop_assert!(c.length() >= long_cycle_bound(g.min_degree(), 0));
    }

    #[test]
    fn forests_embed_in_girth5_graphs(n in 30usize..=150, s in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = girth5(n, s);
        let d = g.min_degree().min(3);
        prop_assume!(d >= 1);
        let specs = ForestSpec::all_rooted(d);
        let spec = &specs[pick.index(specs.len())];
        // anchors: a greedy independent set, far enough apart not to matter
        let mut anchors: Vec<usize> = Vec::new();
        for v in g.vertices() {
            if anchors.len() == spec.components() {
                break;
            }
            if anchors.iter().all(|&a| !g.adjacent(a, v)) {
                anchors.push(v);
            }
        }
        let cert = embed_rooted_forest(&g, spec, &anchors).unwrap();
        prop_assert!(cert.validate(&g, spec, &anchors).is_ok());
    }
}

#[test]
fn tree_partitions_of_subdivided_graphs_pass_audits() {
    // girth after subdividing: 5 * 5, 3 * 7 and 6 * 5
    for (name, base, s) in [
        ("petersen", NamedGraph::Petersen, 4),
        ("k4", NamedGraph::Complete(4), 6),
        ("heawood", NamedGraph::Heawood, 4),
    ] {
        let g = subdivide(&named(&base).unwrap(), s);
        assert!(g.girth().at_least(21), "{name}");
        let centers = separated_set(&g, 1);
        let tpm = tree_partition(&g, &centers, 1).unwrap();
        tpm.check_partition(&g).unwrap();
        tpm.check_trees(&g).unwrap();
        tpm.check_balls(&g).unwrap();
        tpm.check_cross_edges(&g).unwrap();
        if let Some(q) = longest_induced_cycle(&tpm.quotient, &SearchBudget::default()).unwrap() {
            let lifted = lift_cycle(&g, &tpm, &q).unwrap();
            lifted.validate(&g).unwrap();
            assert!(lifted.length() >= q.length(), "{name}");
        }
        let c = long_induced_cycle(&g, 1).unwrap();
        c.validate(&g).unwrap();
        assert!(c.length() >= long_cycle_bound(2, 1), "{name}");
    }
}

#[test]
fn girth5_instances_lift_through_the_identity_partition() {
    for s in 0..20 {
        let g = girth5(60, s);
        let centers = separated_set(&g, 0);
        assert_eq!(centers.len(), g.n());
        let tpm = tree_partition(&g, &centers, 0).unwrap();
        assert_eq!(tpm.quotient.m(), g.m());
        let c = long_induced_cycle(&g, 0).unwrap();
        let lifted = lift_cycle(&g, &tpm, &c).unwrap();
        assert_eq!(lifted.length(), c.length());
    }
}

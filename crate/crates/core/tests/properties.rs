mod common;

use common::G;
use pidwidth_core::ealt::distance;
use pidwidth_core::oracle::{build_colosseum, winning_configs, winning_region};
use pidwidth_core::parameters::{compute, decide, scheme_for, validate_decomposition, Query};
use pidwidth_core::pid::{discover, DiscoverOptions};
use pidwidth_core::VertexSet;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = G> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            G::from_edges(n, edges).unwrap()
        })
    })
}

fn set_strategy() -> impl Strategy<Value = VertexSet<2>> {
    proptest::collection::btree_set(0usize..128, 0..20).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn set_algebra_laws(a in set_strategy(), b in set_strategy()) {
        prop_assert_eq!((a | b).len(), a.union_len(&b));
        prop_assert_eq!((a | b).len() + (a & b).len(), a.len() + b.len());
        prop_assert_eq!(a.is_disjoint(&b), (a & b).is_empty());
        prop_assert!((a - b).is_subset(&a));
        prop_assert_eq!(a.is_subset(&b), (a - b).is_empty());
        let listed: Vec<usize> = a.iter().collect();
        let mut sorted = listed.clone();
        sorted.sort_unstable();
        prop_assert_eq!(listed, sorted);
    }

    #[test]
    fn set_order_is_numeric(a in set_strategy(), b in set_strategy()) {
        let key = |s: &VertexSet<2>| { let w = s.words(); (w[1], w[0]) };
        prop_assert_eq!(a.cmp(&b), key(&a).cmp(&key(&b)));
    }

    #[test]
    fn neighborhoods_and_components(g in graph_strategy(10), mask in any::<u16>()) {
        let c: VertexSet<1> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let nb = g.neighborhood(&c);
        prop_assert!(nb.is_disjoint(&c));
        let parts = g.connected_components(&c);
        let mut union = VertexSet::empty();
        for p in &parts {
            prop_assert!(p.is_disjoint(&union));
            prop_assert!(g.is_connected_set(p));
            prop_assert!(g.neighborhood(p).is_subset(&nb));
            union |= *p;
        }
        prop_assert_eq!(union, c);
    }

    #[test]
    fn pit_equals_winning_region(g in graph_strategy(8), k in 1usize..8) {
        let h = build_colosseum(&g, k, 26).unwrap();
        let region = winning_region(&h, &winning_configs(&g, k)).unwrap();
        let pit = discover(&g, k).unwrap();
        let mut nodes = pit.graph().nodes().to_vec();
        nodes.sort_unstable();
        prop_assert_eq!(nodes, region);
    }

    #[test]
    fn strategies_validate(g in graph_strategy(8), k in 1usize..8) {
        for q in [Query::Treewidth, Query::Pathwidth, Query::Treedepth, Query::QBranched(1)] {
            let d = decide(&g, k, &q, DiscoverOptions::default()).unwrap();
            if let Some(strategy) = &d.strategy {
                let scheme = scheme_for(&q, k, &d.pit);
                prop_assert!(strategy.validate(d.pit.graph(), &d.pit.targets(), &scheme).is_ok());
                if let Query::QBranched(bound) = q {
                    prop_assert!(strategy.max_universal_arcs() as u64 <= bound);
                }
            }
        }
    }

    #[test]
    fn decisions_are_monotone_in_k(g in graph_strategy(7)) {
        for q in [Query::Treewidth, Query::Pathwidth, Query::Treedepth] {
            let mut won = false;
            for k in 1..=g.n() {
                let now = decide(&g, k, &q, DiscoverOptions::default()).unwrap().winnable;
                prop_assert!(!won || now);
                won = now;
            }
            prop_assert!(won);
        }
    }

    #[test]
    fn distances_respect_targets(g in graph_strategy(8), k in 1usize..8) {
        let pit = discover(&g, k).unwrap();
        let targets = pit.targets();
        let scheme = scheme_for(&Query::<1>::Treedepth, k, &pit);
        let d = distance(pit.graph(), &targets, &scheme).unwrap();
        for &t in &targets {
            prop_assert_eq!(d[t as usize], scheme.terminal);
        }
        // every node of the pit reaches Q
        prop_assert!(d.iter().all(|w| w.is_finite()));
    }

    #[test]
    fn witnesses_validate_at_the_value(g in graph_strategy(8)) {
        for q in [Query::Treewidth, Query::Pathwidth, Query::Treedepth, Query::QBranched(0), Query::QBranched(2)] {
            let s = compute(&g, &q, DiscoverOptions::default()).unwrap();
            let report = validate_decomposition(&g, &s.witness, &q);
            prop_assert!(report.valid, "{:?}", report.violations);
            let measured = if q.kind().is_width() { report.width } else { report.depth };
            prop_assert_eq!(measured, s.value);
        }
    }
}

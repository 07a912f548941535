mod common;

use common::*;
use pidwidth_core::oracle::{
    build_colosseum, check_universal_consistency, colosseum_size, general_graph_searching, induced_subgraph,
    target_ids, winning_configs, winning_region, DEFAULT_FANOUT_CAP,
};
use pidwidth_core::pid::{discover, discover_with, DiscoverOptions, GluePolicy, RevealScan};
use pidwidth_core::VertexSet;

fn sorted_nodes(nodes: &[VertexSet<1>]) -> Vec<VertexSet<1>> {
    let mut v = nodes.to_vec();
    v.sort_unstable();
    v
}

#[test]
fn pit_is_the_winning_region_with_induced_arcs() {
    for g in small_corpus() {
        for k in 1..=g.n() {
            let h = build_colosseum(&g, k, 26).unwrap();
            let region = winning_region(&h, &winning_configs(&g, k)).unwrap();
            let pit = discover(&g, k).unwrap();
            assert_eq!(sorted_nodes(pit.graph().nodes()), region, "{g:?} k={k}");
            let expected = induced_subgraph(&h, &region);
            assert_eq!(pit.graph().existential_arcs(), expected.existential_arcs(), "{g:?} k={k}");
            assert_eq!(pit.graph().universal_arcs(), expected.universal_arcs(), "{g:?} k={k}");
        }
    }
}

#[test]
fn winnability_matches_the_recursive_game() {
    for g in small_corpus() {
        for k in 1..=g.n() {
            let pit = discover(&g, k).unwrap();
            assert_eq!(pit.is_winnable(), general_graph_searching(&g, k), "{g:?} k={k}");
        }
    }
}

const SCANS: [RevealScan; 3] = [RevealScan::Linear, RevealScan::BySeparator, RevealScan::Indexed];

fn with(glue: GluePolicy, scan: RevealScan) -> DiscoverOptions {
    DiscoverOptions {
        glue,
        scan,
        ..DiscoverOptions::default()
    }
}

#[test]
fn scans_agree_on_the_trace() {
    let larger = (0..3).map(|seed| random_graph(14, 0.3 + 0.05 * seed as f64, 900 + seed));
    for g in small_corpus().into_iter().chain(larger) {
        for k in 1..=g.n().min(9) {
            for glue in [GluePolicy::Componentwise, GluePolicy::NonAdjacent] {
                let traces: Vec<String> = SCANS
                    .iter()
                    .map(|&scan| discover_with(&g, k, with(glue, scan)).unwrap().trace_text())
                    .collect();
                assert_eq!(traces[0], traces[1], "{glue:?} {g:?} k={k}");
                assert_eq!(traces[0], traces[2], "{glue:?} {g:?} k={k}");
            }
        }
    }
}

#[test]
fn glue_policies_agree_on_the_pit() {
    let larger = (0..3).map(|seed| random_graph(14, 0.25 + 0.05 * seed as f64, 900 + seed));
    for g in small_corpus().into_iter().chain(larger) {
        for k in 1..=g.n().min(9) {
            let a = discover_with(&g, k, with(GluePolicy::Componentwise, RevealScan::Indexed)).unwrap();
            let b = discover_with(&g, k, with(GluePolicy::NonAdjacent, RevealScan::Indexed)).unwrap();
            assert_eq!(sorted_nodes(a.graph().nodes()), sorted_nodes(b.graph().nodes()), "{g:?} k={k}");
            let b_arcs = induced_subgraph(b.graph(), a.graph().nodes());
            let a_arcs = induced_subgraph(a.graph(), a.graph().nodes());
            assert_eq!(a_arcs.existential_arcs(), b_arcs.existential_arcs());
            assert_eq!(a_arcs.universal_arcs(), b_arcs.universal_arcs());
        }
    }
}

#[test]
fn disjoint_gluing_overshoots_the_winning_region() {
    // two leaves of a star are disjoint but their union is not winning for
    // two searchers once the center must be guarded
    let star = G::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let mut found_extra = false;
    for g in small_corpus().into_iter().chain([star]) {
        for k in 1..=g.n() {
            let literal = DiscoverOptions {
                glue: GluePolicy::Disjoint,
                ..DiscoverOptions::default()
            };
            let loose = discover_with(&g, k, literal).unwrap();
            let exact = discover(&g, k).unwrap();
            for c in exact.graph().nodes() {
                assert!(loose.graph().contains(c));
            }
            found_extra |= loose.len() > exact.len();
        }
    }
    assert!(found_extra);
}

#[test]
fn smaller_budgets_give_subgraphs() {
    for g in small_corpus() {
        for k in 2..=g.n() {
            let big = discover(&g, k).unwrap();
            let small = discover(&g, k - 1).unwrap();
            for c in small.graph().nodes() {
                assert!(big.graph().contains(c));
            }
            // not induced: fly arcs leave C with |N(C)| = k - 1 only at k
            let restricted = induced_subgraph(big.graph(), small.graph().nodes());
            let big_arcs = restricted.existential_arcs();
            assert!(small.graph().existential_arcs().iter().all(|a| big_arcs.contains(a)));
            assert_eq!(restricted.universal_arcs(), small.graph().universal_arcs());
        }
    }
}

#[test]
fn pit_never_exceeds_colosseum() {
    for g in small_corpus() {
        for k in 1..=g.n() {
            let pit = discover(&g, k).unwrap();
            assert!(pit.len() as u64 <= colosseum_size(&g, k, 26).unwrap());
        }
    }
}

#[test]
fn colosseum_is_universally_consistent() {
    for g in small_corpus() {
        for k in 1..=g.n() {
            let h = build_colosseum(&g, k, 26).unwrap();
            let targets = target_ids(&h, &winning_configs(&g, k));
            let report = check_universal_consistency(&h, &targets, DEFAULT_FANOUT_CAP).unwrap();
            assert!(report.consistent, "{g:?} k={k}: {:?}", report.violation);
        }
    }
}

#[test]
fn path_of_three_colosseum() {
    let g = path(3);
    assert_eq!(colosseum_size(&g, 2, 26).unwrap(), 7);
    assert_eq!(colosseum_size(&g, 1, 26).unwrap(), 6);
}

mod common;

use common::*;
use pidwidth_core::ealt::{alternating_reach, distance, extract_strategy, Acceptance, EdgeAltGraph, Weight, WeightScheme};
use pidwidth_core::oracle::{
    build_colosseum, check_universal_consistency, claw_free_upper_bound, colosseum_lower_bound, colosseum_size,
    general_graph_searching, target_ids, winning_configs, winning_region, DEFAULT_FANOUT_CAP,
};
use pidwidth_core::pid::discover;
use proptest::prelude::*;

/// Random DAG on payloads `0..n` with arcs only from larger to smaller ids.
fn dag_strategy() -> impl Strategy<Value = (EdgeAltGraph<u32>, Vec<u32>)> {
    (2u32..=12).prop_flat_map(|n| {
        let pairs = (n * (n - 1) / 2) as usize;
        (
            proptest::collection::vec(0u8..6, pairs),
            proptest::collection::vec(any::<bool>(), n as usize),
        )
            .prop_map(move |(kinds, target_bits)| {
                let mut g = EdgeAltGraph::new();
                for i in 0..n {
                    g.add_node(i);
                }
                let mut i = 0;
                for a in 0..n {
                    for b in 0..a {
                        match kinds[i] {
                            0 => g.add_existential(a, b),
                            1 => g.add_universal(a, b),
                            _ => {}
                        }
                        i += 1;
                    }
                }
                g.canonicalize();
                let targets = (0..n)
                    .filter(|&v| target_bits[v as usize] && g.is_sink(v))
                    .collect();
                (g, targets)
            })
    })
}

fn naive(g: &EdgeAltGraph<u32>, v: u32, targets: &[u32], we: Weight, wa: Weight, c0: Weight) -> Weight {
    if targets.contains(&v) {
        return c0;
    }
    let e = g
        .existential(v)
        .iter()
        .map(|&w| naive(g, w, targets, we, wa, c0) + we)
        .min()
        .unwrap_or(Weight::Infinite);
    let u = if g.universal(v).is_empty() {
        Weight::Infinite
    } else {
        g.universal(v).iter().map(|&w| naive(g, w, targets, we, wa, c0) + wa).max().unwrap()
    };
    e.min(u)
}

fn weight() -> impl Strategy<Value = Weight> {
    prop_oneof![(0u64..3).prop_map(Weight::Finite), Just(Weight::Infinite)]
}

proptest! {
    #[test]
    fn distance_matches_naive_recursion((g, targets) in dag_strategy(), we in weight(), wa in weight(), c0 in 0u64..2) {
        let c0 = Weight::Finite(c0);
        let scheme = WeightScheme::constant(we, wa, c0, Acceptance::Finite);
        let d = distance(&g, &targets, &scheme).unwrap();
        for v in 0..g.len() as u32 {
            prop_assert_eq!(d[v as usize], naive(&g, v, &targets, we, wa, c0));
        }
    }

    #[test]
    fn distance_is_monotone_in_weights((g, targets) in dag_strategy(), we in 0u64..2, wa in 0u64..2) {
        let low = WeightScheme::constant(Weight::Finite(we), Weight::Finite(wa), Weight::ZERO, Acceptance::Finite);
        let high = WeightScheme::constant(Weight::Finite(we + 1), Weight::Finite(wa + 1), Weight::ZERO, Acceptance::Finite);
        let a = distance(&g, &targets, &low).unwrap();
        let b = distance(&g, &targets, &high).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(x <= y);
        }
    }

    #[test]
    fn zero_weights_mean_reachability((g, targets) in dag_strategy()) {
        let scheme = WeightScheme::constant(Weight::ZERO, Weight::ZERO, Weight::ZERO, Acceptance::Finite);
        let d = distance(&g, &targets, &scheme).unwrap();
        let reach = alternating_reach(&g, &targets).unwrap();
        for (x, r) in d.iter().zip(&reach) {
            prop_assert_eq!(x.is_finite(), *r);
        }
    }

    #[test]
    fn extracted_strategies_are_valid((g, targets) in dag_strategy(), we in 0u64..2, wa in 0u64..2) {
        let scheme = WeightScheme::constant(Weight::Finite(we), Weight::Finite(wa), Weight::ZERO, Acceptance::Finite);
        let d = distance(&g, &targets, &scheme).unwrap();
        for s in 0..g.len() as u32 {
            if d[s as usize].is_finite() {
                let strategy = extract_strategy(&g, s, &targets, &scheme, &d).unwrap();
                prop_assert!(strategy.validate(&g, &targets, &scheme).is_ok());
                if we == 0 && wa == 1 {
                    prop_assert!(Weight::Finite(strategy.max_universal_arcs() as u64) <= d[s as usize]);
                }
            }
        }
    }
}

#[test]
fn winning_region_examples() {
    // chain 2 -> 1 -> 0 with every sink a target
    let mut chain = EdgeAltGraph::new();
    for i in 0..3u32 {
        chain.add_node(i);
    }
    chain.add_existential(2, 1);
    chain.add_existential(1, 0);
    assert_eq!(alternating_reach(&chain, &[0]).unwrap(), [true, true, true]);

    let mut fan = EdgeAltGraph::new();
    for i in 0..3u32 {
        fan.add_node(i);
    }
    fan.add_universal(2, 0);
    fan.add_universal(2, 1);
    assert_eq!(alternating_reach(&fan, &[0]).unwrap(), [true, false, false]);
}

#[test]
fn universal_consistency_examples() {
    // consistent: v fans out to a, b, c and every pair has its own node
    let mut good = EdgeAltGraph::new();
    for i in 0..7u32 {
        good.add_node(i);
    }
    // 0,1,2 are targets; 3 = {0,1}, 4 = {0,2}, 5 = {1,2}, 6 = {0,1,2}
    for (v, cs) in [(3, [0, 1].as_slice()), (4, &[0, 2]), (5, &[1, 2]), (6, &[0, 1, 2])] {
        for &c in cs {
            good.add_universal(v, c);
        }
    }
    let report = check_universal_consistency(&good, &[0, 1, 2], DEFAULT_FANOUT_CAP).unwrap();
    assert!(report.consistent && report.is_complete());

    // inconsistent: a winning node with a universal child outside the region
    let mut bad = EdgeAltGraph::new();
    for i in 0..4u32 {
        bad.add_node(i);
    }
    bad.add_universal(3, 0);
    bad.add_universal(3, 1);
    bad.add_existential(3, 2);
    let report = check_universal_consistency(&bad, &[0, 2], DEFAULT_FANOUT_CAP).unwrap();
    assert!(!report.consistent);
}

#[test]
fn colosseum_consistent_on_random_graphs() {
    for seed in 0..25 {
        let g = random_graph(10, 0.33, 1000 + seed);
        let k = treewidth(&g) + 1;
        let h = build_colosseum(&g, k, 26).unwrap();
        let targets = target_ids(&h, &winning_configs(&g, k));
        let report = check_universal_consistency(&h, &targets, DEFAULT_FANOUT_CAP).unwrap();
        assert!(report.consistent, "seed {seed}: {:?}", report.violation);
    }
}

#[test]
fn oracles_agree() {
    for g in small_corpus() {
        for k in 1..=g.n() {
            let h = build_colosseum(&g, k, 26).unwrap();
            let region = winning_region(&h, &winning_configs(&g, k)).unwrap();
            let start = g.vertices();
            assert_eq!(region.binary_search(&start).is_ok(), general_graph_searching(&g, k));
            assert_eq!(general_graph_searching(&g, k), k > treewidth(&g));
        }
    }
}

#[test]
fn pit_has_no_dead_configurations() {
    for g in small_corpus() {
        for k in 1..=g.n() {
            let pit = discover(&g, k).unwrap();
            let reach = alternating_reach(pit.graph(), &pit.targets()).unwrap();
            assert!(reach.iter().all(|&r| r));
        }
    }
}

#[test]
fn colosseum_size_bounds() {
    for g in small_corpus() {
        for k in 1..=g.n() {
            let size = colosseum_size(&g, k, 26).unwrap() as u128;
            assert!(size >= colosseum_lower_bound(&g, k), "{g:?} k={k}");
            if g.is_claw_free() && g.is_connected_set(&g.vertices()) {
                assert!(size <= claw_free_upper_bound(g.n() as u64, k as u64));
            }
        }
    }
}

#[test]
fn claw_free_component_count() {
    // removing X from a connected claw-free graph leaves at most 2|X| components
    for g in [cycle(7), path(8), complete(5)] {
        let n = g.n();
        for mask in 0u32..1 << n {
            let x: pidwidth_core::VertexSet<1> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let rest = g.vertices() - x;
            assert!(g.connected_components(&rest).len() <= 2 * x.len().max(1));
        }
    }
}

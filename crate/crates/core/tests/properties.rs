use lpds_core::brute::{solve_bf, BfOptions};
use lpds_core::dp::solve_dp;
use lpds_core::graph::{Graph, NodeSet};
use lpds_core::ip::{
    build_ip_ell, canonical_assignment, canonical_assignment_unchecked, check_assignment,
};
use lpds_core::orientation::{orientation_from_trace, validate};
use lpds_core::propagation::{is_feasible, propagate, Time};
use lpds_core::treewidth::{heuristic_td, to_nice, validate_td};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn with_set(max_n: usize) -> impl Strategy<Value = (Graph, NodeSet)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let set = NodeSet::from_nodes(n, (0..n).filter(|&v| bits[v])).unwrap();
            (g.clone(), set)
        })
    })
}

/// Round-by-round closure straight from the rules: round 1 covers `N[S]`,
/// later rounds let every covered node with one uncovered neighbour cover it,
/// all against the previous round's set.
fn naive_rounds(g: &Graph, s: &NodeSet, k: usize) -> Vec<Option<usize>> {
    let n = g.node_count();
    let mut time: Vec<Option<usize>> = vec![None; n];
    for v in s.iter() {
        time[v] = Some(0);
    }
    for v in s.iter() {
        for &w in g.neighbors(v) {
            time[w].get_or_insert(1);
        }
    }
    for round in 2..=k {
        let snapshot = time.clone();
        for u in 0..n {
            if snapshot[u].is_none() {
                continue;
            }
            let open: Vec<usize> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| snapshot[w].is_none())
                .collect();
            if let [w] = open[..] {
                time[w].get_or_insert(round);
            }
        }
        if time == snapshot {
            break;
        }
    }
    time
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn propagation_matches_rules((g, s) in with_set(9), k in 1usize..9) {
        let trace = propagate(&g, &s, k).unwrap();
        let expected = naive_rounds(&g, &s, k);
        for v in g.nodes() {
            let got = match trace.times[v] {
                Time::At(r) => Some(r),
                Time::Never => None,
            };
            prop_assert_eq!(got, expected[v], "node {}", v);
        }
    }

    #[test]
    fn closure_grows_with_rounds_and_sources((g, s) in with_set(9), k in 1usize..8, extra in 0usize..9) {
        let n = g.node_count();
        let base = propagate(&g, &s, k).unwrap().covered_within(k);
        let more_rounds = propagate(&g, &s, k + 1).unwrap().covered_within(k + 1);
        prop_assert!(base.is_subset(&more_rounds));
        let mut bigger = s.clone();
        bigger.insert(extra % n);
        let more_sources = propagate(&g, &bigger, k).unwrap().covered_within(k);
        prop_assert!(base.is_subset(&more_sources));
    }

    #[test]
    fn orientation_round_trip((g, s) in with_set(9), ell in 1usize..9) {
        let n = g.node_count();
        let trace = propagate(&g, &s, ell).unwrap();
        let covered = trace.covered_within(ell);
        let to = orientation_from_trace(&g, &trace).unwrap();
        prop_assert_eq!(validate(&g, &to, &covered), Ok(()));
        prop_assert_eq!(to.origin(), s.clone());
        let feasible = is_feasible(&g, &s, &NodeSet::full(n), ell).unwrap();
        prop_assert_eq!(validate(&g, &to, &NodeSet::full(n)).is_ok(), feasible);
    }

    #[test]
    fn heuristic_decompositions_are_valid(g in graph_strategy(12)) {
        let td = heuristic_td(&g);
        prop_assert_eq!(validate_td(&g, &td), Ok(()));
        let nice = to_nice(&td).unwrap();
        prop_assert_eq!(nice.check_shape(), Ok(()));
        prop_assert_eq!(nice.width(), td.width());
        prop_assert!(nice.len() <= 8 * (g.node_count() + td.bags.len()));
        prop_assert_eq!(validate_td(&g, &nice.to_td()), Ok(()));
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges((g, keep) in with_set(10)) {
        let (sub, map) = g.induced_subgraph(&keep).unwrap();
        let internal = g.edges().iter().filter(|&&(u, v)| keep.contains(u) && keep.contains(v)).count();
        prop_assert_eq!(sub.edge_count(), internal);
        for &(u, v) in sub.edges() {
            prop_assert!(g.has_edge(map.new_to_old[u], map.new_to_old[v]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dp_matches_brute_force((g, targets) in with_set(7), ell in 1usize..7) {
        let ntd = to_nice(&heuristic_td(&g)).unwrap();
        let dp = solve_dp(&g, &targets, ell, &ntd).unwrap();
        let bf = solve_bf(&g, &targets, ell, &BfOptions::default()).unwrap();
        prop_assert_eq!(Some(dp.opt), bf.opt());
        prop_assert_eq!(dp.witness.len(), dp.opt);
        prop_assert!(is_feasible(&g, &dp.witness, &targets, ell).unwrap());
    }

    #[test]
    fn canonical_assignments_follow_feasibility((g, s) in with_set(7), ell in 1usize..5) {
        let n = g.node_count();
        let model = build_ip_ell(&g, ell, false);
        let feasible = is_feasible(&g, &s, &NodeSet::full(n), ell).unwrap();
        let a = canonical_assignment_unchecked(&g, &s, ell).unwrap();
        let violated = check_assignment(&model, &a).unwrap();
        if feasible {
            prop_assert!(violated.is_empty(), "{:?}", violated);
            prop_assert!(canonical_assignment(&g, &s, ell).is_ok());
        } else {
            prop_assert!(!violated.is_empty());
            prop_assert!(violated.iter().all(|t| t.starts_with("(1)")));
        }
    }
}

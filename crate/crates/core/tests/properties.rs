use proptest::prelude::*;

use powercol_core::density::{max_average_degree, min_outdegree_orientation, Orientation};
use powercol_core::graph::bfs_distances;
use powercol_core::oracles::OracleLimits;
use powercol_core::ordering::*;
use powercol_core::power::{decompose_power_edge, graph_power, power_weak_orientation};
use powercol_core::square::{harmonious_square_order, verify_square_bound};
use powercol_core::{Graph, Rational, VertexOrdering};

fn graph_and_order(max_n: usize) -> impl Strategy<Value = (Graph, VertexOrdering)> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(n, bits, order)| {
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
            (Graph::from_edges(n, edges).unwrap(), VertexOrdering::from_sequence(order).unwrap())
        })
}

fn reach() -> impl Strategy<Value = Reach> {
    prop_oneof![(1usize..5).prop_map(Reach::Finite), Just(Reach::Infinite)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reach_routes_agree((g, sigma) in graph_and_order(10), k in reach()) {
        let all = all_weak_reach_sets(&g, &sigma, k).unwrap();
        for x in g.vertices() {
            let one = weak_reach_set(&g, &sigma, k, x).unwrap();
            prop_assert_eq!(&one, &all[x]);
            prop_assert!(one.contains(x));
            prop_assert!(one.iter().all(|y| !sigma.precedes(x, y)));
        }
    }

    #[test]
    fn reach_grows_with_k((g, sigma) in graph_and_order(9), k in 1usize..5) {
        let small = all_weak_reach_sets(&g, &sigma, Reach::Finite(k)).unwrap();
        let big = all_weak_reach_sets(&g, &sigma, Reach::Finite(k + 1)).unwrap();
        let inf = all_weak_reach_sets(&g, &sigma, Reach::Infinite).unwrap();
        for x in g.vertices() {
            prop_assert!(small[x].is_subset(&big[x]));
            prop_assert!(big[x].is_subset(&inf[x]));
        }
    }

    #[test]
    fn wcol_one_is_back_degree((g, sigma) in graph_and_order(10)) {
        let score = wcol_of_ordering(&g, &sigma, Reach::Finite(1)).unwrap();
        prop_assert_eq!(score.value, closed_back_degrees(&g, &sigma).into_iter().max().unwrap());
        let colors = greedy_coloring(&g, &sigma);
        prop_assert!(is_proper_coloring(&g, &colors));
        prop_assert!(*colors.iter().max().unwrap() < score.value);
    }

    #[test]
    fn heuristic_and_exact_are_consistent((g, _) in graph_and_order(8), k in reach()) {
        let h = wcol_heuristic(&g, k).unwrap();
        let (exact, sigma) = wcol_exact(&g, k, 12).unwrap();
        prop_assert_eq!(wcol_of_ordering(&g, &sigma, k).unwrap().value, exact);
        prop_assert!(wcol_of_ordering(&g, &h, k).unwrap().value >= exact);
        prop_assert!(exact >= coloring_number(&g).0);
    }

    #[test]
    fn power_edges_are_short_pairs((g, _) in graph_and_order(10), p in 1usize..5) {
        let gp = graph_power(&g, p).unwrap();
        for a in g.vertices() {
            let d = bfs_distances(&g, a).unwrap();
            for b in g.vertices() {
                prop_assert_eq!(gp.has_edge(a, b), a != b && d[b].is_within(p));
            }
        }
    }

    #[test]
    fn power_weights_are_certified((g, sigma) in graph_and_order(9), p in 1usize..5) {
        let po = power_weak_orientation(&g, p, &sigma).unwrap();
        let total: Rational = g.vertices().map(|v| po.orientation.out_weight(v)).sum();
        prop_assert_eq!(total, Rational::from_integer(po.power.m() as i128));
        for c in &po.certificates {
            prop_assert_eq!(c.path.len() - 1, bfs_distances(&g, c.u).unwrap()[c.v].finite().unwrap());
            for t in c.positive_tails() {
                let d = decompose_power_edge(c, t, &g, &sigma);
                prop_assert!(d.is_ok(), "{:?}", d);
            }
        }
        let mad = max_average_degree(&po.power).unwrap().mad;
        prop_assert!(mad <= po.orientation.max_out_weight().0 * Rational::from_integer(2));
    }

    #[test]
    fn harmonious_order_is_a_deterministic_permutation((g, l) in graph_and_order(10)) {
        let o = min_outdegree_orientation(&g).unwrap();
        let a = harmonious_square_order(&g, &o, &l).unwrap();
        let b = harmonious_square_order(&g, &o, &l).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.sigma.len(), g.n());
        prop_assert!(a.state.uncollected.is_empty());
    }

    #[test]
    fn square_bound_holds((g, l) in graph_and_order(10)) {
        let v = verify_square_bound(&g, Some(&l), &OracleLimits::default()).unwrap();
        for name in ["back-degree in G^2 <= bound", "greedy coloring of G^2 is proper", "colors used <= bound"] {
            if let Some(c) = v.report.find_check(name) {
                prop_assert!(c.holds, "{}: {:?}", name, c);
            }
        }
    }

    #[test]
    fn orientation_round_trip((g, _) in graph_and_order(9), flips in proptest::collection::vec(any::<bool>(), 36)) {
        let forward: Vec<bool> = (0..g.m()).map(|i| flips[i]).collect();
        let o = Orientation::from_directions(&g, &forward).unwrap();
        let again = Orientation::from_arcs(&g, o.arcs().iter().copied()).unwrap();
        prop_assert_eq!(&o, &again);
        prop_assert_eq!((0..g.n()).map(|v| o.out_degree(v)).sum::<usize>(), g.m());
    }
}

use flow_solver::{solve_nuk_bipartite, solve_weighted_degree_constrained};
use graph_core::{validate_coloring, Graph, WeightMap};
use num_bigint::BigUint;
use oracle::{brute_max_weight_degree_constrained, brute_nuk, nu, SearchBudget};
use proptest::prelude::*;

/// Random bipartite graph with sides of at most 4 vertices each.
fn bipartite_graph() -> impl Strategy<Value = Graph> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(left, right)| {
            let pairs: Vec<(usize, usize)> = (0..left)
                .flat_map(|a| (0..right).map(move |b| (a, left + b)))
                .collect();
            let count = pairs.len();
            proptest::sample::subsequence(pairs, 0..=count)
                .prop_map(move |edges| Graph::new(left + right, edges).unwrap())
        })
        .no_shrink()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flow_at_k1_is_the_matching_number(g in bipartite_graph()) {
        let (value, coloring) = solve_nuk_bipartite(&g, 1).unwrap();
        prop_assert_eq!(value, nu(&g, &SearchBudget::for_enumeration()).unwrap());
        prop_assert!(validate_coloring(&g, &coloring, None).unwrap().is_valid());
    }

    #[test]
    fn flow_agrees_with_exhaustive_search(g in bipartite_graph(), k in 1usize..=3) {
        let (value, coloring) = solve_nuk_bipartite(&g, k).unwrap();
        prop_assert_eq!(coloring.colored_count(), value);
        prop_assert!(validate_coloring(&g, &coloring, None).unwrap().is_valid());

        let w = WeightMap::unit(&g);
        let wc = graph_core::ColorConstraintMap::full(g.vertex_count(), k);
        let (brute, _) = brute_nuk(&g, k, &w, &wc, &SearchBudget::for_brute()).unwrap();
        prop_assert_eq!(BigUint::from(value), brute);
    }

    #[test]
    fn weighted_flow_agrees_with_exhaustive_search(
        g in bipartite_graph(),
        k in 1usize..=3,
        seed in 0u64..1000,
    ) {
        // deterministic pseudo-random weights in 1..=10
        let weights = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let x = seed.wrapping_mul(31).wrapping_add(i as u64);
                (e, BigUint::from(x % 10 + 1))
            })
            .collect();
        let w = WeightMap::new(&g, weights).unwrap();
        let (total, edges) = solve_weighted_degree_constrained(&g, k, &w).unwrap();
        let sub = Graph::new(g.vertex_count(), edges).unwrap();
        prop_assert!(sub.degree_profile().max <= k);

        let (brute, _) =
            brute_max_weight_degree_constrained(&g, k, &w, &SearchBudget::for_brute()).unwrap();
        prop_assert_eq!(total, brute);
    }
}

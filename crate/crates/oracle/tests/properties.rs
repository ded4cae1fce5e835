use graph_core::{ColorConstraintMap, Graph, WeightMap};
use num_bigint::BigUint;
use oracle::{
    brute_max_weight_degree_constrained, brute_nuk, enumerate_maximum_matchings,
    matching_spectrum, nu, SearchBudget,
};
use proptest::prelude::*;

/// Arbitrary graph on at most 7 vertices with at most 12 edges.
fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len().min(12))
                .prop_map(move |edges| Graph::new(n, edges).unwrap())
        })
        .no_shrink()
}

fn unit_nuk(g: &Graph, k: usize) -> BigUint {
    let w = WeightMap::unit(g);
    let wc = ColorConstraintMap::full(g.vertex_count(), k);
    brute_nuk(g, k, &w, &wc, &SearchBudget::for_brute())
        .expect("small graphs stay within budget")
        .0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nuk_grows_with_k_and_respects_simple_caps(g in small_graph()) {
        let nu1 = unit_nuk(&g, 1);
        let nu2 = unit_nuk(&g, 2);
        let nu3 = unit_nuk(&g, 3);
        prop_assert!(nu1 <= nu2);
        prop_assert!(nu2 <= nu3);

        let matching = BigUint::from(nu(&g, &SearchBudget::for_enumeration()).unwrap());
        prop_assert_eq!(&nu1, &matching);
        let edge_cap = BigUint::from(g.edge_count());
        for (k, value) in [(1u32, &nu1), (2, &nu2), (3, &nu3)] {
            prop_assert!(value <= &edge_cap);
            prop_assert!(value <= &(k * matching.clone()));
        }
    }

    #[test]
    fn enumeration_is_exact_and_ordered(g in small_graph()) {
        let budget = SearchBudget::for_enumeration();
        let target = nu(&g, &budget).unwrap();
        let all = enumerate_maximum_matchings(&g, &budget).unwrap();
        prop_assert!(!all.is_empty());
        let mut seen = std::collections::BTreeSet::new();
        for m in &all {
            prop_assert_eq!(m.len(), target);
            prop_assert!(seen.insert(m.edges().to_vec()), "duplicate matching");
        }
        let lists: Vec<_> = all.iter().map(|m| m.edges().to_vec()).collect();
        let mut sorted = lists.clone();
        sorted.sort();
        prop_assert_eq!(lists, sorted);
    }

    #[test]
    fn spectrum_witnesses_attain_their_values(g in small_graph()) {
        let budget = SearchBudget::for_enumeration();
        let s = matching_spectrum(&g, &budget).unwrap();
        prop_assert!(s.ell <= s.big_l);
        prop_assert!(s.big_l <= s.nu);
        for (witness, value) in [(&s.ell_witness, s.ell), (&s.big_l_witness, s.big_l)] {
            prop_assert_eq!(witness.len(), s.nu);
            let rest = g.delete_edges(witness.edges()).unwrap();
            prop_assert_eq!(nu(&rest, &budget).unwrap(), value);
        }
    }

    #[test]
    fn degree_one_subgraph_is_a_maximum_matching(g in small_graph()) {
        let w = WeightMap::unit(&g);
        let (value, edges) =
            brute_max_weight_degree_constrained(&g, 1, &w, &SearchBudget::for_brute()).unwrap();
        let expected = nu(&g, &SearchBudget::for_enumeration()).unwrap();
        prop_assert_eq!(value, BigUint::from(expected));
        prop_assert!(graph_core::Matching::new(&g, &edges).is_ok());
    }

    #[test]
    fn coloring_witness_is_valid_and_attains_value(g in small_graph()) {
        let w = WeightMap::unit(&g);
        let wc = ColorConstraintMap::full(g.vertex_count(), 2);
        let (value, coloring) =
            brute_nuk(&g, 2, &w, &wc, &SearchBudget::for_brute()).unwrap();
        let report = graph_core::validate_coloring(&g, &coloring, Some(&wc)).unwrap();
        prop_assert!(report.is_valid());
        prop_assert_eq!(value, BigUint::from(coloring.colored_count()));
    }
}

use graph_core::format::KecsDocument;
use graph_core::{validate_coloring, Edge, Graph, KEdgeColoring, Matching};
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Arbitrary small simple graph as (vertex_count, edge list).
fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..10).prop_flat_map(|n| {
        let all_pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        proptest::sample::subsequence(all_pairs.clone(), 0..=all_pairs.len())
            .prop_map(move |edges| Graph::new(n, edges).unwrap())
    })
}

proptest! {
    #[test]
    fn delete_edges_composes_over_disjoint_sets(g in small_graph(), split in any::<u64>()) {
        let edges = g.edges().to_vec();
        let (mut f1, mut f2) = (Vec::new(), Vec::new());
        for (i, &e) in edges.iter().enumerate() {
            if split >> (i % 64) & 1 == 0 { f1.push(e) } else { f2.push(e) }
        }
        let chained = g.delete_edges(&f1).unwrap().delete_edges(&f2).unwrap();
        let union: Vec<Edge> = f1.iter().chain(f2.iter()).copied().collect();
        let direct = g.delete_edges(&union).unwrap();
        prop_assert_eq!(chained, direct);
    }

    #[test]
    fn bipartition_is_stable_and_valid(g in small_graph()) {
        let first = g.bipartition();
        let second = g.bipartition();
        prop_assert_eq!(&first, &second);
        if let Some(bip) = first {
            prop_assert!(bip.validate(&g));
        }
    }

    #[test]
    fn valid_coloring_color_classes_are_matchings(g in small_graph(), seed in any::<u64>()) {
        // Greedily build some proper 3-coloring of a subset of edges.
        let k = 3;
        let mut used: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.vertex_count()];
        let mut c = KEdgeColoring::new(k);
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if seed >> (i % 64) & 1 == 0 { continue }
            if let Some(color) = (1..=k).find(|c| !used[u].contains(c) && !used[v].contains(c)) {
                c.set(u, v, color).unwrap();
                used[u].insert(color);
                used[v].insert(color);
            }
        }
        let report = validate_coloring(&g, &c, None).unwrap();
        prop_assert!(report.is_valid());
        for color in 1..=k {
            let class = c.color_class(color);
            prop_assert!(Matching::new(&g, &class).is_ok());
        }
    }

    #[test]
    fn format_round_trip_preserves_graph(g in small_graph()) {
        let doc = KecsDocument::from_parts(&g, None, None);
        let text = doc.render();
        let back = KecsDocument::parse(&text).unwrap();
        prop_assert_eq!(back.to_graph().unwrap(), g);
        prop_assert_eq!(back.render(), text);
    }
}

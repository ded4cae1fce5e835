use graph_core::{
    canonical_edge, gen, validate_coloring, ColorConstraintMap, Error, Graph, KEdgeColoring,
    Matching, Violation, WeightMap,
};
use num_bigint::BigUint;
use std::collections::{BTreeMap, BTreeSet};

#[test]
fn constructor_rejects_loops_and_bad_ids() {
    assert_eq!(
        Graph::new(3, [(1, 1)]).unwrap_err(),
        Error::Loop { vertex: 1 }
    );
    assert_eq!(
        Graph::new(3, [(0, 3)]).unwrap_err(),
        Error::VertexOutOfRange {
            vertex: 3,
            vertex_count: 3
        }
    );
}

#[test]
fn duplicate_edges_collapse() {
    let g = Graph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
    assert_eq!(g.edge_count(), 1);
    assert_eq!(g.edges(), &[(0, 1)]);
}

#[test]
fn labels_must_be_injective() {
    let labels: BTreeMap<_, _> = [(0, (1, 1)), (1, (1, 1))].into_iter().collect();
    let err = Graph::new(2, [(0, 1)])
        .unwrap()
        .with_labels(labels)
        .unwrap_err();
    assert!(matches!(err, Error::LabelNotInjective { .. }));
}

#[test]
fn bipartition_of_even_cycle() {
    let g = gen::cycle(4);
    let bip = g.bipartition().expect("C4 is bipartite");
    assert_eq!(bip.side_a(), &BTreeSet::from([0, 2]));
    assert_eq!(bip.side_b(), &BTreeSet::from([1, 3]));
}

#[test]
fn bipartition_of_triangle_is_none() {
    assert!(gen::cycle(3).bipartition().is_none());
}

#[test]
fn bipartition_puts_isolated_vertices_in_side_a() {
    let g = Graph::new(2, []).unwrap();
    let bip = g.bipartition().unwrap();
    assert_eq!(bip.side_a(), &BTreeSet::from([0, 1]));
    assert!(bip.side_b().is_empty());
}

#[test]
fn validate_alternating_cycle_coloring() {
    let g = gen::cycle(4);
    let mut c = KEdgeColoring::new(2);
    c.set(0, 1, 1).unwrap();
    c.set(1, 2, 2).unwrap();
    c.set(2, 3, 1).unwrap();
    c.set(3, 0, 2).unwrap();
    let report = validate_coloring(&g, &c, None).unwrap();
    assert!(report.is_valid());
}

#[test]
fn validate_reports_properness_clash() {
    let g = gen::path(3);
    let mut c = KEdgeColoring::new(2);
    c.set(0, 1, 1).unwrap();
    c.set(1, 2, 1).unwrap();
    let report = validate_coloring(&g, &c, None).unwrap();
    assert_eq!(
        report.violations,
        vec![Violation::Properness {
            vertex: 1,
            color: 1,
            count: 2
        }]
    );
}

#[test]
fn validate_reports_constraint_breach() {
    let g = gen::path(2);
    let mut c = KEdgeColoring::new(2);
    c.set(0, 1, 2).unwrap();
    let mut wc = ColorConstraintMap::full(2, 2);
    wc.set(0, BTreeSet::from([1])).unwrap();
    let report = validate_coloring(&g, &c, Some(&wc)).unwrap();
    assert_eq!(
        report.violations,
        vec![Violation::Constraint {
            vertex: 0,
            color: 2
        }]
    );
}

#[test]
fn validate_rejects_unknown_edge() {
    let g = gen::path(3);
    let mut c = KEdgeColoring::new(1);
    c.set(0, 2, 1).unwrap();
    assert_eq!(
        validate_coloring(&g, &c, None).unwrap_err(),
        Error::UnknownEdge { u: 0, v: 2 }
    );
}

#[test]
fn delete_edges_removes_only_listed_edges() {
    // Path on five vertices (four edges). Removing its middle-heavy maximum
    // matching {01, 23} leaves edges {12, 34}, which has matching number 1.
    let g = gen::path(5);
    let rest = g.delete_edges(&[(0, 1), (2, 3)]).unwrap();
    assert_eq!(rest.vertex_count(), 5);
    assert_eq!(rest.edges(), &[(1, 2), (3, 4)]);
}

#[test]
fn delete_edges_identity_and_total() {
    let g = gen::cycle(4);
    assert_eq!(g.delete_edges(&[]).unwrap(), g);
    let empty = g.delete_edges(g.edges()).unwrap();
    assert_eq!(empty.edge_count(), 0);
    assert_eq!(empty.vertex_count(), 4);
}

#[test]
fn delete_edges_rejects_foreign_edges() {
    let g = gen::path(3);
    assert_eq!(
        g.delete_edges(&[(0, 2)]).unwrap_err(),
        Error::UnknownEdge { u: 0, v: 2 }
    );
}

#[test]
fn degree_profile_star_and_cycle() {
    let star = gen::star(4);
    let p = star.degree_profile();
    assert_eq!((p.max, p.min), (3, 1));

    let c4 = gen::cycle(4);
    let p = c4.degree_profile();
    assert_eq!((p.max, p.min), (2, 2));
}

#[test]
fn degree_profile_of_fig1_tree() {
    let g = gen::fig1();
    let p = g.degree_profile();
    assert_eq!((p.max, p.min), (3, 1));
    let degree_three: Vec<_> = (0..g.vertex_count()).filter(|&v| g.degree(v) == 3).collect();
    assert_eq!(degree_three, vec![0, 5]);
    assert!(g.has_edge(0, 5), "the two degree-3 centers are adjacent");
}

#[test]
fn matching_rejects_shared_vertices_and_foreign_edges() {
    let g = gen::path(4);
    assert!(matches!(
        Matching::new(&g, &[(0, 1), (1, 2)]).unwrap_err(),
        Error::NotAMatching { .. }
    ));
    assert_eq!(
        Matching::new(&g, &[(0, 2)]).unwrap_err(),
        Error::UnknownEdge { u: 0, v: 2 }
    );
    let m = Matching::new(&g, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(m.len(), 2);
    assert!(m.covers(0) && m.covers(3) && !m.is_empty());
}

#[test]
fn coloring_rejects_color_out_of_range() {
    let mut c = KEdgeColoring::new(2);
    assert!(matches!(
        c.set(0, 1, 3).unwrap_err(),
        Error::ColorOutOfRange { color: 3, k: 2 }
    ));
    assert!(matches!(
        c.set(0, 1, 0).unwrap_err(),
        Error::ColorOutOfRange { color: 0, k: 2 }
    ));
}

#[test]
fn color_classes_are_matchings_when_valid() {
    let g = gen::cycle(6);
    // walk the cycle so colors alternate properly
    let mut c = KEdgeColoring::new(2);
    let order = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)];
    for (i, &(u, v)) in order.iter().enumerate() {
        c.set(u, v, 1 + (i % 2)).unwrap();
    }
    assert!(validate_coloring(&g, &c, None).unwrap().is_valid());
    for color in 1..=2 {
        let class = c.color_class(color);
        Matching::new(&g, &class).expect("color class must be a matching");
    }
}

#[test]
fn weight_map_requires_total_positive_coverage() {
    let g = gen::path(3);
    let w = WeightMap::unit(&g);
    assert!(w.is_unit());
    assert_eq!(w.sum(g.edges().iter()), BigUint::from(2u32));

    let partial: BTreeMap<_, _> = [((0, 1), BigUint::from(5u32))].into_iter().collect();
    assert_eq!(
        WeightMap::new(&g, partial).unwrap_err(),
        Error::MissingWeight { u: 1, v: 2 }
    );

    let zero: BTreeMap<_, _> = [
        ((0, 1), BigUint::from(0u32)),
        ((1, 2), BigUint::from(1u32)),
    ]
    .into_iter()
    .collect();
    assert_eq!(
        WeightMap::new(&g, zero).unwrap_err(),
        Error::ZeroWeight { u: 0, v: 1 }
    );
}

#[test]
fn constraint_map_bounds_colors() {
    let mut wc = ColorConstraintMap::full(3, 2);
    assert!(wc.is_full());
    wc.set(1, BTreeSet::from([1])).unwrap();
    assert!(!wc.is_full());
    assert!(wc.permits(1, 1) && !wc.permits(1, 2));
    assert!(matches!(
        wc.set(0, BTreeSet::from([3])).unwrap_err(),
        Error::ConstraintOutOfRange { .. }
    ));
}

#[test]
fn canonical_edge_orders_endpoints() {
    assert_eq!(canonical_edge(5, 2).unwrap(), (2, 5));
    assert_eq!(
        canonical_edge(4, 4).unwrap_err(),
        Error::Loop { vertex: 4 }
    );
}

#[test]
fn named_generators_have_expected_shape() {
    assert_eq!(gen::k33().edge_count(), 9);
    assert_eq!(gen::k4().edge_count(), 6);
    assert_eq!(gen::prism3().edge_count(), 9);
    let pet = gen::petersen();
    assert_eq!((pet.vertex_count(), pet.edge_count()), (10, 15));
    assert!(pet.degree_profile().degrees.iter().all(|&d| d == 3));
    let fig1 = gen::fig1();
    assert_eq!((fig1.vertex_count(), fig1.edge_count()), (10, 9));
    assert!(fig1.is_connected());
}

#[test]
fn seeded_generators_are_reproducible() {
    let a = gen::random_bipartite(8, 0.4, 7);
    let b = gen::random_bipartite(8, 0.4, 7);
    assert_eq!(a, b);
    assert!(a.bipartition().is_some());

    let f1 = gen::random_forest(10, 0.8, 3);
    let f2 = gen::random_forest(10, 0.8, 3);
    assert_eq!(f1, f2);
}

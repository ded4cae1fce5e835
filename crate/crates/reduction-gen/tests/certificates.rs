use graph_core::validate_coloring;
use num_bigint::BigUint;
use oracle::SearchBudget;
use reduction_gen::{
    annotate_color_constraints, assignment_to_deletion_set, build_max2sat_instance,
    build_min2sat_instance, deletion_set_to_assignment, lemma2_lower_bound_witness,
    CertificateError, DeletionSet, InstanceKind, ReductionError,
};
use sat_core::{count_satisfied, Lit, SatError, TruthAssignment, TwoCnf};

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn mixed_pair() -> TwoCnf {
    TwoCnf::new(
        2,
        vec![(Lit::pos(1), Lit::pos(2)), (Lit::neg(1), Lit::neg(2))],
    )
    .unwrap()
}

fn repeated_clause() -> TwoCnf {
    TwoCnf::new(
        2,
        vec![(Lit::pos(1), Lit::pos(2)), (Lit::pos(1), Lit::pos(2))],
    )
    .unwrap()
}

fn sign_mix_three() -> TwoCnf {
    TwoCnf::new(
        2,
        vec![
            (Lit::pos(1), Lit::pos(2)),
            (Lit::neg(1), Lit::pos(2)),
            (Lit::pos(1), Lit::neg(2)),
        ],
    )
    .unwrap()
}

/// All-true deletion set for `repeated_clause` written out by hand, using
/// the heavy square edges instead of curved substitution. Its cyclic
/// signature decodes cleanly but its weight sits 4 above the assignment
/// form at any q.
fn unsubstituted_all_true() -> Vec<(usize, usize)> {
    vec![
        (0, 15),
        (16, 31),
        (2, 3),
        (4, 5),
        (8, 9),
        (10, 11),
        (18, 19),
        (20, 21),
        (24, 25),
        (26, 27),
    ]
}

#[test]
fn deletion_weight_tracks_satisfied_clauses() {
    for cnf in [mixed_pair(), repeated_clause(), sign_mix_three()] {
        let m = cnf.num_clauses();
        let n = cnf.num_vars();
        for q in [3usize, 8] {
            let inst = build_min2sat_instance(&cnf, 1, Some(q)).unwrap();
            let w = inst.weights.as_ref().unwrap();
            for idx in 0..(1u64 << n) {
                let a = TruthAssignment::from_index(n, idx);
                let set = assignment_to_deletion_set(&inst, &a).unwrap();
                let sat = count_satisfied(&cnf, &a).unwrap();
                let form = big(m as u64) * ((big(1) << (q + 2)) + big(1))
                    + big(2) * big(sat as u64);
                assert_eq!(set.weight(w), form, "q={q} idx={idx}");
            }
        }
    }
}

#[test]
fn doubly_satisfied_pair_weighs_134() {
    // q = 4 and both clauses satisfied: 2 * (2^6 + 1) + 2 * 2
    let inst = build_min2sat_instance(&mixed_pair(), 1, Some(4)).unwrap();
    let a = TruthAssignment::new(vec![true, false]);
    assert_eq!(count_satisfied(&mixed_pair(), &a).unwrap(), 2);
    let set = assignment_to_deletion_set(&inst, &a).unwrap();
    assert_eq!(set.weight(inst.weights.as_ref().unwrap()), big(134));
}

#[test]
fn assignments_round_trip_through_deletion_sets() {
    for cnf in [mixed_pair(), repeated_clause()] {
        let inst = build_min2sat_instance(&cnf, 1, Some(3)).unwrap();
        for idx in 0..4u64 {
            let a = TruthAssignment::from_index(2, idx);
            let set = assignment_to_deletion_set(&inst, &a).unwrap();
            let back = deletion_set_to_assignment(&inst, &set).unwrap();
            assert_eq!(back.bits(), a.bits());
        }
    }
}

#[test]
fn deletion_set_normalizes_its_edges() {
    let inst = build_min2sat_instance(&repeated_clause(), 1, Some(3)).unwrap();
    let mut shuffled = unsubstituted_all_true();
    shuffled.reverse();
    shuffled.push((0, 15));
    let set = DeletionSet::new(&inst, shuffled).unwrap();
    let mut sorted = unsubstituted_all_true();
    sorted.sort_unstable();
    assert_eq!(set.edges(), &sorted[..]);
}

#[test]
fn empty_set_leaves_degree_three() {
    let inst = build_min2sat_instance(&repeated_clause(), 1, Some(3)).unwrap();
    let err = DeletionSet::new(&inst, vec![]).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::Certificate(CertificateError::DegreeAfterDeletion {
            vertex: 2,
            degree: 3,
        })
    ));
}

#[test]
fn foreign_edge_rejected() {
    let inst = build_min2sat_instance(&repeated_clause(), 1, Some(3)).unwrap();
    let err = DeletionSet::new(&inst, vec![(0, 2)]).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::Certificate(CertificateError::EdgeNotInGraph { u: 0, v: 2 })
    ));
}

#[test]
fn overlapping_set_decodes_to_no_assignment() {
    let inst = build_min2sat_instance(&repeated_clause(), 1, Some(3)).unwrap();
    // (0, 4) shares u11 with the walk hook and v21 with the square side
    let mut edges = unsubstituted_all_true();
    edges.push((0, 4));
    let set = DeletionSet::new(&inst, edges).unwrap();
    let err = deletion_set_to_assignment(&inst, &set).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::Certificate(CertificateError::NotAMatching(_))
    ));
}

#[test]
fn mixed_selection_detected() {
    let inst = build_min2sat_instance(&repeated_clause(), 1, Some(3)).unwrap();
    // x1's first occurrence keeps its cyclic edge (2, 20) while the second
    // drops (4, 18); curved edges and pendants patch the coverage so the
    // set is still a matching with every degree-3 vertex met
    let edges = vec![
        (0, 4),
        (2, 20),
        (3, 5),
        (6, 10),
        (8, 26),
        (9, 11),
        (14, 15),
        (17, 21),
        (18, 25),
        (19, 24),
        (23, 27),
    ];
    for &(u, v) in &edges {
        assert!(inst.graph.has_edge(u, v), "({u}, {v}) missing");
    }
    let set = DeletionSet::new(&inst, edges).unwrap();
    let err = deletion_set_to_assignment(&inst, &set).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::Certificate(CertificateError::MixedSelection { variable: 1 })
    ));
}

#[test]
fn off_form_weight_rejected() {
    let inst = build_min2sat_instance(&repeated_clause(), 1, Some(3)).unwrap();
    let set = DeletionSet::new(&inst, unsubstituted_all_true()).unwrap();
    match deletion_set_to_assignment(&inst, &set).unwrap_err() {
        ReductionError::Certificate(CertificateError::WeightIdentity { expected, actual }) => {
            assert_eq!(expected, big(70));
            assert_eq!(actual, big(74));
        }
        other => panic!("expected a weight identity error, got {other}"),
    }
}

#[test]
fn assignment_length_checked() {
    let inst = build_min2sat_instance(&repeated_clause(), 1, Some(3)).unwrap();
    let a = TruthAssignment::new(vec![true, true, true]);
    let err = assignment_to_deletion_set(&inst, &a).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::Sat(SatError::LengthMismatch {
            assignment: 3,
            formula: 2,
        })
    ));
}

#[test]
fn certificates_demand_the_weighted_kind() {
    let plain = build_max2sat_instance(&mixed_pair(), 1).unwrap();
    let a = TruthAssignment::new(vec![true, true]);
    let err = assignment_to_deletion_set(&plain, &a).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::WrongKind {
            expected: InstanceKind::Min2SatWeighted,
            found: InstanceKind::Max2Sat,
        }
    ));
}

#[test]
fn pair_witness_attains_spectrum_sum() {
    let inst = annotate_color_constraints(&build_max2sat_instance(&mixed_pair(), 1).unwrap())
        .unwrap();
    let budget = SearchBudget::for_enumeration().with_max_edges(64);
    let witness = lemma2_lower_bound_witness(&inst, &budget).unwrap();
    // nu + L = 22 + 16 on this instance
    assert_eq!(witness.colored_count(), 38);
    let report =
        validate_coloring(&inst.graph, &witness, inst.constraints.as_ref()).unwrap();
    assert!(report.is_valid());
}

#[test]
fn pair_witness_demands_the_colored_kind() {
    let plain = build_max2sat_instance(&mixed_pair(), 1).unwrap();
    let budget = SearchBudget::for_enumeration().with_max_edges(64);
    let err = lemma2_lower_bound_witness(&plain, &budget).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::WrongKind {
            expected: InstanceKind::Max2SatColored,
            found: InstanceKind::Max2Sat,
        }
    ));
}

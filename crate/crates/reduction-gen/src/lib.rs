//! Builders for the two 2-CNF-to-graph reduction families, the certificate
//! mappings between truth assignments and graph objects, and desk-scale
//! verifiers that measure both sides of the claimed equalities with
//! independent solvers.
//!
//! Instances are built gadget by gadget on an integer lattice, and every
//! builder re-checks the family's structural invariants (vertex and edge
//! counts, bipartite parity, degree bound, matching number) before
//! returning: a construction bug fails loudly instead of producing a
//! plausible-looking graph.

use graph_core::{ColorConstraintMap, Edge, Graph, Vertex, WeightMap};
use num_bigint::BigUint;
use sat_core::SatError;
use std::collections::BTreeMap;
use std::fmt;

mod build;
mod certify;
mod emit;
mod verify;

pub use build::{annotate_color_constraints, build_max2sat_instance, build_min2sat_instance};
pub use certify::{
    assignment_to_deletion_set, deletion_set_to_assignment, lemma2_lower_bound_witness,
};
pub use emit::emit_instance;
pub use verify::{
    verify_lemma2, verify_theorem1, verify_theorem3, Lemma2Report, Theorem1Report, Theorem3Report,
    Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Max2Sat,
    Max2SatColored,
    Min2SatWeighted,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Max2Sat => "max2sat",
            InstanceKind::Max2SatColored => "max2sat-colored",
            InstanceKind::Min2SatWeighted => "min2sat-weighted",
        })
    }
}

/// Structural position of a vertex inside its reduction instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RoleTag {
    U11,
    U12,
    U21,
    U22,
    V11,
    V12,
    V21,
    V22,
    Path,
    ClauseConnector,
}

impl fmt::Display for RoleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RoleTag::U11 => "u11",
            RoleTag::U12 => "u12",
            RoleTag::U21 => "u21",
            RoleTag::U22 => "u22",
            RoleTag::V11 => "v11",
            RoleTag::V12 => "v12",
            RoleTag::V21 => "v21",
            RoleTag::V22 => "v22",
            RoleTag::Path => "path",
            RoleTag::ClauseConnector => "clause-connector",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Role {
    pub tag: RoleTag,
    /// 1-based clause index, when the vertex belongs to a clause gadget.
    pub clause: Option<usize>,
    /// 1-based variable index, for variable-gadget vertices.
    pub variable: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meta {
    /// Clause count of the source formula.
    pub m: usize,
    /// Variable count of the source formula.
    pub n: usize,
    /// The decision parameter K of the source problem.
    pub k_param: usize,
    /// Weight exponent, weighted instances only.
    pub q: Option<usize>,
    /// Decision threshold for this kind, exact.
    pub threshold: BigUint,
}

/// A reduction instance: the graph with lattice-coordinate labels, optional
/// per-vertex color constraints or edge weights depending on the kind, the
/// derived parameters, and the role of every vertex.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub kind: InstanceKind,
    pub graph: Graph,
    pub constraints: Option<ColorConstraintMap>,
    pub weights: Option<WeightMap>,
    pub meta: Meta,
    pub roles: BTreeMap<Vertex, Role>,
    /// Per-clause vertex ids and literal signs, kept for the certificate
    /// mappings.
    pub(crate) layout: build::Layout,
}

impl ReductionInstance {
    /// The weight map, present on every weighted instance.
    pub(crate) fn weight_map(&self) -> &WeightMap {
        self.weights
            .as_ref()
            .expect("weighted kinds always carry weights")
    }
}

/// An edge set whose removal brings every degree down to at most 2,
/// checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionSet {
    edges: Vec<Edge>,
}

impl DeletionSet {
    /// Validates that the edges belong to the instance graph and that the
    /// graph without them has maximum degree at most 2.
    pub fn new(inst: &ReductionInstance, edges: Vec<Edge>) -> Result<DeletionSet, ReductionError> {
        let mut sorted = edges;
        sorted.sort_unstable();
        sorted.dedup();
        for &(u, v) in &sorted {
            if !inst.graph.has_edge(u, v) {
                return Err(CertificateError::EdgeNotInGraph { u, v }.into());
            }
        }
        let rest = inst.graph.delete_edges(&sorted)?;
        let profile = rest.degree_profile();
        if profile.max > 2 {
            let vertex = profile
                .degrees
                .iter()
                .position(|&d| d > 2)
                .expect("a degree above the maximum exists");
            return Err(CertificateError::DegreeAfterDeletion {
                vertex,
                degree: profile.degrees[vertex],
            }
            .into());
        }
        Ok(DeletionSet { edges: sorted })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self, w: &WeightMap) -> BigUint {
        w.sum(self.edges.iter())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum CertificateError {
    #[error("edge ({u}, {v}) is not in the instance graph")]
    EdgeNotInGraph { u: Vertex, v: Vertex },
    #[error("deleting the set leaves vertex {vertex} with degree {degree}")]
    DegreeAfterDeletion { vertex: Vertex, degree: usize },
    #[error("deletion set is not a matching: {0}")]
    NotAMatching(graph_core::Error),
    #[error("variable {variable} mixes vertical and horizontal selections")]
    MixedSelection { variable: usize },
    #[error("deletion set weight {actual} does not match the assignment form {expected}")]
    WeightIdentity { expected: BigUint, actual: BigUint },
}

#[derive(Debug, thiserror::Error)]
pub enum ReductionError {
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Graph(#[from] graph_core::Error),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Flow(#[from] flow_solver::FlowError),
    #[error("K={k_param} is out of range (1 ..= {m} clauses)")]
    KOutOfRange { k_param: usize, m: usize },
    #[error("q={q} is below the minimum {q_min} required by the weight scheme")]
    QBelowMinimum { q: usize, q_min: usize },
    #[error("operation requires a {expected} instance, got {found}")]
    WrongKind {
        expected: InstanceKind,
        found: InstanceKind,
    },
    #[error("instance invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

/// Smallest exponent keeping the weight classes separated for m clauses.
pub fn q_minimum(m: usize) -> usize {
    let bound = 2 * m + 1;
    let mut q = 0;
    while (1usize << q) < bound {
        q += 1;
    }
    q
}

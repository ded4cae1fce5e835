//! Instance builders. Vertices live on an integer lattice; the parity of
//! x + y is the bipartition class, which the invariant check re-derives
//! edge by edge.

use crate::{InstanceKind, Meta, ReductionError, ReductionInstance, Role, RoleTag};
use graph_core::{ColorConstraintMap, Graph, Vertex, WeightMap};
use num_bigint::BigUint;
use oracle::SearchBudget;
use sat_core::{Lit, TwoCnf};
use std::collections::{BTreeMap, BTreeSet};

/// Vertex ids of one variable gadget. The u-row vertices `u21`/`u22` exist
/// only in the unweighted family; the v-square is common to both.
#[derive(Debug, Clone)]
pub(crate) struct GadgetIds {
    pub(crate) variable: usize,
    pub(crate) negated: bool,
    pub(crate) u11: Vertex,
    pub(crate) u12: Vertex,
    pub(crate) u21: Option<Vertex>,
    pub(crate) u22: Option<Vertex>,
    pub(crate) v11: Vertex,
    pub(crate) v12: Vertex,
    pub(crate) v21: Vertex,
    pub(crate) v22: Vertex,
}

impl GadgetIds {
    /// Attachment point of curved clause edges on the odd side.
    pub(crate) fn curved_odd(&self) -> Vertex {
        if self.negated {
            self.v22
        } else {
            self.v11
        }
    }

    /// Attachment point of curved clause edges on the even side.
    pub(crate) fn curved_even(&self) -> Vertex {
        self.v12
    }
}

#[derive(Debug, Clone)]
pub(crate) struct ClauseIds {
    pub(crate) gadgets: [GadgetIds; 2],
    /// The four path vertices of this clause's rows, ascending.
    pub(crate) path: [Vertex; 4],
}

#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub(crate) clauses: Vec<ClauseIds>,
}

impl Layout {
    /// Gadgets of one variable in clause-then-slot order; the cyclic joining
    /// edges follow this order.
    pub(crate) fn occurrences(&self, variable: usize) -> Vec<&GadgetIds> {
        let mut out = Vec::new();
        for clause in &self.clauses {
            for g in &clause.gadgets {
                if g.variable == variable {
                    out.push(g);
                }
            }
        }
        out
    }

    /// The cyclic joining edges of one variable, one per occurrence: the
    /// edge owned by occurrence t runs from its v11 to the next
    /// occurrence's v21.
    pub(crate) fn cyclic_edges(&self, variable: usize) -> Vec<(Vertex, Vertex)> {
        let occ = self.occurrences(variable);
        let r = occ.len();
        (0..r).map(|t| (occ[t].v11, occ[(t + 1) % r].v21)).collect()
    }
}

fn ensure(cond: bool, detail: &str) -> Result<(), ReductionError> {
    if cond {
        Ok(())
    } else {
        Err(ReductionError::Invariant(detail.to_string()))
    }
}

struct Assembly {
    edges: Vec<(Vertex, Vertex)>,
    labels: BTreeMap<Vertex, (i64, i64)>,
    roles: BTreeMap<Vertex, Role>,
}

impl Assembly {
    fn new() -> Self {
        Assembly {
            edges: Vec::new(),
            labels: BTreeMap::new(),
            roles: BTreeMap::new(),
        }
    }

    fn vertex(&mut self, id: Vertex, x: i64, y: i64, role: Role) {
        self.labels.insert(id, (x, y));
        self.roles.insert(id, role);
    }

    fn weighted_edge(
        &mut self,
        weights: &mut BTreeMap<(Vertex, Vertex), BigUint>,
        u: Vertex,
        v: Vertex,
        w: &BigUint,
    ) {
        self.edges.push((u, v));
        weights.insert(crate::certify::ce(u, v), w.clone());
    }
}

fn gadget_role(tag: RoleTag, clause: usize, variable: usize) -> Role {
    Role {
        tag,
        clause: Some(clause),
        variable: Some(variable),
    }
}

/// Seven-edge variable gadget of the unweighted family. `base` is the first
/// of eight consecutive vertex ids, order u11 u12 u21 u22 v11 v12 v21 v22.
fn max2sat_gadget(asm: &mut Assembly, lit: Lit, j: usize, base: usize) -> GadgetIds {
    let i = lit.var as i64;
    let jj = j as i64;
    let ids = GadgetIds {
        variable: lit.var,
        negated: lit.negated,
        u11: base,
        u12: base + 1,
        u21: Some(base + 2),
        u22: Some(base + 3),
        v11: base + 4,
        v12: base + 5,
        v21: base + 6,
        v22: base + 7,
    };
    if lit.negated {
        asm.vertex(
            ids.u11,
            4 * i - 3,
            4 * jj - 1,
            gadget_role(RoleTag::U11, j, lit.var),
        );
        asm.vertex(
            ids.u12,
            4 * i - 2,
            4 * jj - 1,
            gadget_role(RoleTag::U12, j, lit.var),
        );
        asm.vertex(
            ids.u21.unwrap(),
            4 * i - 3,
            4 * jj,
            gadget_role(RoleTag::U21, j, lit.var),
        );
        asm.vertex(
            ids.u22.unwrap(),
            4 * i - 2,
            4 * jj,
            gadget_role(RoleTag::U22, j, lit.var),
        );
    } else {
        asm.vertex(
            ids.u11,
            4 * i - 1,
            4 * jj - 3,
            gadget_role(RoleTag::U11, j, lit.var),
        );
        asm.vertex(
            ids.u21.unwrap(),
            4 * i,
            4 * jj - 3,
            gadget_role(RoleTag::U21, j, lit.var),
        );
        asm.vertex(
            ids.u12,
            4 * i - 1,
            4 * jj - 2,
            gadget_role(RoleTag::U12, j, lit.var),
        );
        asm.vertex(
            ids.u22.unwrap(),
            4 * i,
            4 * jj - 2,
            gadget_role(RoleTag::U22, j, lit.var),
        );
    }
    asm.vertex(
        ids.v21,
        4 * i - 1,
        4 * jj - 1,
        gadget_role(RoleTag::V21, j, lit.var),
    );
    asm.vertex(
        ids.v22,
        4 * i,
        4 * jj - 1,
        gadget_role(RoleTag::V22, j, lit.var),
    );
    asm.vertex(
        ids.v11,
        4 * i - 1,
        4 * jj,
        gadget_role(RoleTag::V11, j, lit.var),
    );
    asm.vertex(
        ids.v12,
        4 * i,
        4 * jj,
        gadget_role(RoleTag::V12, j, lit.var),
    );

    asm.edges.push((ids.u11, ids.u12));
    asm.edges.push((ids.u21.unwrap(), ids.u22.unwrap()));
    asm.edges.push((ids.u12, ids.v21));
    if lit.negated {
        asm.edges.push((ids.u22.unwrap(), ids.v11));
    } else {
        asm.edges.push((ids.u22.unwrap(), ids.v22));
    }
    asm.edges.push((ids.v21, ids.v22));
    asm.edges.push((ids.v22, ids.v12));
    asm.edges.push((ids.v11, ids.v12));
    ids
}

/// Five-edge variable gadget of the weighted family. `base` is the first of
/// six consecutive vertex ids, order u11 u12 v11 v12 v21 v22. Returns the
/// ids together with the gadget's weighted edges.
fn min2sat_gadget(
    asm: &mut Assembly,
    lit: Lit,
    j: usize,
    base: usize,
    pendant_w: &BigUint,
    block_w: &BigUint,
    plus2_w: &BigUint,
    weights: &mut BTreeMap<(Vertex, Vertex), BigUint>,
) -> GadgetIds {
    let i = lit.var as i64;
    let jj = j as i64;
    let ids = GadgetIds {
        variable: lit.var,
        negated: lit.negated,
        u11: base,
        u12: base + 1,
        u21: None,
        u22: None,
        v11: base + 2,
        v12: base + 3,
        v21: base + 4,
        v22: base + 5,
    };
    if lit.negated {
        asm.vertex(
            ids.u11,
            4 * i - 2,
            4 * jj - 1,
            gadget_role(RoleTag::U11, j, lit.var),
        );
        asm.vertex(
            ids.u12,
            4 * i - 2,
            4 * jj,
            gadget_role(RoleTag::U12, j, lit.var),
        );
    } else {
        asm.vertex(
            ids.u11,
            4 * i - 1,
            4 * jj - 2,
            gadget_role(RoleTag::U11, j, lit.var),
        );
        asm.vertex(
            ids.u12,
            4 * i,
            4 * jj - 2,
            gadget_role(RoleTag::U12, j, lit.var),
        );
    }
    asm.vertex(
        ids.v21,
        4 * i - 1,
        4 * jj - 1,
        gadget_role(RoleTag::V21, j, lit.var),
    );
    asm.vertex(
        ids.v22,
        4 * i,
        4 * jj - 1,
        gadget_role(RoleTag::V22, j, lit.var),
    );
    asm.vertex(
        ids.v11,
        4 * i - 1,
        4 * jj,
        gadget_role(RoleTag::V11, j, lit.var),
    );
    asm.vertex(
        ids.v12,
        4 * i,
        4 * jj,
        gadget_role(RoleTag::V12, j, lit.var),
    );

    asm.weighted_edge(weights, ids.u11, ids.v21, pendant_w);
    if lit.negated {
        asm.weighted_edge(weights, ids.u12, ids.v11, pendant_w);
        asm.weighted_edge(weights, ids.v21, ids.v22, block_w);
        asm.weighted_edge(weights, ids.v11, ids.v12, block_w);
        asm.weighted_edge(weights, ids.v22, ids.v12, plus2_w);
    } else {
        asm.weighted_edge(weights, ids.u12, ids.v22, pendant_w);
        asm.weighted_edge(weights, ids.v21, ids.v22, block_w);
        asm.weighted_edge(weights, ids.v22, ids.v12, block_w);
        asm.weighted_edge(weights, ids.v11, ids.v12, plus2_w);
    }
    ids
}

/// Structural checks shared by both families: exact vertex and edge counts,
/// connectivity, the lattice-parity bipartition, a degree cap, the exact
/// matching number, and a role for every vertex.
fn check_structure(
    g: &Graph,
    vertices: usize,
    edges: usize,
    degree_cap: usize,
    nu_expected: usize,
    roles: &BTreeMap<Vertex, Role>,
) -> Result<(), ReductionError> {
    ensure(g.vertex_count() == vertices, "vertex count")?;
    ensure(g.edge_count() == edges, "edge count")?;
    ensure(g.is_connected(), "connectivity")?;
    ensure(g.bipartition().is_some(), "bipartite")?;
    for &(u, v) in g.edges() {
        let (xu, yu) = g
            .label(u)
            .ok_or_else(|| ReductionError::Invariant("label".into()))?;
        let (xv, yv) = g
            .label(v)
            .ok_or_else(|| ReductionError::Invariant("label".into()))?;
        ensure(
            (xu + yu).rem_euclid(2) != (xv + yv).rem_euclid(2),
            "lattice parity across every edge",
        )?;
    }
    ensure(g.degree_profile().max <= degree_cap, "degree cap")?;
    let nu = oracle::nu(g, &SearchBudget::for_enumeration())?;
    ensure(nu == nu_expected, "matching number")?;
    ensure(roles.len() == vertices, "role completeness")?;
    Ok(())
}

/// Builds the unweighted instance: per clause two 8-vertex variable
/// gadgets, a 2-vertex connector, and four path vertices; one path spine
/// joins the clauses and each variable's occurrences are joined cyclically.
pub fn build_max2sat_instance(
    cnf: &TwoCnf,
    k_param: usize,
) -> Result<ReductionInstance, ReductionError> {
    cnf.check_occurrences()?;
    let m = cnf.num_clauses();
    let n = cnf.num_vars();
    if k_param < 1 || k_param > m {
        return Err(ReductionError::KOutOfRange { k_param, m });
    }

    let mut asm = Assembly::new();
    let mut clauses: Vec<ClauseIds> = Vec::new();
    for (cj, &(lit1, lit2)) in cnf.clauses().iter().enumerate() {
        let j = cj + 1;
        let jj = j as i64;
        let base = cj * 22;
        let g1 = max2sat_gadget(&mut asm, lit1, j, base);
        let g2 = max2sat_gadget(&mut asm, lit2, j, base + 8);

        let c1 = base + 16;
        let c2 = base + 17;
        let crole = Role {
            tag: RoleTag::ClauseConnector,
            clause: Some(j),
            variable: None,
        };
        asm.vertex(c1, 0, 4 * jj - 1, crole);
        asm.vertex(c2, 0, 4 * jj, crole);
        asm.edges.push((c1, c2));
        asm.edges.push((c1, g1.v12));
        asm.edges.push((c1, g2.v12));

        let path = [base + 18, base + 19, base + 20, base + 21];
        for (t, &p) in path.iter().enumerate() {
            asm.vertex(
                p,
                -1,
                4 * jj - 3 + t as i64,
                Role {
                    tag: RoleTag::Path,
                    clause: None,
                    variable: None,
                },
            );
        }
        asm.edges.push((path[0], path[1]));
        asm.edges.push((path[1], path[2]));
        asm.edges.push((path[2], path[3]));
        if cj > 0 {
            asm.edges.push((clauses[cj - 1].path[3], path[0]));
        }
        asm.edges.push((path[3], g1.u11));

        clauses.push(ClauseIds {
            gadgets: [g1, g2],
            path,
        });
    }

    let layout = Layout { clauses };
    for i in 1..=n {
        asm.edges.extend(layout.cyclic_edges(i));
    }

    let graph = Graph::new(22 * m, asm.edges)?.with_labels(asm.labels)?;
    check_structure(&graph, 22 * m, 24 * m - 1, 3, 11 * m, &asm.roles)?;
    ensure(graph.degree_profile().max == 3, "maximum degree exactly 3")?;

    Ok(ReductionInstance {
        kind: InstanceKind::Max2Sat,
        graph,
        constraints: None,
        weights: None,
        meta: Meta {
            m,
            n,
            k_param,
            q: None,
            threshold: BigUint::from(7 * m + k_param - 1),
        },
        roles: asm.roles,
        layout,
    })
}

/// Adds the 2-coloring constraints to an unweighted instance: every vertex
/// of degree one is pinned to color 1, every other vertex may use colors 1
/// and 2. The decision threshold moves to the colorable-subgraph scale.
pub fn annotate_color_constraints(
    inst: &ReductionInstance,
) -> Result<ReductionInstance, ReductionError> {
    if inst.kind != InstanceKind::Max2Sat {
        return Err(ReductionError::WrongKind {
            expected: InstanceKind::Max2Sat,
            found: inst.kind,
        });
    }
    let g = &inst.graph;
    let mut wc = ColorConstraintMap::full(g.vertex_count(), 2);
    let mut pinned = 0usize;
    for v in 0..g.vertex_count() {
        if g.degree(v) == 1 {
            wc.set(v, BTreeSet::from([1]))?;
            pinned += 1;
        }
    }
    let m = inst.meta.m;
    ensure(
        pinned == 4 * m + 1,
        "one pinned vertex per degree-one vertex",
    )?;

    let mut out = inst.clone();
    out.kind = InstanceKind::Max2SatColored;
    out.constraints = Some(wc);
    out.meta.threshold = BigUint::from(11 * m + (7 * m + inst.meta.k_param - 1));
    Ok(out)
}

/// Builds the weighted instance: per clause two 6-vertex variable gadgets,
/// two curved clause edges, and four path vertices. Edge weights follow the
/// power scheme with exponent `q` (default 16m, floor `q_minimum`).
pub fn build_min2sat_instance(
    cnf: &TwoCnf,
    k_param: usize,
    q_override: Option<usize>,
) -> Result<ReductionInstance, ReductionError> {
    cnf.check_occurrences()?;
    let m = cnf.num_clauses();
    let n = cnf.num_vars();
    if k_param < 1 || k_param > m {
        return Err(ReductionError::KOutOfRange { k_param, m });
    }
    let q = q_override.unwrap_or(16 * m);
    let q_min = crate::q_minimum(m);
    if q < q_min {
        return Err(ReductionError::QBelowMinimum { q, q_min });
    }

    let one = BigUint::from(1u32);
    let block_w = &one << q; // 2^q
    let curved_w = &block_w + 1u32; // 2^q + 1
    let plus2_w = &block_w + 2u32; // 2^q + 2
    let pendant_w = &one << (2 * q); // 4^q

    let mut asm = Assembly::new();
    let mut weights: BTreeMap<(Vertex, Vertex), BigUint> = BTreeMap::new();
    let mut clauses: Vec<ClauseIds> = Vec::new();
    for (cj, &(lit1, lit2)) in cnf.clauses().iter().enumerate() {
        let j = cj + 1;
        let jj = j as i64;
        let base = cj * 16;
        let g1 = min2sat_gadget(
            &mut asm,
            lit1,
            j,
            base,
            &pendant_w,
            &block_w,
            &plus2_w,
            &mut weights,
        );
        let g2 = min2sat_gadget(
            &mut asm,
            lit2,
            j,
            base + 6,
            &pendant_w,
            &block_w,
            &plus2_w,
            &mut weights,
        );

        asm.weighted_edge(&mut weights, g1.curved_odd(), g2.curved_even(), &curved_w);
        asm.weighted_edge(&mut weights, g1.curved_even(), g2.curved_odd(), &curved_w);

        let path = [base + 12, base + 13, base + 14, base + 15];
        for (t, &p) in path.iter().enumerate() {
            asm.vertex(
                p,
                0,
                4 * jj - 3 + t as i64,
                Role {
                    tag: RoleTag::Path,
                    clause: None,
                    variable: None,
                },
            );
        }
        asm.weighted_edge(&mut weights, path[0], path[1], &one);
        asm.weighted_edge(&mut weights, path[1], path[2], &one);
        asm.weighted_edge(&mut weights, path[2], path[3], &one);
        if cj > 0 {
            asm.weighted_edge(&mut weights, clauses[cj - 1].path[3], path[0], &one);
        }
        asm.weighted_edge(&mut weights, path[3], g1.u11, &one);

        clauses.push(ClauseIds {
            gadgets: [g1, g2],
            path,
        });
    }

    let layout = Layout { clauses };
    for i in 1..=n {
        for (u, v) in layout.cyclic_edges(i) {
            asm.edges.push((u, v));
            weights.insert(crate::certify::ce(u, v), block_w.clone());
        }
    }

    let graph = Graph::new(16 * m, asm.edges)?.with_labels(asm.labels)?;
    check_structure(&graph, 16 * m, 19 * m - 1, 3, 8 * m, &asm.roles)?;
    let wmap = WeightMap::new(&graph, weights)?;
    let total = wmap.sum(graph.edges().iter());
    let expected_total = BigUint::from(4 * m) * &pendant_w
        + BigUint::from(10 * m) * &block_w
        + BigUint::from(11 * m - 1);
    ensure(total == expected_total, "total weight closed form")?;

    let threshold = BigUint::from(m) * ((&one << (q + 2)) + 1u32) + BigUint::from(2 * k_param);
    Ok(ReductionInstance {
        kind: InstanceKind::Min2SatWeighted,
        graph,
        constraints: None,
        weights: Some(wmap),
        meta: Meta {
            m,
            n,
            k_param,
            q: Some(q),
            threshold,
        },
        roles: asm.roles,
        layout,
    })
}

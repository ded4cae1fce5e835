//! Polynomial-time solvers for bipartite instances, built on network flow.
//!
//! The unweighted solver sends up to `k` units of flow through each vertex:
//! edges carrying flow form a subgraph with all degrees at most `k`, which
//! on a bipartite graph is always properly k-edge-colorable. The weighted
//! variant runs successive shortest paths on the same network with edge
//! costs equal to negated weights.
//!
//! Node ids and arc order are fixed by construction, so equal inputs
//! produce byte-equal results.

use graph_core::{Edge, Graph, KEdgeColoring, Vertex, WeightMap};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum FlowError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex {vertex} has degree {degree}, above the color bound {k}")]
    DegreeAboveK { vertex: Vertex, degree: usize, k: usize },
    #[error(transparent)]
    Graph(#[from] graph_core::Error),
}

/// What an arc of the solver network stands for in the input graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    /// Source to a left-side vertex.
    Source(Vertex),
    /// A left-to-right arc for one original edge.
    Original(Edge),
    /// A right-side vertex to the sink.
    Sink(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
    pub kind: ArcKind,
}

/// Flow network for the k-colorable-subgraph problem on a bipartite graph.
///
/// Node 0 is the source, node 1 the sink; then the left side in ascending
/// vertex order, then the right side. Arcs are ordered source arcs first,
/// one arc per original edge next (canonical edge order), sink arcs last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    node_count: usize,
    arcs: Vec<Arc>,
    node_of_vertex: Vec<usize>,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Network node carrying the given graph vertex.
    pub fn node_of(&self, v: Vertex) -> usize {
        self.node_of_vertex[v]
    }
}

/// Builds the capacity-k network for a bipartite graph. Vertices with no
/// incident edges still get a node, so node ids depend only on the input.
pub fn build_network(g: &Graph, k: usize) -> Result<FlowNetwork, FlowError> {
    let bip = g.bipartition().ok_or(FlowError::NotBipartite)?;
    let n = g.vertex_count();
    let mut node_of_vertex = vec![0usize; n];
    let mut next = 2;
    for &a in bip.side_a() {
        node_of_vertex[a] = next;
        next += 1;
    }
    for &b in bip.side_b() {
        node_of_vertex[b] = next;
        next += 1;
    }

    let mut arcs = Vec::new();
    for &a in bip.side_a() {
        arcs.push(Arc {
            from: SOURCE,
            to: node_of_vertex[a],
            capacity: k as u64,
            kind: ArcKind::Source(a),
        });
    }
    for &(u, v) in g.edges() {
        let (a, b) = if bip.contains_a(u) { (u, v) } else { (v, u) };
        arcs.push(Arc {
            from: node_of_vertex[a],
            to: node_of_vertex[b],
            capacity: 1,
            kind: ArcKind::Original((u, v)),
        });
    }
    for &b in bip.side_b() {
        arcs.push(Arc {
            from: node_of_vertex[b],
            to: SINK,
            capacity: k as u64,
            kind: ArcKind::Sink(b),
        });
    }
    Ok(FlowNetwork {
        node_count: n + 2,
        arcs,
        node_of_vertex,
    })
}

/// A source-side cut proving the flow value optimal: the set of nodes the
/// residual graph still reaches from the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub source_side: BTreeSet<usize>,
    pub capacity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlowResult {
    pub value: u64,
    /// Flow per arc, in network arc order.
    pub flows: Vec<u64>,
    pub cut: CutCertificate,
}

/// Integral maximum flow by shortest augmenting paths (breadth-first in arc
/// order, so deterministic), with the minimum cut read off the final
/// residual graph.
pub fn max_flow_integral(network: &FlowNetwork) -> MaxFlowResult {
    let n = network.node_count;
    let arcs = &network.arcs;
    let mut flow = vec![0u64; arcs.len()];

    // adjacency in arc order; each entry is (arc index, forward?)
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (i, arc) in arcs.iter().enumerate() {
        adj[arc.from].push((i, true));
        adj[arc.to].push((i, false));
    }

    let residual = |flow: &[u64], i: usize, forward: bool| -> u64 {
        if forward {
            arcs[i].capacity - flow[i]
        } else {
            flow[i]
        }
    };

    let mut value = 0u64;
    loop {
        // BFS for an augmenting path
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[SOURCE] = true;
        let mut queue = std::collections::VecDeque::from([SOURCE]);
        while let Some(u) = queue.pop_front() {
            for &(i, forward) in &adj[u] {
                let to = if forward { arcs[i].to } else { arcs[i].from };
                if !seen[to] && residual(&flow, i, forward) > 0 {
                    seen[to] = true;
                    parent[to] = Some((i, forward));
                    queue.push_back(to);
                }
            }
        }
        if !seen[SINK] {
            break;
        }
        // bottleneck then augment
        let mut bottleneck = u64::MAX;
        let mut at = SINK;
        while at != SOURCE {
            let (i, forward) = parent[at].expect("path reaches the source");
            bottleneck = bottleneck.min(residual(&flow, i, forward));
            at = if forward { arcs[i].from } else { arcs[i].to };
        }
        let mut at = SINK;
        while at != SOURCE {
            let (i, forward) = parent[at].expect("path reaches the source");
            if forward {
                flow[i] += bottleneck;
            } else {
                flow[i] -= bottleneck;
            }
            at = if forward { arcs[i].from } else { arcs[i].to };
        }
        value += bottleneck;
    }

    // the final BFS had an empty frontier: residual-reachable nodes form
    // the minimum cut
    let mut source_side = BTreeSet::from([SOURCE]);
    let mut queue = std::collections::VecDeque::from([SOURCE]);
    let mut seen = vec![false; n];
    seen[SOURCE] = true;
    while let Some(u) = queue.pop_front() {
        for &(i, forward) in &adj[u] {
            let to = if forward { arcs[i].to } else { arcs[i].from };
            if !seen[to] && residual(&flow, i, forward) > 0 {
                seen[to] = true;
                source_side.insert(to);
                queue.push_back(to);
            }
        }
    }
    let capacity = arcs
        .iter()
        .filter(|a| source_side.contains(&a.from) && !source_side.contains(&a.to))
        .map(|a| a.capacity)
        .sum();
    MaxFlowResult {
        value,
        flows: flow,
        cut: CutCertificate {
            source_side,
            capacity,
        },
    }
}

/// Properly colors all edges of a bipartite graph with max degree at most k
/// using colors `1..=k`, by free-color assignment with alternating-path
/// repairs.
pub fn konig_edge_color(g: &Graph, k: usize) -> Result<KEdgeColoring, FlowError> {
    if g.bipartition().is_none() {
        return Err(FlowError::NotBipartite);
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) > k {
            return Err(FlowError::DegreeAboveK {
                vertex: v,
                degree: g.degree(v),
                k,
            });
        }
    }
    let n = g.vertex_count();
    // color_at[v][c-1] = neighbor joined to v by the edge colored c
    let mut color_at: Vec<Vec<Option<Vertex>>> = vec![vec![None; k]; n];
    let free = |color_at: &[Vec<Option<Vertex>>], v: Vertex| -> usize {
        color_at[v]
            .iter()
            .position(|slot| slot.is_none())
            .expect("degree bound leaves a free color")
            + 1
    };

    let mut coloring = KEdgeColoring::new(k);
    for &(u, v) in g.edges() {
        let cu = free(&color_at, u);
        let cv = free(&color_at, v);
        let color = if cu == cv {
            cu
        } else {
            // cu is taken at v; flip the maximal cu/cv alternating path
            // starting at v, freeing cu there. The path cannot reach u:
            // u lacks cu, so u could only be an endpoint reached by a cv
            // edge, and such a path has even length, joining vertices on
            // one side, while u and v are adjacent.
            let mut path = Vec::new();
            let mut cur = v;
            let mut c = cu;
            while let Some(next) = color_at[cur][c - 1] {
                path.push((cur, next, c));
                cur = next;
                c = if c == cu { cv } else { cu };
            }
            // consecutive path edges share vertices: clear every old slot
            // before writing any new one
            for &(x, y, c_old) in &path {
                color_at[x][c_old - 1] = None;
                color_at[y][c_old - 1] = None;
            }
            for &(x, y, c_old) in &path {
                let c_new = if c_old == cu { cv } else { cu };
                color_at[x][c_new - 1] = Some(y);
                color_at[y][c_new - 1] = Some(x);
                coloring.set(x, y, c_new)?;
            }
            cu
        };
        color_at[u][color - 1] = Some(v);
        color_at[v][color - 1] = Some(u);
        coloring.set(u, v, color)?;
    }
    Ok(coloring)
}

/// Maximum k-edge-colorable subgraph of a bipartite graph: the flow value
/// is the subgraph size, and the flow-saturated original edges form a
/// subgraph that the coloring step colors with k colors.
pub fn solve_nuk_bipartite(g: &Graph, k: usize) -> Result<(usize, KEdgeColoring), FlowError> {
    if g.bipartition().is_none() {
        return Err(FlowError::NotBipartite);
    }
    if k == 0 {
        return Ok((0, KEdgeColoring::new(0)));
    }
    let network = build_network(g, k)?;
    let result = max_flow_integral(&network);
    let chosen: Vec<Edge> = network
        .arcs()
        .iter()
        .zip(&result.flows)
        .filter_map(|(arc, &f)| match arc.kind {
            ArcKind::Original(e) if f == 1 => Some(e),
            _ => None,
        })
        .collect();
    let subgraph = Graph::new(g.vertex_count(), chosen)?;
    let coloring = konig_edge_color(&subgraph, k)?;
    Ok((result.value as usize, coloring))
}

/// Maximum-weight subgraph of a bipartite graph with all degrees at most k,
/// by successive shortest paths on the capacity-k network with edge costs
/// equal to negated weights. Augments one unit at a time and stops when no
/// source-sink path has negative cost; with integral capacities this is the
/// exact optimum.
pub fn solve_weighted_degree_constrained(
    g: &Graph,
    k: usize,
    w: &WeightMap,
) -> Result<(BigUint, Vec<Edge>), FlowError> {
    let network = build_network(g, k)?;
    if k == 0 {
        return Ok((BigUint::zero(), Vec::new()));
    }
    let arcs = network.arcs();
    let n = network.node_count();
    let cost: Vec<BigInt> = arcs
        .iter()
        .map(|arc| match arc.kind {
            ArcKind::Original((u, v)) => -BigInt::from(w.get(u, v).clone()),
            _ => BigInt::zero(),
        })
        .collect();
    let mut flow = vec![0u64; arcs.len()];

    loop {
        // Bellman-Ford over the residual graph, relaxing arcs in fixed
        // order; the unsaturated original network is acyclic and every
        // augmentation follows a shortest path, so no negative cycles
        let mut dist: Vec<Option<BigInt>> = vec![None; n];
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; n];
        dist[SOURCE] = Some(BigInt::zero());
        for _ in 0..n {
            let mut changed = false;
            for (i, arc) in arcs.iter().enumerate() {
                if flow[i] < arc.capacity {
                    if let Some(du) = dist[arc.from].clone() {
                        let candidate = du + &cost[i];
                        if dist[arc.to].as_ref().is_none_or(|d| candidate < *d) {
                            dist[arc.to] = Some(candidate);
                            parent[arc.to] = Some((i, true));
                            changed = true;
                        }
                    }
                }
                if flow[i] > 0 {
                    if let Some(dv) = dist[arc.to].clone() {
                        let candidate = dv - &cost[i];
                        if dist[arc.from].as_ref().is_none_or(|d| candidate < *d) {
                            dist[arc.from] = Some(candidate);
                            parent[arc.from] = Some((i, false));
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        match dist[SINK].as_ref() {
            Some(d) if *d < BigInt::zero() => {}
            _ => break,
        }
        let mut at = SINK;
        while at != SOURCE {
            let (i, forward) = parent[at].expect("path reaches the source");
            if forward {
                flow[i] += 1;
                at = arcs[i].from;
            } else {
                flow[i] -= 1;
                at = arcs[i].to;
            }
        }
    }

    let mut chosen = Vec::new();
    let mut total = BigUint::zero();
    for (arc, &f) in arcs.iter().zip(&flow) {
        if let ArcKind::Original((u, v)) = arc.kind {
            if f == 1 {
                chosen.push((u, v));
                total += w.get(u, v);
            }
        }
    }
    chosen.sort_unstable();
    Ok((total, chosen))
}

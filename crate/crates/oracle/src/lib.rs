//! Exponential-time exact reference solvers. Everything polynomial in this
//! workspace is cross-checked against the searches in here, so these
//! implementations favor simplicity and exactness over cleverness: plain
//! depth-first search with admissible bounds, explicit budgets, and
//! deterministic witnesses.
//!
//! Budgets are never silently degraded into approximations: exhausting one
//! is an error that carries whatever was found so far, clearly marked
//! non-optimal.

use graph_core::{Edge, Graph, KEdgeColoring, Matching, Vertex, WeightMap};
use num_bigint::BigUint;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

mod search;
mod weight;

#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum OracleError {
    #[error("input has {actual} edges, over the budget of {limit}")]
    OverBudget { actual: usize, limit: usize },
    #[error(
        "search budget exhausted after {nodes_expanded} nodes; best found so far is {best_value} (not proven optimal)"
    )]
    BudgetExhausted {
        nodes_expanded: u64,
        best_value: BigUint,
        best_witness: KEdgeColoring,
    },
    #[error("matching enumeration budget exhausted after finding {matchings_found} matchings; result unreliable")]
    EnumerationIncomplete { matchings_found: usize },
    #[error("vertex {vertex} has degree {degree}, graph is not cubic")]
    NotCubic { vertex: Vertex, degree: usize },
    #[error("k={k} exceeds the color-mask width of this solver")]
    KTooLarge { k: usize },
    #[error(transparent)]
    Graph(#[from] graph_core::Error),
}

/// Limits for the exponential searches. All fields must be positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Reject inputs with more edges than this before searching.
    pub max_edges: usize,
    /// Abort the search after expanding this many nodes.
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl SearchBudget {
    /// Default for the branch-and-bound coloring searches.
    pub fn for_brute() -> Self {
        SearchBudget {
            max_edges: 40,
            max_nodes: u64::MAX,
            time_limit: Duration::from_secs(600),
        }
    }

    /// Default for maximum-matching enumeration.
    pub fn for_enumeration() -> Self {
        SearchBudget {
            max_edges: 60,
            max_nodes: u64::MAX,
            time_limit: Duration::from_secs(600),
        }
    }

    pub fn with_max_edges(mut self, max_edges: usize) -> Self {
        self.max_edges = max_edges;
        self
    }

    pub fn with_time_limit(mut self, time_limit: Duration) -> Self {
        self.time_limit = time_limit;
        self
    }

    fn gate_edges(&self, actual: usize) -> Result<(), OracleError> {
        if actual > self.max_edges {
            return Err(OracleError::OverBudget {
                actual,
                limit: self.max_edges,
            });
        }
        Ok(())
    }
}

/// Shared deadline/node accounting for a single search run.
pub(crate) struct Ticker {
    nodes: u64,
    max_nodes: u64,
    deadline: Instant,
    exhausted: bool,
}

impl Ticker {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        Ticker {
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: Instant::now() + budget.time_limit,
            exhausted: false,
        }
    }

    /// Counts one expanded node; returns false once the budget is gone.
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes
            || (self.nodes & 0xfff == 0 && Instant::now() >= self.deadline)
        {
            self.exhausted = true;
            return false;
        }
        true
    }
}

/// Exact maximum-weight k-edge-colorable subgraph under per-vertex
/// admissible color sets, by depth-first assignment of `{0, 1..k}` to each
/// edge in canonical order with properness/constraint pruning and an
/// admissible remaining-weight bound.
///
/// The witness is deterministic: the first optimum encountered by the
/// fixed-order search (colors ascending before 0) is kept.
pub fn brute_nuk(
    g: &Graph,
    k: usize,
    w: &WeightMap,
    wc: &graph_core::ColorConstraintMap,
    budget: &SearchBudget,
) -> Result<(BigUint, KEdgeColoring), OracleError> {
    if k >= 64 {
        return Err(OracleError::KTooLarge { k });
    }
    if wc.k() != k {
        return Err(OracleError::Graph(graph_core::Error::KMismatch {
            coloring_k: k,
            constraint_k: wc.k(),
        }));
    }
    budget.gate_edges(g.edge_count())?;
    if k == 0 || g.edge_count() == 0 {
        return Ok((BigUint::from(0u32), KEdgeColoring::new(k.max(1))));
    }

    let weights: Vec<BigUint> = g
        .edges()
        .iter()
        .map(|&(u, v)| w.get(u, v).clone())
        .collect();
    let mut ticker = Ticker::new(budget);
    let outcome = match weight::to_u64_weights(&weights) {
        Some(small) => search::color_search::<u64>(g, k, &small, wc, &mut ticker),
        None => search::color_search::<BigUint>(g, k, &weights, wc, &mut ticker),
    };

    let mut coloring = KEdgeColoring::new(k);
    for (idx, &color) in outcome.best_assignment.iter().enumerate() {
        if color > 0 {
            let (u, v) = g.edges()[idx];
            coloring.set(u, v, color).expect("search colors stay in range");
        }
    }
    if ticker.exhausted {
        return Err(OracleError::BudgetExhausted {
            nodes_expanded: ticker.nodes,
            best_value: outcome.best_value,
            best_witness: coloring,
        });
    }
    Ok((outcome.best_value, coloring))
}

/// Exact maximum-weight subgraph with every degree at most `k`, by
/// depth-first include/exclude search over edges in descending weight
/// order. Used as the independent reference for the flow-based weighted
/// solver.
pub fn brute_max_weight_degree_constrained(
    g: &Graph,
    k: usize,
    w: &WeightMap,
    budget: &SearchBudget,
) -> Result<(BigUint, Vec<Edge>), OracleError> {
    budget.gate_edges(g.edge_count())?;
    if k == 0 || g.edge_count() == 0 {
        return Ok((BigUint::from(0u32), Vec::new()));
    }
    let weights: Vec<BigUint> = g
        .edges()
        .iter()
        .map(|&(u, v)| w.get(u, v).clone())
        .collect();
    let mut ticker = Ticker::new(budget);
    let outcome = match weight::to_u64_weights(&weights) {
        Some(small) => search::degree_search::<u64>(g, k, &small, &mut ticker),
        None => search::degree_search::<BigUint>(g, k, &weights, &mut ticker),
    };
    if ticker.exhausted {
        // reuse the coloring-shaped exhaustion error: callers only need the
        // value and the non-optimality marker
        return Err(OracleError::BudgetExhausted {
            nodes_expanded: ticker.nodes,
            best_value: outcome.best_value,
            best_witness: KEdgeColoring::new(k.max(1)),
        });
    }
    let edges: Vec<Edge> = outcome
        .chosen
        .iter()
        .map(|&idx| g.edges()[idx])
        .collect();
    Ok((outcome.best_value, edges))
}

/// Maximum matching: augmenting paths on bipartite graphs (any size),
/// bounded backtracking otherwise.
pub fn max_matching(g: &Graph, budget: &SearchBudget) -> Result<Matching, OracleError> {
    let edges = if let Some(bip) = g.bipartition() {
        kuhn_matching(g, &bip)
    } else {
        budget.gate_edges(g.edge_count())?;
        brute_matching_edges(g.edges(), g.vertex_count())
    };
    Ok(Matching::new(g, &edges).expect("solver output is a matching"))
}

/// Size of a maximum matching.
pub fn nu(g: &Graph, budget: &SearchBudget) -> Result<usize, OracleError> {
    Ok(max_matching(g, budget)?.len())
}

/// Deterministic augmenting-path maximum matching for bipartite graphs.
/// Left vertices are tried in ascending order, neighbors in ascending
/// order, so the result is stable.
fn kuhn_matching(g: &Graph, bip: &graph_core::Bipartition) -> Vec<Edge> {
    let n = g.vertex_count();
    let mut mate: Vec<Option<Vertex>> = vec![None; n];

    fn try_augment(
        g: &Graph,
        a: Vertex,
        visited: &mut [bool],
        mate: &mut [Option<Vertex>],
    ) -> bool {
        for &b in g.neighbors(a) {
            if visited[b] {
                continue;
            }
            visited[b] = true;
            match mate[b] {
                None => {
                    mate[b] = Some(a);
                    mate[a] = Some(b);
                    return true;
                }
                Some(other) => {
                    if try_augment(g, other, visited, mate) {
                        mate[b] = Some(a);
                        mate[a] = Some(b);
                        return true;
                    }
                }
            }
        }
        false
    }

    for &a in bip.side_a() {
        if mate[a].is_none() {
            let mut visited = vec![false; n];
            try_augment(g, a, &mut visited, &mut mate);
        }
    }
    let mut edges = Vec::new();
    for v in 0..n {
        if let Some(u) = mate[v] {
            if v < u {
                edges.push((v, u));
            }
        }
    }
    edges
}

/// Exact maximum matching on an arbitrary edge list by branch and bound.
/// Only used for small non-bipartite graphs.
fn brute_matching_edges(edges: &[Edge], n: usize) -> Vec<Edge> {
    fn go(
        edges: &[Edge],
        idx: usize,
        covered: &mut [bool],
        current: &mut Vec<Edge>,
        best: &mut Vec<Edge>,
    ) {
        // remaining edges can add at most one each
        if current.len() + (edges.len() - idx) <= best.len() {
            return;
        }
        if idx == edges.len() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let (u, v) = edges[idx];
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            current.push((u, v));
            go(edges, idx + 1, covered, current, best);
            current.pop();
            covered[u] = false;
            covered[v] = false;
        }
        go(edges, idx + 1, covered, current, best);
    }
    let mut covered = vec![false; n];
    let mut current = Vec::new();
    let mut best = Vec::new();
    go(edges, 0, &mut covered, &mut current, &mut best);
    best.sort_unstable();
    best
}

/// All maximum matchings of `g`, each exactly once, in lexicographic order
/// of their canonical edge lists.
pub fn enumerate_maximum_matchings(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<Vec<Matching>, OracleError> {
    budget.gate_edges(g.edge_count())?;
    let target = max_matching(g, budget)?.len();
    let bip = g.bipartition();
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    let mut decided_out = vec![false; g.edge_count()];
    let mut current: Vec<Edge> = Vec::new();
    let mut found: Vec<Matching> = Vec::new();
    let mut ticker = Ticker::new(budget);

    // exact matching number of the still-usable edges; this makes the
    // include/exclude tree explore only nodes that lead to a maximum
    // matching, so every leaf emits
    fn residual_nu(
        g: &Graph,
        covered: &[bool],
        decided_out: &[bool],
        bip: &Option<graph_core::Bipartition>,
    ) -> usize {
        let eligible: Vec<Edge> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, &(u, v))| !decided_out[i] && !covered[u] && !covered[v])
            .map(|(_, &e)| e)
            .collect();
        if eligible.is_empty() {
            return 0;
        }
        match bip {
            Some(b) => kuhn_on_edges(&eligible, g.vertex_count(), b),
            None => brute_matching_edges(&eligible, g.vertex_count()).len(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        target: usize,
        bip: &Option<graph_core::Bipartition>,
        covered: &mut Vec<bool>,
        decided_out: &mut Vec<bool>,
        current: &mut Vec<Edge>,
        found: &mut Vec<Matching>,
        ticker: &mut Ticker,
    ) {
        if !ticker.tick() {
            return;
        }
        if current.len() == target {
            found.push(
                Matching::new(g, current).expect("search state is always a matching"),
            );
            return;
        }
        if current.len() + residual_nu(g, covered, decided_out, bip) < target {
            return;
        }
        // lowest still-usable edge is the branching pivot
        let pivot = g
            .edges()
            .iter()
            .enumerate()
            .find(|&(i, &(u, v))| !decided_out[i] && !covered[u] && !covered[v]);
        let Some((idx, &(u, v))) = pivot else { return };

        // matchings containing the pivot come first: lexicographic order
        covered[u] = true;
        covered[v] = true;
        current.push((u, v));
        go(g, target, bip, covered, decided_out, current, found, ticker);
        current.pop();
        covered[u] = false;
        covered[v] = false;

        decided_out[idx] = true;
        go(g, target, bip, covered, decided_out, current, found, ticker);
        decided_out[idx] = false;
    }

    go(
        g,
        target,
        &bip,
        &mut covered,
        &mut decided_out,
        &mut current,
        &mut found,
        &mut ticker,
    );
    if ticker.exhausted {
        return Err(OracleError::EnumerationIncomplete {
            matchings_found: found.len(),
        });
    }
    Ok(found)
}

/// Kuhn's algorithm restricted to an explicit edge list.
fn kuhn_on_edges(edges: &[Edge], n: usize, bip: &graph_core::Bipartition) -> usize {
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut lefts = BTreeSet::new();
    for &(u, v) in edges {
        let (a, b) = if bip.contains_a(u) { (u, v) } else { (v, u) };
        adj[a].push(b);
        lefts.insert(a);
    }
    let mut mate: Vec<Option<Vertex>> = vec![None; n];

    fn try_augment(
        adj: &[Vec<Vertex>],
        a: Vertex,
        visited: &mut [bool],
        mate: &mut [Option<Vertex>],
    ) -> bool {
        for &b in &adj[a] {
            if visited[b] {
                continue;
            }
            visited[b] = true;
            match mate[b] {
                None => {
                    mate[b] = Some(a);
                    mate[a] = Some(b);
                    return true;
                }
                Some(other) => {
                    if try_augment(adj, other, visited, mate) {
                        mate[b] = Some(a);
                        mate[a] = Some(b);
                        return true;
                    }
                }
            }
        }
        false
    }

    let mut size = 0;
    for &a in &lefts {
        if mate[a].is_none() {
            let mut visited = vec![false; n];
            if try_augment(&adj, a, &mut visited, &mut mate) {
                size += 1;
            }
        }
    }
    size
}

/// The matching spectrum of a graph: the matching number together with the
/// minimum and maximum of the matching number after deleting a maximum
/// matching, over all maximum matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingSpectrum {
    pub nu: usize,
    pub ell: usize,
    pub big_l: usize,
    /// First enumerated maximum matching attaining `ell`.
    pub ell_witness: Matching,
    /// First enumerated maximum matching attaining `big_l`.
    pub big_l_witness: Matching,
}

/// Computes `nu`, `ell`, and `L` by enumerating every maximum matching `F`
/// and evaluating the matching number of the graph without `F`.
pub fn matching_spectrum(g: &Graph, budget: &SearchBudget) -> Result<MatchingSpectrum, OracleError> {
    let all = enumerate_maximum_matchings(g, budget)?;
    let nu_value = all.first().map(|m| m.len()).unwrap_or(0);
    let mut spectrum: Option<MatchingSpectrum> = None;
    for f in &all {
        let rest = g
            .delete_edges(f.edges())
            .expect("maximum matchings only use graph edges");
        let value = nu(&rest, budget)?;
        match &mut spectrum {
            None => {
                spectrum = Some(MatchingSpectrum {
                    nu: nu_value,
                    ell: value,
                    big_l: value,
                    ell_witness: f.clone(),
                    big_l_witness: f.clone(),
                });
            }
            Some(s) => {
                if value < s.ell {
                    s.ell = value;
                    s.ell_witness = f.clone();
                }
                if value > s.big_l {
                    s.big_l = value;
                    s.big_l_witness = f.clone();
                }
            }
        }
    }
    Ok(spectrum.unwrap_or_else(|| {
        // edgeless graph: the empty matching is the unique maximum matching
        let empty = Matching::new(g, &[]).expect("empty matching is valid");
        MatchingSpectrum {
            nu: 0,
            ell: 0,
            big_l: 0,
            ell_witness: empty.clone(),
            big_l_witness: empty,
        }
    }))
}

/// Decides 3-edge-colorability of a cubic graph by checking whether the
/// whole vertex set can be covered by a 2-edge-colorable subgraph, i.e.
/// whether a pair of disjoint perfect matchings exists.
pub fn cubic_three_colorability(g: &Graph, budget: &SearchBudget) -> Result<bool, OracleError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) != 3 {
            return Err(OracleError::NotCubic {
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    let unit = WeightMap::unit(g);
    let full = graph_core::ColorConstraintMap::full(g.vertex_count(), 2);
    let (value, _) = brute_nuk(g, 2, &unit, &full, budget)?;
    Ok(value == BigUint::from(g.vertex_count()))
}

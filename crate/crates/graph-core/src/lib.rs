//! Core graph types shared by every solver in this workspace: simple
//! undirected graphs with optional lattice labels, bipartitions, matchings,
//! partial proper edge colorings, per-vertex admissible color sets, and
//! big-integer edge weights.
//!
//! Everything here is deterministic: edges are kept in canonical order
//! (`u < v`, then lexicographic) and all derived structures inherit that
//! order, so downstream solvers and the text format produce byte-identical
//! output for identical input.

use num_bigint::BigUint;
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub mod format;
pub mod gen;

pub type Vertex = usize;

/// Canonical unordered edge: always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

/// Normalizes an endpoint pair into canonical form. Loops are rejected.
pub fn canonical_edge(u: Vertex, v: Vertex) -> Result<Edge, Error> {
    if u == v {
        return Err(Error::Loop { vertex: u });
    }
    Ok(if u < v { (u, v) } else { (v, u) })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum Error {
    #[error("loop edge at vertex {vertex}")]
    Loop { vertex: Vertex },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("label ({x}, {y}) assigned to both vertex {first} and vertex {second}")]
    LabelNotInjective {
        x: i64,
        y: i64,
        first: Vertex,
        second: Vertex,
    },
    #[error("edge ({u}, {v}) does not exist in the graph")]
    UnknownEdge { u: Vertex, v: Vertex },
    #[error("edges ({u}, {v}) and ({x}, {y}) share a vertex, not a matching")]
    NotAMatching { u: Vertex, v: Vertex, x: Vertex, y: Vertex },
    #[error("color {color} outside 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("constraint set for vertex {vertex} contains color {color} outside 1..={k}")]
    ConstraintOutOfRange { vertex: Vertex, color: usize, k: usize },
    #[error("coloring has k={coloring_k} but constraint map has k={constraint_k}")]
    KMismatch { coloring_k: usize, constraint_k: usize },
    #[error("weight for edge ({u}, {v}) must be positive")]
    ZeroWeight { u: Vertex, v: Vertex },
    #[error("no weight defined for edge ({u}, {v})")]
    MissingWeight { u: Vertex, v: Vertex },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Simple undirected graph. No loops, no parallel edges; isolated vertices
/// are representable because `vertex_count` is independent of the edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
    labels: BTreeMap<Vertex, (i64, i64)>,
}

impl Graph {
    /// Builds a graph from an endpoint list. Duplicate edges collapse (set
    /// semantics); loops and out-of-range endpoints are errors.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let e = canonical_edge(u, v)?;
            if e.1 >= vertex_count {
                let bad = if u >= vertex_count { u } else { v };
                return Err(Error::VertexOutOfRange {
                    vertex: bad,
                    vertex_count,
                });
            }
            set.insert(e);
        }
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges,
            adj,
            labels: BTreeMap::new(),
        })
    }

    /// Attaches lattice labels. Labels must be injective and refer to
    /// existing vertices; not every vertex needs one.
    pub fn with_labels(mut self, labels: BTreeMap<Vertex, (i64, i64)>) -> Result<Self, Error> {
        let mut seen: BTreeMap<(i64, i64), Vertex> = BTreeMap::new();
        for (&v, &(x, y)) in &labels {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
            if let Some(&first) = seen.get(&(x, y)) {
                return Err(Error::LabelNotInjective {
                    x,
                    y,
                    first,
                    second: v,
                });
            }
            seen.insert((x, y), v);
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match canonical_edge(u, v) {
            Ok(e) => self.edges.binary_search(&e).is_ok(),
            Err(_) => false,
        }
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn label(&self, v: Vertex) -> Option<(i64, i64)> {
        self.labels.get(&v).copied()
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, (i64, i64)> {
        &self.labels
    }

    /// Two-colors every component by BFS. Returns `None` iff some component
    /// contains an odd cycle. Deterministic: components are discovered in
    /// vertex order and the lowest-id vertex of each component lands in
    /// `side_a`, so isolated vertices always end up in `side_a`.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side = vec![u8::MAX; self.vertex_count];
        for start in 0..self.vertex_count {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        let mut side_a = BTreeSet::new();
        let mut side_b = BTreeSet::new();
        for v in 0..self.vertex_count {
            if side[v] == 0 {
                side_a.insert(v);
            } else {
                side_b.insert(v);
            }
        }
        Some(Bipartition { side_a, side_b })
    }

    /// Removes the edge set `f`; the vertex set is untouched. Every edge of
    /// `f` must exist in the graph.
    pub fn delete_edges(&self, f: &[Edge]) -> Result<Graph, Error> {
        let mut remove = BTreeSet::new();
        for &(u, v) in f {
            let e = canonical_edge(u, v)?;
            if self.edges.binary_search(&e).is_err() {
                return Err(Error::UnknownEdge { u: e.0, v: e.1 });
            }
            remove.insert(e);
        }
        let remaining: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| !remove.contains(e))
            .collect();
        let mut g = Graph::new(self.vertex_count, remaining)?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.vertex_count).map(|v| self.degree(v)).collect();
        let max = degrees.iter().copied().max().unwrap_or(0);
        let min = degrees.iter().copied().min().unwrap_or(0);
        DegreeProfile { degrees, max, min }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.vertex_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max: usize,
    pub min: usize,
}

/// A two-sided vertex partition with every edge crossing sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side_a: BTreeSet<Vertex>,
    side_b: BTreeSet<Vertex>,
}

impl Bipartition {
    pub fn side_a(&self) -> &BTreeSet<Vertex> {
        &self.side_a
    }

    pub fn side_b(&self) -> &BTreeSet<Vertex> {
        &self.side_b
    }

    pub fn contains_a(&self, v: Vertex) -> bool {
        self.side_a.contains(&v)
    }

    /// Checks that the sides partition `V(g)` and that every edge crosses.
    pub fn validate(&self, g: &Graph) -> bool {
        if self.side_a.len() + self.side_b.len() != g.vertex_count() {
            return false;
        }
        if self.side_a.intersection(&self.side_b).next().is_some() {
            return false;
        }
        if self
            .side_a
            .iter()
            .chain(self.side_b.iter())
            .any(|&v| v >= g.vertex_count())
        {
            return false;
        }
        g.edges()
            .iter()
            .all(|&(u, v)| self.side_a.contains(&u) != self.side_a.contains(&v))
    }
}

/// A set of pairwise vertex-disjoint edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(g: &Graph, edges: &[Edge]) -> Result<Self, Error> {
        let mut covered: BTreeMap<Vertex, Edge> = BTreeMap::new();
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            let e = canonical_edge(u, v)?;
            if !g.has_edge(e.0, e.1) {
                return Err(Error::UnknownEdge { u: e.0, v: e.1 });
            }
            for end in [e.0, e.1] {
                if let Some(&other) = covered.get(&end) {
                    return Err(Error::NotAMatching {
                        u: other.0,
                        v: other.1,
                        x: e.0,
                        y: e.1,
                    });
                }
                covered.insert(end, e);
            }
            set.insert(e);
        }
        Ok(Matching {
            edges: set.into_iter().collect(),
        })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }
}

/// Partial proper edge coloring with colors `1..=k`. An edge absent from the
/// assignment has color 0, meaning "not in the subgraph"; the colored edges
/// form the k-edge-colorable subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KEdgeColoring {
    k: usize,
    assignment: BTreeMap<Edge, usize>,
}

impl KEdgeColoring {
    pub fn new(k: usize) -> Self {
        KEdgeColoring {
            k,
            assignment: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Assigns a color in `1..=k` to an edge. Color 0 is represented by
    /// absence; use `unset` to remove an edge from the subgraph.
    pub fn set(&mut self, u: Vertex, v: Vertex, color: usize) -> Result<(), Error> {
        if color == 0 || color > self.k {
            return Err(Error::ColorOutOfRange { color, k: self.k });
        }
        let e = canonical_edge(u, v)?;
        self.assignment.insert(e, color);
        Ok(())
    }

    pub fn unset(&mut self, u: Vertex, v: Vertex) {
        if let Ok(e) = canonical_edge(u, v) {
            self.assignment.remove(&e);
        }
    }

    /// 0 for uncolored, otherwise the assigned color.
    pub fn get(&self, u: Vertex, v: Vertex) -> usize {
        canonical_edge(u, v)
            .ok()
            .and_then(|e| self.assignment.get(&e).copied())
            .unwrap_or(0)
    }

    /// Colored edges with their colors, in canonical edge order.
    pub fn colored_edges(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.assignment.iter().map(|(&e, &c)| (e, c))
    }

    pub fn colored_count(&self) -> usize {
        self.assignment.len()
    }

    /// Edges carrying the given color, in canonical order.
    pub fn color_class(&self, color: usize) -> Vec<Edge> {
        self.assignment
            .iter()
            .filter(|&(_, &c)| c == color)
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Per-vertex admissible color sets `W(v) ⊆ {1..k}`. Defined on every
/// vertex; the default is the full set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorConstraintMap {
    k: usize,
    allowed: Vec<BTreeSet<usize>>,
}

impl ColorConstraintMap {
    /// Every vertex gets the full set `{1..k}`.
    pub fn full(vertex_count: usize, k: usize) -> Self {
        let all: BTreeSet<usize> = (1..=k).collect();
        ColorConstraintMap {
            k,
            allowed: vec![all; vertex_count],
        }
    }

    pub fn set(&mut self, v: Vertex, colors: BTreeSet<usize>) -> Result<(), Error> {
        if v >= self.allowed.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.allowed.len(),
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > self.k) {
            return Err(Error::ConstraintOutOfRange {
                vertex: v,
                color: c,
                k: self.k,
            });
        }
        self.allowed[v] = colors;
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.allowed.len()
    }

    pub fn allowed(&self, v: Vertex) -> &BTreeSet<usize> {
        &self.allowed[v]
    }

    pub fn permits(&self, v: Vertex, color: usize) -> bool {
        self.allowed[v].contains(&color)
    }

    /// True when every vertex allows every color, i.e. the map imposes
    /// nothing beyond properness.
    pub fn is_full(&self) -> bool {
        self.allowed.iter().all(|s| s.len() == self.k)
    }
}

/// Positive big-integer edge weights, defined on every edge of the host
/// graph at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap {
    weights: BTreeMap<Edge, BigUint>,
}

impl WeightMap {
    pub fn unit(g: &Graph) -> Self {
        WeightMap {
            weights: g
                .edges()
                .iter()
                .map(|&e| (e, BigUint::one()))
                .collect(),
        }
    }

    /// Weights must cover every edge of `g` and be at least 1.
    pub fn new(g: &Graph, weights: BTreeMap<Edge, BigUint>) -> Result<Self, Error> {
        for &(u, v) in g.edges() {
            match weights.get(&(u, v)) {
                None => return Err(Error::MissingWeight { u, v }),
                Some(w) if w == &BigUint::from(0u32) => {
                    return Err(Error::ZeroWeight { u, v })
                }
                _ => {}
            }
        }
        Ok(WeightMap { weights })
    }

    /// Weight of an edge. Panics if the edge was never given a weight; maps
    /// are always constructed to cover the host graph.
    pub fn get(&self, u: Vertex, v: Vertex) -> &BigUint {
        let e = canonical_edge(u, v).expect("weight lookup on a loop");
        self.weights
            .get(&e)
            .unwrap_or_else(|| panic!("no weight for edge ({}, {})", e.0, e.1))
    }

    pub fn try_get(&self, u: Vertex, v: Vertex) -> Option<&BigUint> {
        canonical_edge(u, v).ok().and_then(|e| self.weights.get(&e))
    }

    /// Sum of weights over an edge list.
    pub fn sum<'a, I>(&self, edges: I) -> BigUint
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut total = BigUint::from(0u32);
        for &(u, v) in edges {
            total += self.get(u, v);
        }
        total
    }

    /// True when every weight equals 1.
    pub fn is_unit(&self) -> bool {
        self.weights.values().all(|w| w.is_one())
    }
}

/// One defect found by `validate_coloring`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// `count` edges at `vertex` carry the same `color`.
    Properness {
        vertex: Vertex,
        color: usize,
        count: usize,
    },
    /// A colored edge at `vertex` uses a color outside `W(vertex)`.
    Constraint { vertex: Vertex, color: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a partial coloring against a graph: properness around every
/// vertex, and, when a constraint map is given, that every color used at a
/// vertex lies in its admissible set. Referencing an edge outside the graph
/// is an input error, not a violation.
pub fn validate_coloring(
    g: &Graph,
    c: &KEdgeColoring,
    wc: Option<&ColorConstraintMap>,
) -> Result<ValidationReport, Error> {
    if let Some(map) = wc {
        if map.k() != c.k() {
            return Err(Error::KMismatch {
                coloring_k: c.k(),
                constraint_k: map.k(),
            });
        }
        if map.vertex_count() != g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: map.vertex_count(),
                vertex_count: g.vertex_count(),
            });
        }
    }
    // (vertex, color) -> number of incident edges with that color
    let mut seen: BTreeMap<(Vertex, usize), usize> = BTreeMap::new();
    let mut constraint_breaches: BTreeSet<(Vertex, usize)> = BTreeSet::new();
    for ((u, v), color) in c.colored_edges() {
        if !g.has_edge(u, v) {
            return Err(Error::UnknownEdge { u, v });
        }
        for end in [u, v] {
            *seen.entry((end, color)).or_insert(0) += 1;
            if let Some(map) = wc {
                if !map.permits(end, color) {
                    constraint_breaches.insert((end, color));
                }
            }
        }
    }
    let mut violations = Vec::new();
    for ((vertex, color), count) in seen {
        if count > 1 {
            violations.push(Violation::Properness {
                vertex,
                color,
                count,
            });
        }
    }
    for (vertex, color) in constraint_breaches {
        violations.push(Violation::Constraint { vertex, color });
    }
    violations.sort();
    Ok(ValidationReport { violations })
}

//! Maximum-weight k-edge-colorable subgraph on forests with per-vertex
//! admissible color sets, by dynamic programming over rooted trees.
//!
//! The DP state is (vertex, color of the edge to the parent), and each
//! vertex allocates colors to its child edges with a subset-indexed table
//! over its admissible set. Table entries are composite values carrying
//! weight plus a canonical tie key (colored edge set, then color vector),
//! so equal inputs always produce the same optimal coloring: among all
//! maximum-weight colorings, the one whose colored edge set is
//! lexicographically smallest, with the smallest color vector.

use graph_core::{ColorConstraintMap, Graph, KEdgeColoring, Vertex, WeightMap};
use num_bigint::BigUint;
use num_traits::Zero;

/// Subset tables are indexed by color masks, so k is capped at the word
/// width the tables can afford.
pub const MAX_K: usize = 16;

#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum ForestError {
    #[error("graph contains a cycle")]
    NotAForest,
    #[error("k={k} exceeds the supported maximum of {max}", max = MAX_K)]
    KTooLarge { k: usize },
    #[error("constraint map covers {constraint} vertices, graph has {graph}")]
    VertexCountMismatch { constraint: usize, graph: usize },
    #[error(transparent)]
    Graph(#[from] graph_core::Error),
}

/// True iff the graph has no cycle: every component has one edge less than
/// it has vertices.
pub fn is_forest(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut stack = vec![start];
        visited[start] = true;
        let mut vertices = 0usize;
        let mut degree_sum = 0usize;
        while let Some(v) = stack.pop() {
            vertices += 1;
            degree_sum += g.degree(v);
            for &u in g.neighbors(v) {
                if !visited[u] {
                    visited[u] = true;
                    stack.push(u);
                }
            }
        }
        if degree_sum / 2 != vertices - 1 {
            return false;
        }
    }
    true
}

/// A candidate partial solution: total weight plus the canonical tie key.
/// Ordering prefers higher weight, then the colored edge set containing the
/// lowest canonical edge on which two sets differ (equal-weight optima are
/// never nested, so this is exactly lexicographic order on sorted edge
/// lists), then the smaller color vector.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Val {
    weight: BigUint,
    /// Bit per canonical edge index.
    edges: Vec<u64>,
    /// Color per canonical edge index, 0 = uncolored.
    colors: Vec<u8>,
}

impl Val {
    fn zero(edge_count: usize) -> Self {
        Val {
            weight: BigUint::zero(),
            edges: vec![0; edge_count.div_ceil(64)],
            colors: vec![0; edge_count],
        }
    }

    /// Better-than in the composite order.
    fn beats(&self, other: &Val) -> bool {
        match self.weight.cmp(&other.weight) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {}
        }
        for (a, b) in self.edges.iter().zip(&other.edges) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return a & low != 0;
            }
        }
        self.colors < other.colors
    }

    /// Union of two edge-disjoint partials.
    fn merge(&self, other: &Val) -> Val {
        Val {
            weight: &self.weight + &other.weight,
            edges: self
                .edges
                .iter()
                .zip(&other.edges)
                .map(|(a, b)| a | b)
                .collect(),
            colors: self
                .colors
                .iter()
                .zip(&other.colors)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    fn with_edge(mut self, idx: usize, color: usize, weight: &BigUint) -> Val {
        self.weight += weight;
        self.edges[idx / 64] |= 1 << (idx % 64);
        self.colors[idx] = color as u8;
        self
    }
}

fn keep_better(slot: &mut Option<Val>, candidate: Val) {
    match slot {
        Some(held) if !candidate.beats(held) => {}
        _ => *slot = Some(candidate),
    }
}

/// Maximum-weight coloring of a forest with colors `1..=k`, using only
/// colors from `wc` around each vertex. Returns the optimal total weight
/// and the coloring attaining it.
pub fn solve_forest(
    g: &Graph,
    k: usize,
    w: &WeightMap,
    wc: &ColorConstraintMap,
) -> Result<(BigUint, KEdgeColoring), ForestError> {
    if !is_forest(g) {
        return Err(ForestError::NotAForest);
    }
    if k > MAX_K {
        return Err(ForestError::KTooLarge { k });
    }
    if wc.k() != k {
        return Err(ForestError::Graph(graph_core::Error::KMismatch {
            coloring_k: k,
            constraint_k: wc.k(),
        }));
    }
    if wc.vertex_count() != g.vertex_count() {
        return Err(ForestError::VertexCountMismatch {
            constraint: wc.vertex_count(),
            graph: g.vertex_count(),
        });
    }
    if k == 0 {
        return Ok((BigUint::zero(), KEdgeColoring::new(0)));
    }

    let n = g.vertex_count();
    let m = g.edge_count();
    let allowed: Vec<u32> = (0..n)
        .map(|v| {
            wc.allowed(v)
                .iter()
                .fold(0u32, |mask, &c| mask | (1 << (c - 1)))
        })
        .collect();
    let edge_index = |u: Vertex, v: Vertex| -> usize {
        let e = if u < v { (u, v) } else { (v, u) };
        g.edges().binary_search(&e).expect("edge of the graph")
    };

    // parent links by depth-first search from the lowest vertex of each
    // component; processing the preorder backwards visits children first
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut preorder: Vec<Vertex> = Vec::with_capacity(n);
    let mut roots: Vec<Vertex> = Vec::new();
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        roots.push(start);
        visited[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &u in g.neighbors(v) {
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = Some(v);
                    stack.push(u);
                }
            }
        }
    }

    // table[v][c] = best value in v's subtree when the parent edge carries
    // color c (index 0 = parent edge absent or uncolored)
    let mut table: Vec<Vec<Option<Val>>> = vec![Vec::new(); n];
    for &u in preorder.iter().rev() {
        let a = allowed[u];
        let children: Vec<Vertex> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| parent[v] == Some(u))
            .collect();

        // subset DP over the colors u hands to its child edges
        let mut current: Vec<Option<Val>> = vec![None; 1 << k];
        let mut s = a;
        loop {
            current[s as usize] = Some(Val::zero(m));
            if s == 0 {
                break;
            }
            s = (s - 1) & a;
        }
        for &child in &children {
            let child_table = std::mem::take(&mut table[child]);
            let skip = child_table[0].clone().expect("child table has index 0");
            let idx = edge_index(u, child);
            let weight = w.get(u, child);
            let mut next: Vec<Option<Val>> = vec![None; 1 << k];
            let mut s = a;
            loop {
                let base = current[s as usize].as_ref().expect("submask slot filled");
                keep_better(&mut next[s as usize], base.merge(&skip));
                let mut usable = s & allowed[child];
                while usable != 0 {
                    let bit = usable.trailing_zeros() as usize;
                    usable &= usable - 1;
                    let color = bit + 1;
                    if let Some(sub) = child_table[color].as_ref() {
                        let without = current[(s & !(1 << bit)) as usize]
                            .as_ref()
                            .expect("submask slot filled");
                        keep_better(
                            &mut next[s as usize],
                            without.merge(sub).with_edge(idx, color, weight),
                        );
                    }
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & a;
            }
            current = next;
        }

        let mut slots: Vec<Option<Val>> = vec![None; k + 1];
        slots[0] = current[a as usize].clone();
        let mut c = a;
        while c != 0 {
            let bit = c.trailing_zeros() as usize;
            c &= c - 1;
            slots[bit + 1] = current[(a & !(1 << bit)) as usize].clone();
        }
        table[u] = slots;
    }

    let mut total = Val::zero(m);
    for &r in &roots {
        let best = table[r][0].take().expect("root table has index 0");
        total = total.merge(&best);
    }
    let mut coloring = KEdgeColoring::new(k);
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        if total.colors[idx] > 0 {
            coloring.set(u, v, total.colors[idx] as usize)?;
        }
    }
    Ok((total.weight, coloring))
}

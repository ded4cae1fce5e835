//! Branch-and-bound cores for the two exact searches.
//!
//! Both searches prune with the same admissible bound: every still-decidable
//! edge is counted at both endpoints, each vertex can absorb at most as many
//! incident edges as it has remaining capacity (free admissible colors, or
//! remaining degree), so half the sum of the per-vertex top picks bounds the
//! weight any completion can still add.

use crate::weight::Wt;
use crate::Ticker;
use graph_core::{ColorConstraintMap, Graph};
use num_bigint::BigUint;

pub(crate) struct ColorOutcome {
    pub(crate) best_value: BigUint,
    pub(crate) best_assignment: Vec<usize>,
}

struct ColorCtx<'a, W: Wt> {
    edges: &'a [(usize, usize)],
    weights: &'a [W],
    k: usize,
    /// Bit `c-1` set when color `c` is admissible at the vertex.
    allowed: Vec<u64>,
    used: Vec<u64>,
    /// Incident edge indices per vertex, heaviest first.
    incident: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    current: W,
    best: W,
    best_assignment: Vec<usize>,
    /// Colors are interchangeable when no vertex is constrained; new colors
    /// are then introduced in ascending order only.
    symmetric: bool,
    max_used_color: usize,
}

impl<W: Wt> ColorCtx<'_, W> {
    fn suffix_bound(&self, depth: usize) -> W {
        let mut sum = W::zero();
        for v in 0..self.allowed.len() {
            let free_v = self.allowed[v] & !self.used[v];
            let capacity = free_v.count_ones() as usize;
            if capacity == 0 {
                continue;
            }
            let mut taken = 0;
            for &idx in &self.incident[v] {
                if idx < depth {
                    continue;
                }
                let (a, b) = self.edges[idx];
                let free_a = self.allowed[a] & !self.used[a];
                let free_b = self.allowed[b] & !self.used[b];
                if free_a & free_b == 0 {
                    continue;
                }
                sum.add_assign(&self.weights[idx]);
                taken += 1;
                if taken == capacity {
                    break;
                }
            }
        }
        sum.half()
    }

    fn dfs(&mut self, depth: usize, ticker: &mut Ticker) {
        if !ticker.tick() {
            return;
        }
        if depth == self.edges.len() {
            if self.current > self.best {
                self.best = self.current.clone();
                self.best_assignment = self.assignment.clone();
            }
            return;
        }
        let mut bound = self.suffix_bound(depth);
        bound.add_assign(&self.current);
        if bound <= self.best {
            return;
        }

        let (u, v) = self.edges[depth];
        let common = self.allowed[u] & !self.used[u] & self.allowed[v] & !self.used[v];
        let mut candidates = common;
        if self.symmetric {
            let limit = (self.max_used_color + 1).min(self.k);
            candidates &= (1u64 << limit) - 1;
        }
        while candidates != 0 {
            let bit = candidates.trailing_zeros() as u64;
            candidates &= candidates - 1;
            let color = bit as usize + 1;
            self.used[u] |= 1 << bit;
            self.used[v] |= 1 << bit;
            self.assignment[depth] = color;
            self.current.add_assign(&self.weights[depth]);
            let saved_max = self.max_used_color;
            self.max_used_color = self.max_used_color.max(color);
            self.dfs(depth + 1, ticker);
            self.max_used_color = saved_max;
            self.current.sub_assign(&self.weights[depth]);
            self.assignment[depth] = 0;
            self.used[u] &= !(1 << bit);
            self.used[v] &= !(1 << bit);
        }
        // leaving the edge uncolored comes last, so the first incumbent is
        // the greedy coloring
        self.dfs(depth + 1, ticker);
    }
}

pub(crate) fn color_search<W: Wt>(
    g: &Graph,
    k: usize,
    weights: &[W],
    wc: &ColorConstraintMap,
    ticker: &mut Ticker,
) -> ColorOutcome {
    let n = g.vertex_count();
    let mut allowed = vec![0u64; n];
    for v in 0..n {
        for &c in wc.allowed(v) {
            allowed[v] |= 1 << (c - 1);
        }
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(idx);
        incident[v].push(idx);
    }
    for list in &mut incident {
        list.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    }
    let mut ctx = ColorCtx {
        edges: g.edges(),
        weights,
        k,
        allowed,
        used: vec![0u64; n],
        incident,
        assignment: vec![0; g.edge_count()],
        current: W::zero(),
        best: W::zero(),
        best_assignment: vec![0; g.edge_count()],
        symmetric: wc.is_full(),
        max_used_color: 0,
    };
    ctx.dfs(0, ticker);
    ColorOutcome {
        best_value: ctx.best.into_big(),
        best_assignment: ctx.best_assignment,
    }
}

pub(crate) struct DegreeOutcome {
    pub(crate) best_value: BigUint,
    /// Canonical edge indices of the best subgraph, ascending.
    pub(crate) chosen: Vec<usize>,
}

struct DegreeCtx<'a, W: Wt> {
    edges: &'a [(usize, usize)],
    weights: &'a [W],
    k: usize,
    /// Edge indices in decision order: heaviest first.
    order: Vec<usize>,
    /// Position of each edge in `order`.
    position: Vec<usize>,
    degree_used: Vec<usize>,
    /// Incident edge indices per vertex, heaviest first.
    incident: Vec<Vec<usize>>,
    in_set: Vec<bool>,
    current: W,
    best: W,
    best_chosen: Vec<usize>,
}

impl<W: Wt> DegreeCtx<'_, W> {
    fn suffix_bound(&self, pos: usize) -> W {
        let mut sum = W::zero();
        for v in 0..self.degree_used.len() {
            let capacity = self.k - self.degree_used[v];
            if capacity == 0 {
                continue;
            }
            let mut taken = 0;
            for &idx in &self.incident[v] {
                if self.position[idx] < pos {
                    continue;
                }
                let (a, b) = self.edges[idx];
                if self.degree_used[a] == self.k || self.degree_used[b] == self.k {
                    continue;
                }
                sum.add_assign(&self.weights[idx]);
                taken += 1;
                if taken == capacity {
                    break;
                }
            }
        }
        sum.half()
    }

    fn snapshot(&mut self) {
        if self.current > self.best {
            self.best = self.current.clone();
            self.best_chosen = self
                .in_set
                .iter()
                .enumerate()
                .filter(|&(_, &chosen)| chosen)
                .map(|(idx, _)| idx)
                .collect();
        }
    }

    fn dfs(&mut self, pos: usize, ticker: &mut Ticker) {
        if !ticker.tick() {
            return;
        }
        if pos == self.order.len() {
            self.snapshot();
            return;
        }
        let mut bound = self.suffix_bound(pos);
        bound.add_assign(&self.current);
        if bound <= self.best {
            return;
        }
        let idx = self.order[pos];
        let (u, v) = self.edges[idx];
        if self.degree_used[u] < self.k && self.degree_used[v] < self.k {
            self.degree_used[u] += 1;
            self.degree_used[v] += 1;
            self.in_set[idx] = true;
            self.current.add_assign(&self.weights[idx]);
            self.dfs(pos + 1, ticker);
            self.current.sub_assign(&self.weights[idx]);
            self.in_set[idx] = false;
            self.degree_used[u] -= 1;
            self.degree_used[v] -= 1;
        }
        self.dfs(pos + 1, ticker);
    }
}

pub(crate) fn degree_search<W: Wt>(
    g: &Graph,
    k: usize,
    weights: &[W],
    ticker: &mut Ticker,
) -> DegreeOutcome {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let mut position = vec![0usize; m];
    for (pos, &idx) in order.iter().enumerate() {
        position[idx] = pos;
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(idx);
        incident[v].push(idx);
    }
    for list in &mut incident {
        list.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    }

    let mut ctx = DegreeCtx {
        edges: g.edges(),
        weights,
        k,
        order,
        position,
        degree_used: vec![0; n],
        incident,
        in_set: vec![false; m],
        current: W::zero(),
        best: W::zero(),
        best_chosen: Vec::new(),
    };

    // greedy seed: take every edge the caps allow, heaviest first; the
    // search then starts with a strong incumbent to prune against
    for pos in 0..ctx.order.len() {
        let idx = ctx.order[pos];
        let (u, v) = ctx.edges[idx];
        if ctx.degree_used[u] < k && ctx.degree_used[v] < k {
            ctx.degree_used[u] += 1;
            ctx.degree_used[v] += 1;
            ctx.in_set[idx] = true;
            ctx.current.add_assign(&ctx.weights[idx]);
        }
    }
    ctx.snapshot();
    for idx in 0..m {
        if ctx.in_set[idx] {
            let (u, v) = ctx.edges[idx];
            ctx.degree_used[u] -= 1;
            ctx.degree_used[v] -= 1;
            ctx.in_set[idx] = false;
        }
    }
    ctx.current = W::zero();

    ctx.dfs(0, ticker);
    let mut chosen = ctx.best_chosen;
    chosen.sort_unstable();
    DegreeOutcome {
        best_value: ctx.best.into_big(),
        chosen,
    }
}

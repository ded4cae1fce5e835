//! Graph generators: the small named graphs used throughout the test
//! suites plus seeded random families. Random generators take an explicit
//! seed and are byte-deterministic across runs and platforms.

use crate::{Graph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Path on `n` vertices (`n-1` edges).
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges = (1..n).map(|v| (v - 1, v)).chain([(n - 1, 0)]);
    Graph::new(n, edges).expect("cycle edges are valid")
}

/// Star on `n` vertices: center 0 joined to `1..n`.
pub fn star(n: usize) -> Graph {
    assert!(n >= 1);
    Graph::new(n, (1..n).map(|v| (0, v))).expect("star edges are valid")
}

/// Complete bipartite graph K_{3,3}: sides {0,1,2} and {3,4,5}.
pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    Graph::new(6, edges).expect("k33 edges are valid")
}

/// Complete graph K_4.
pub fn k4() -> Graph {
    let mut edges = Vec::new();
    for u in 0..4 {
        for v in (u + 1)..4 {
            edges.push((u, v));
        }
    }
    Graph::new(4, edges).expect("k4 edges are valid")
}

/// Triangular prism (3-prism): two triangles {0,1,2}, {3,4,5} joined by a
/// perfect matching.
pub fn prism3() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (0, 2),
        (3, 4),
        (4, 5),
        (3, 5),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    Graph::new(6, edges).expect("prism edges are valid")
}

/// Petersen graph: outer cycle 0-4, inner pentagram 5-9, five spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("petersen edges are valid")
}

/// Ten-vertex tree made of two degree-3 centers joined by a bridge, each
/// center carrying two legs of length two. Its unique perfect matching
/// contains the bridge, while every maximum 2-edge-colorable subgraph is
/// exactly the eight non-bridge edges, so the perfect matching is not
/// contained in any of them.
pub fn fig1() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (0, 3),
        (3, 4),
        (0, 5),
        (5, 6),
        (6, 7),
        (5, 8),
        (8, 9),
    ];
    let labels: BTreeMap<Vertex, (i64, i64)> = [
        (0, (0, 0)),
        (1, (-2, 0)),
        (2, (-4, 0)),
        (3, (0, 2)),
        (4, (0, 4)),
        (5, (2, 0)),
        (6, (4, 0)),
        (7, (6, 0)),
        (8, (2, 2)),
        (9, (2, 4)),
    ]
    .into_iter()
    .collect();
    Graph::new(10, edges)
        .expect("edges are valid")
        .with_labels(labels)
        .expect("labels are injective")
}

/// Random bipartite graph: sides `0..ceil(n/2)` and the rest, each cross
/// pair kept with probability `p`.
pub fn random_bipartite(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let split = n.div_ceil(2);
    let mut edges = Vec::new();
    for a in 0..split {
        for b in split..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// Random forest: each vertex after the first attaches to a uniformly
/// random earlier vertex with probability `attach_p`, otherwise it starts a
/// new component.
pub fn random_forest(n: usize, attach_p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(attach_p) {
            let parent = rng.gen_range(0..v);
            edges.push((parent, v));
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

#![allow(dead_code)]

use fbpaths::seed::stream_rng;
use fbpaths::{ShortestPathTree, SortedDigraph, WeightKind};
use rand::Rng;

/// Copy of `graph` with the cost of `(u, v)` replaced by `cost` (both
/// directions when undirected).
pub fn with_edge_cost(graph: &SortedDigraph, u: usize, v: usize, cost: f64) -> SortedDigraph {
    let directed = graph.is_directed();
    let edges: Vec<(usize, usize, f64)> = graph
        .edges()
        .map(|(a, b, c)| {
            let (a, b) = (a.index(), b.index());
            let hit = (a, b) == (u, v) || (!directed && (a, b) == (v, u));
            (a, b, if hit { cost } else { c })
        })
        .collect();
    SortedDigraph::build_sorted_adjacency(graph.n(), &edges, WeightKind::Explicit, directed).unwrap()
}

/// Lowers a random non-tree edge `(u, v)` with `d_v > d_u` to
/// `(d_v - d_u) * U`, `U` uniform in `[0, 0.99]`, so the tree stops being
/// optimal. Returns the new graph and the lowered edge.
pub fn lower_random_edge(
    graph: &SortedDigraph,
    tree: &ShortestPathTree,
    seed: u64,
) -> Option<(SortedDigraph, (usize, usize, f64))> {
    let n = graph.n();
    let mut rng = stream_rng(seed);
    let d = &tree.dist;
    for _ in 0..10 * n * n {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || d[v] <= d[u] || tree.parent[v].map(|p| p.index()) == Some(u) {
            continue;
        }
        if graph.edge_cost(u, v).is_none() {
            continue;
        }
        let cost = (d[v] - d[u]) * rng.random_range(0.0..=0.99);
        return Some((with_edge_cost(graph, u, v, cost), (u, v, cost)));
    }
    None
}

/// Relative difference, treating equal values (including infinities) as zero.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

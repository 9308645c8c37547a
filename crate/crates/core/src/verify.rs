//! Shortest path tree verification.
//!
//! A tree is an SPT iff `d[u] + c[u,v] >= d[v]` for every edge. Three
//! checkers decide this: an exhaustive scan, a forward-only scan that stops
//! each sorted out-list at `c >= D - d[u]` (`D` the largest distance), and a
//! forward-backward scan that only looks at pertinent edges relative to the
//! median distance `M`. All three accept exactly the same trees.
//!
//! Violation is tested as `d[u] + c < d[v]`, the same floating-point
//! expression a relaxation uses, so trees produced by any of the SSSP
//! algorithms are accepted exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SortedDigraph;
use crate::sssp::ShortestPathTree;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("tree has {got} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("source {0} has a parent")]
    SourceHasParent(usize),
    #[error("parent pointers form a cycle through vertex {0}")]
    Cycle(usize),
    #[error("tree edge ({u}, {v}) is not in the graph")]
    MissingEdge { u: usize, v: usize },
    #[error("vertex {0} is unreachable; the median distance is undefined")]
    Unreachable(usize),
    #[error("cannot select the median of an empty or non-finite array")]
    NonFinite,
}

/// An edge with `d_u + c < d_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub u: usize,
    pub v: usize,
    pub c: f64,
    pub d_u: f64,
    pub d_v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub accepted: bool,
    pub edges_examined: u64,
    /// Present iff `accepted` is false.
    pub witness: Option<Witness>,
    /// `D`, the largest tree distance.
    pub max_distance: f64,
    /// `M`, set by the forward-backward verifier only.
    pub median: Option<f64>,
}

/// Distances along parent pointers. Vertices other than `source` without a
/// parent are unreachable and get `+inf`.
pub fn tree_distances(graph: &SortedDigraph, parent: &[Option<usize>], source: usize) -> Result<Vec<f64>, VerifyError> {
    let n = graph.n();
    if parent.len() != n {
        return Err(VerifyError::SizeMismatch { expected: n, got: parent.len() });
    }
    if parent[source].is_some() {
        return Err(VerifyError::SourceHasParent(source));
    }
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![UNSEEN; n];
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    state[source] = DONE;
    let mut path = Vec::new();
    for start in 0..n {
        // Walk up to a finished vertex, then unwind assigning distances.
        let mut v = start;
        while state[v] == UNSEEN {
            state[v] = ON_PATH;
            path.push(v);
            match parent[v] {
                Some(p) if p >= n => return Err(VerifyError::MissingEdge { u: p, v }),
                Some(p) => v = p,
                None => break,
            }
        }
        if state[v] == ON_PATH && parent[v].is_some() {
            return Err(VerifyError::Cycle(v));
        }
        while let Some(w) = path.pop() {
            if let Some(p) = parent[w] {
                let c = graph.edge_cost(p, w).ok_or(VerifyError::MissingEdge { u: p, v: w })?;
                dist[w] = dist[p] + c;
            }
            state[w] = DONE;
        }
    }
    Ok(dist)
}

fn distances_of(graph: &SortedDigraph, tree: &ShortestPathTree) -> Result<Vec<f64>, VerifyError> {
    tree_distances(graph, &tree.parent_indices(), tree.source.index())
}

fn max_distance(d: &[f64]) -> f64 {
    d.iter().copied().fold(0.0, f64::max)
}

#[inline]
fn violates(d: &[f64], u: usize, v: usize, c: f64) -> Option<Witness> {
    (d[u] + c < d[v]).then_some(Witness { u, v, c, d_u: d[u], d_v: d[v] })
}

fn report(examined: u64, witness: Option<Witness>, d: &[f64], median: Option<f64>) -> VerifyReport {
    VerifyReport {
        accepted: witness.is_none(),
        edges_examined: examined,
        witness,
        max_distance: max_distance(d),
        median,
    }
}

/// Checks every edge.
pub fn verify_full(graph: &SortedDigraph, tree: &ShortestPathTree) -> Result<VerifyReport, VerifyError> {
    let d = distances_of(graph, tree)?;
    let mut examined = 0;
    for u in 0..graph.n() {
        for (v, c) in graph.out_adj(u).iter() {
            examined += 1;
            if let Some(w) = violates(&d, u, v.index(), c) {
                return Ok(report(examined, Some(w), &d, None));
            }
        }
    }
    Ok(report(examined, None, &d, None))
}

/// Scans each sorted out-list up to and including the first edge with
/// `c >= D - d[u]`.
pub fn verify_forward_only(graph: &SortedDigraph, tree: &ShortestPathTree) -> Result<VerifyReport, VerifyError> {
    let d = distances_of(graph, tree)?;
    let big_d = d.iter().copied().fold(0.0, f64::max);
    let mut examined = 0;
    for u in 0..graph.n() {
        if d[u] == f64::INFINITY {
            continue;
        }
        for (v, c) in graph.out_adj(u).iter() {
            examined += 1;
            if let Some(w) = violates(&d, u, v.index(), c) {
                return Ok(report(examined, Some(w), &d, None));
            }
            if c >= big_d - d[u] {
                break;
            }
        }
    }
    Ok(report(examined, None, &d, None))
}

/// The `ceil(n/2)`-th smallest value, by introselect.
pub fn select_median(values: &[f64]) -> Result<f64, VerifyError> {
    if values.is_empty() || values.iter().any(|x| !x.is_finite()) {
        return Err(VerifyError::NonFinite);
    }
    let mut work = values.to_vec();
    let k = values.len().div_ceil(2) - 1;
    let (_, m, _) = work.select_nth_unstable_by(k, f64::total_cmp);
    Ok(*m)
}

/// Checks out-pertinent edges `c <= 2(M - d[u])` of vertices with
/// `d[u] <= M` and in-pertinent edges `c < 2(d[v] - M)` of vertices with
/// `d[v] >= M`. The first non-pertinent edge of each scanned list is counted.
pub fn verify_fb(graph: &SortedDigraph, tree: &ShortestPathTree) -> Result<VerifyReport, VerifyError> {
    let d = distances_of(graph, tree)?;
    if let Some(v) = d.iter().position(|x| !x.is_finite()) {
        return Err(VerifyError::Unreachable(v));
    }
    let m = select_median(&d)?;
    let mut examined = 0;
    for u in 0..graph.n() {
        if d[u] > m {
            continue;
        }
        let limit = 2.0 * (m - d[u]);
        for (v, c) in graph.out_adj(u).iter() {
            examined += 1;
            if c > limit {
                break;
            }
            if let Some(w) = violates(&d, u, v.index(), c) {
                return Ok(report(examined, Some(w), &d, Some(m)));
            }
        }
    }
    for v in 0..graph.n() {
        if d[v] < m {
            continue;
        }
        let limit = 2.0 * (d[v] - m);
        for (u, c) in graph.in_adj(v).iter() {
            examined += 1;
            if c >= limit {
                break;
            }
            if let Some(w) = violates(&d, u.index(), v, c) {
                return Ok(report(examined, Some(w), &d, Some(m)));
            }
        }
    }
    Ok(report(examined, None, &d, Some(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{WeightKind, WeightModel};
    use crate::sssp::dijkstra;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn chain() -> SortedDigraph {
        SortedDigraph::build_sorted_adjacency(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)], WeightKind::Explicit, true)
            .unwrap()
    }

    fn tree(source: usize, parent: &[Option<usize>]) -> ShortestPathTree {
        ShortestPathTree {
            source: crate::VertexId::new(source),
            parent: parent.iter().map(|p| p.map(crate::VertexId::new)).collect(),
            dist: vec![0.0; parent.len()],
        }
    }

    #[test]
    fn chain_distances() {
        assert_eq!(tree_distances(&chain(), &[None, Some(0), Some(1)], 0).unwrap(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn structural_errors() {
        let g = SortedDigraph::build_sorted_adjacency(
            3,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 1, 1.0)],
            WeightKind::Explicit,
            true,
        )
        .unwrap();
        assert_eq!(tree_distances(&g, &[None, Some(2), Some(1)], 0), Err(VerifyError::Cycle(1)));
        assert_eq!(tree_distances(&g, &[None, Some(0), Some(0)], 0), Err(VerifyError::MissingEdge { u: 0, v: 2 }));
        assert_eq!(tree_distances(&g, &[Some(1), Some(0), Some(1)], 0), Err(VerifyError::SourceHasParent(0)));
        assert!(matches!(tree_distances(&g, &[None], 0), Err(VerifyError::SizeMismatch { .. })));
        // A self-parent is a cycle of length one.
        assert_eq!(tree_distances(&g, &[None, Some(1), Some(1)], 0), Err(VerifyError::Cycle(1)));
    }

    #[test]
    fn dijkstra_distances_reproduced_exactly() {
        let g = SortedDigraph::gen_complete(200, &WeightModel::exponential(17), true).unwrap();
        let t = dijkstra(&g, 0);
        assert_eq!(tree_distances(&g, &t.parent_indices(), 0).unwrap(), t.dist);
    }

    #[test]
    fn lowered_edge_rejected_with_witness() {
        // The chain tree is optimal; lower (0,2) below d_2 - d_0 = 2.
        let g = chain();
        let t = tree(0, &[None, Some(0), Some(1)]);
        for f in [verify_full, verify_forward_only, verify_fb] {
            assert!(f(&g, &t).unwrap().accepted);
        }
        let g2 = SortedDigraph::build_sorted_adjacency(
            3,
            &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.5)],
            WeightKind::Explicit,
            true,
        )
        .unwrap();
        for f in [verify_full, verify_forward_only, verify_fb] {
            let r = f(&g2, &t).unwrap();
            assert!(!r.accepted);
            assert_eq!(r.witness, Some(Witness { u: 0, v: 2, c: 1.5, d_u: 0.0, d_v: 2.0 }));
        }
    }

    #[test]
    fn single_and_two_vertex_graphs() {
        let g1 = SortedDigraph::gen_complete(1, &WeightModel::exponential(0), true).unwrap();
        let t1 = tree(0, &[None]);
        for f in [verify_full, verify_forward_only, verify_fb] {
            assert!(f(&g1, &t1).unwrap().accepted);
        }
        let g2 = SortedDigraph::gen_complete(2, &WeightModel::exponential(0), true).unwrap();
        let r = verify_forward_only(&g2, &dijkstra(&g2, 0)).unwrap();
        assert!(r.accepted && r.edges_examined <= 2);
    }

    #[test]
    fn unreachable_vertices() {
        let g = SortedDigraph::build_sorted_adjacency(3, &[(0, 1, 1.0)], WeightKind::Explicit, true).unwrap();
        let t = dijkstra(&g, 0);
        assert!(verify_full(&g, &t).unwrap().accepted);
        assert!(verify_forward_only(&g, &t).unwrap().accepted);
        assert_eq!(verify_fb(&g, &t), Err(VerifyError::Unreachable(2)));
        // Claiming a reachable vertex is unreachable is a violation.
        let r = verify_full(&g, &tree(0, &[None, None, None])).unwrap();
        assert!(!r.accepted);
    }

    #[test]
    fn median_examples() {
        assert_eq!(select_median(&[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap(), 2.0);
        assert_eq!(select_median(&[0.0, 1.0, 2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(select_median(&[3.0, 0.0, 2.0, 1.0]).unwrap(), 1.0);
        assert_eq!(select_median(&[]), Err(VerifyError::NonFinite));
        assert_eq!(select_median(&[1.0, f64::INFINITY]), Err(VerifyError::NonFinite));
    }

    #[test]
    fn median_matches_sort_on_random_values() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let values: Vec<f64> = (0..10_000).map(|_| rng.random()).collect();
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(select_median(&values).unwrap(), sorted[4999]);
    }

    #[test]
    fn fb_examines_linear_number_of_edges() {
        let n = 2000;
        let g = SortedDigraph::gen_complete(n, &WeightModel::exponential(3), true).unwrap();
        let r = verify_fb(&g, &dijkstra(&g, 0)).unwrap();
        assert!(r.accepted);
        assert!((r.edges_examined as f64) / (n as f64) <= 6.0, "{}", r.edges_examined);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn verifiers_agree_on_random_trees(seed in any::<u64>(), n in 2usize..24, directed in any::<bool>()) {
            let g = SortedDigraph::gen_complete(n, &WeightModel::exponential(seed), directed).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            // Random spanning arborescence rooted at 0: each vertex attaches to
            // an earlier one in a random order.
            let mut order: Vec<usize> = (1..n).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            let mut parent = vec![None; n];
            for (i, &v) in order.iter().enumerate() {
                let p = if i == 0 || rng.random_bool(0.3) { 0 } else { order[rng.random_range(0..i)] };
                parent[v] = Some(p);
            }
            let t = tree(0, &parent);
            let full = verify_full(&g, &t).unwrap().accepted;
            prop_assert_eq!(verify_forward_only(&g, &t).unwrap().accepted, full);
            prop_assert_eq!(verify_fb(&g, &t).unwrap().accepted, full);
        }
    }
}

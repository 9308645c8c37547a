//! Single-source shortest paths: Dijkstra, Spira, and the forward-backward
//! algorithm.

mod dijkstra;
mod fb;
mod invariants;
mod spira;

use serde::{Deserialize, Serialize};

use crate::graph::{SortedDigraph, VertexId};
use crate::pq::{QueueKind, QueueOp, QueueStats};

pub use dijkstra::{dijkstra, dijkstra_counted};
pub use fb::{fb_sssp, record_trace, replay_trace, FbTrace};
pub use invariants::{check_fb_invariants, InvariantReport, InvariantViolation};
pub use spira::spira;

pub(crate) const NO_PARENT: u32 = u32::MAX;

/// Shortest path tree given by parent pointers and distances. Unreachable
/// vertices have no parent and infinite distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortestPathTree {
    pub source: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub dist: Vec<f64>,
}

impl ShortestPathTree {
    pub(crate) fn from_raw(source: usize, parent: Vec<u32>, dist: Vec<f64>) -> Self {
        Self {
            source: VertexId::new(source),
            parent: parent.into_iter().map(|p| (p != NO_PARENT).then(|| VertexId::new(p as usize))).collect(),
            dist,
        }
    }

    pub fn n(&self) -> usize {
        self.dist.len()
    }

    pub fn reachable_count(&self) -> usize {
        self.dist.iter().filter(|d| d.is_finite()).count()
    }

    /// Parent array as plain indices, `None` for the root and unreachable vertices.
    pub fn parent_indices(&self) -> Vec<Option<usize>> {
        self.parent.iter().map(|p| p.map(VertexId::index)).collect()
    }
}

/// Operation counters of one SSSP run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanStats {
    /// Edges read from outgoing lists.
    pub forward_scans: u64,
    /// Edges read from incoming lists.
    pub backward_scans: u64,
    pub p_inserts: u64,
    pub p_extracts: u64,
    pub q_inserts: u64,
    pub q_extracts: u64,
    pub requests: u64,
    pub urgent_requests: u64,
    /// Threshold `M`: distance of the `ceil(n/2)`-th settled vertex, if reached.
    pub median: Option<f64>,
    pub size_at_median: u64,
    pub p_queue: QueueStats,
    pub q_queue: QueueStats,
}

impl ScanStats {
    pub fn total_scans(&self) -> u64 {
        self.forward_scans + self.backward_scans
    }

    pub fn total_inserts(&self) -> u64 {
        self.p_inserts + self.q_inserts
    }

    /// Field-wise sum, used to aggregate per-source runs.
    pub fn merge(&mut self, other: &ScanStats) {
        self.forward_scans += other.forward_scans;
        self.backward_scans += other.backward_scans;
        self.p_inserts += other.p_inserts;
        self.p_extracts += other.p_extracts;
        self.q_inserts += other.q_inserts;
        self.q_extracts += other.q_extracts;
        self.requests += other.requests;
        self.urgent_requests += other.urgent_requests;
    }
}

/// Queue choices for the forward-backward algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FbConfig {
    pub p_queue: QueueKind,
    pub q_queue: QueueKind,
}

impl FbConfig {
    /// Bucket queues with the default geometry for `n` vertices.
    pub fn bucket(n: usize) -> Self {
        Self { p_queue: QueueKind::default_bucket(n), q_queue: QueueKind::default_bucket(n) }
    }

    pub fn binary_heap() -> Self {
        Self { p_queue: QueueKind::BinaryHeap, q_queue: QueueKind::BinaryHeap }
    }

    pub fn uniform(kind: QueueKind) -> Self {
        Self { p_queue: kind, q_queue: kind }
    }
}

/// `true` when `a` and `b` agree to relative tolerance `tol` (infinities must match).
pub fn distances_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    if !(a.is_finite() && b.is_finite()) {
        return false;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Checks that a tree's distances agree with a reference distance array.
pub fn same_distances(tree: &ShortestPathTree, reference: &[f64], tol: f64) -> bool {
    tree.dist.len() == reference.len() && tree.dist.iter().zip(reference).all(|(&a, &b)| distances_close(a, b, tol))
}

/// Queue traces are only meaningful alongside the run that produced them.
pub(crate) fn keys_of_extractions(ops: &[QueueOp]) -> Vec<f64> {
    ops.iter()
        .filter_map(|op| match *op {
            QueueOp::Extract { key } => Some(key),
            QueueOp::Insert { .. } => None,
        })
        .collect()
}

pub(crate) fn check_source(graph: &SortedDigraph, source: usize) {
    assert!(source < graph.n(), "source {source} out of range for n = {}", graph.n());
}

#[cfg(test)]
pub(crate) mod test_graphs {
    use crate::graph::{SortedDigraph, WeightKind};

    /// s=0, a=1, b=2 with s->a:1, s->b:3, a->b:1.
    pub fn triangle() -> SortedDigraph {
        SortedDigraph::build_sorted_adjacency(3, &[(0, 1, 1.0), (0, 2, 3.0), (1, 2, 1.0)], WeightKind::Explicit, true)
            .unwrap()
    }

    /// Vertex 3 has no incoming edges.
    pub fn with_unreachable() -> SortedDigraph {
        SortedDigraph::build_sorted_adjacency(
            4,
            &[(0, 1, 0.5), (1, 2, 0.25), (2, 0, 1.0), (3, 0, 0.1)],
            WeightKind::Explicit,
            true,
        )
        .unwrap()
    }

    /// Brute-force shortest distances by enumerating all simple paths.
    pub fn brute_force_distances(g: &SortedDigraph, s: usize) -> Vec<f64> {
        fn walk(g: &SortedDigraph, u: usize, len: f64, seen: &mut Vec<bool>, best: &mut Vec<f64>) {
            if len < best[u] {
                best[u] = len;
            }
            for (v, c) in g.out_adj(u).iter() {
                let v = v.index();
                if !seen[v] {
                    seen[v] = true;
                    walk(g, v, len + c, seen, best);
                    seen[v] = false;
                }
            }
        }
        let mut best = vec![f64::INFINITY; g.n()];
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        walk(g, s, 0.0, &mut seen, &mut best);
        best
    }
}

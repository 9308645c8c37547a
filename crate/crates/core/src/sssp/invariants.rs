use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fb::{Engine, Observer};
use super::{check_source, dijkstra, distances_close, keys_of_extractions, FbConfig, ScanStats};
use crate::graph::SortedDigraph;
use crate::pq::Recorder;

/// A broken invariant found by [`check_fb_invariants`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantViolation {
    #[error("distance of {v} is {got}, Dijkstra gives {expected}")]
    DistanceMismatch { v: usize, got: f64, expected: f64 },
    #[error("{queue} extracted key {key} after {previous}")]
    NonMonotone { queue: &'static str, previous: f64, key: f64 },
    #[error("vertex {u} had two outgoing edges in P at once")]
    DoubleOutgoing { u: usize },
    #[error("vertex {v} had two incoming edges in Q at once")]
    DoubleIncoming { v: usize },
    #[error("requested edge ({u}, {v}) with cost {c} is not in-pertinent")]
    NonPertinentRequest { u: usize, v: usize, c: f64 },
    #[error("{count} non-pertinent edges entered P, more than n = {n}")]
    TooManyNonPertinent { count: usize, n: usize },
    #[error("in-pertinent edge ({u}, {v}) never entered Q")]
    MissingInPertinent { u: usize, v: usize },
    #[error("{count} non-in-pertinent edges into {v} entered Q")]
    ExtraIncoming { v: usize, count: usize },
}

/// Summary of an instrumented run that satisfied every invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub stats: ScanStats,
    /// Insert events into P of edges that are neither out- nor in-pertinent.
    pub p_non_pertinent: usize,
    pub q_in_pertinent: usize,
    /// Edges in Q that are not in-pertinent; at most one per vertex.
    pub q_extra: usize,
}

#[derive(Default)]
struct Audit {
    in_p: Vec<u8>,
    in_q: Vec<u8>,
    first_error: Option<InvariantViolation>,
    p_inserted: Vec<(u32, u32, f64)>,
    q_inserted: Vec<(u32, u32, f64)>,
    requested: Vec<(u32, u32, f64)>,
}

impl Audit {
    fn fail(&mut self, e: InvariantViolation) {
        self.first_error.get_or_insert(e);
    }
}

impl Observer for Audit {
    fn p_insert(&mut self, u: u32, v: u32, c: f64) {
        self.in_p[u as usize] += 1;
        if self.in_p[u as usize] > 1 {
            self.fail(InvariantViolation::DoubleOutgoing { u: u as usize });
        }
        self.p_inserted.push((u, v, c));
    }

    fn p_extract(&mut self, u: u32, _v: u32) {
        self.in_p[u as usize] -= 1;
    }

    fn q_insert(&mut self, u: u32, v: u32, c: f64) {
        self.in_q[v as usize] += 1;
        if self.in_q[v as usize] > 1 {
            self.fail(InvariantViolation::DoubleIncoming { v: v as usize });
        }
        self.q_inserted.push((u, v, c));
    }

    fn q_extract(&mut self, _u: u32, v: u32) {
        self.in_q[v as usize] -= 1;
    }

    fn request(&mut self, u: u32, v: u32, c: f64) {
        self.requested.push((u, v, c));
    }
}

fn monotone(queue: &'static str, keys: &[f64]) -> Result<(), InvariantViolation> {
    match keys.windows(2).find(|w| w[1] < w[0]) {
        Some(w) => Err(InvariantViolation::NonMonotone { queue, previous: w[0], key: w[1] }),
        None => Ok(()),
    }
}

/// Runs the forward-backward algorithm with full instrumentation and checks:
/// distances agree with Dijkstra to relative `1e-9`; both queues extract in
/// nondecreasing key order; each vertex has at most one outgoing edge in P and
/// one incoming edge in Q at a time; every request is in-pertinent; at most `n`
/// insertions into P are neither out- nor in-pertinent; and Q receives every
/// in-pertinent edge into a reachable vertex plus at most one other edge per
/// vertex.
pub fn check_fb_invariants(
    graph: &SortedDigraph,
    source: usize,
    config: &FbConfig,
) -> Result<InvariantReport, InvariantViolation> {
    check_source(graph, source);
    let n = graph.n();
    let audit = Audit { in_p: vec![0; n], in_q: vec![0; n], ..Audit::default() };
    let p = Recorder::new(config.p_queue.build());
    let q = Recorder::new(config.q_queue.build());
    let (tree, stats, p, q, audit) = Engine::new(graph, p, q, audit).run(source);
    if let Some(e) = audit.first_error {
        return Err(e);
    }

    let reference = dijkstra(graph, source).dist;
    for (v, (&got, &expected)) in tree.dist.iter().zip(&reference).enumerate() {
        if !distances_close(got, expected, 1e-9) {
            return Err(InvariantViolation::DistanceMismatch { v, got, expected });
        }
    }
    monotone("P", &keys_of_extractions(p.ops()))?;
    monotone("Q", &keys_of_extractions(q.ops()))?;

    let d = &tree.dist;
    let Some(m) = stats.median else {
        // Fewer than half the vertices are reachable; stage two never starts.
        return Ok(InvariantReport { stats, p_non_pertinent: 0, q_in_pertinent: 0, q_extra: 0 });
    };
    let out_pertinent = |u: u32, c: f64| c <= 2.0 * (m - d[u as usize]);
    let in_pertinent = |v: u32, c: f64| c < 2.0 * (d[v as usize] - m);

    if let Some(&(u, v, c)) = audit.requested.iter().find(|&&(_, v, c)| !in_pertinent(v, c)) {
        return Err(InvariantViolation::NonPertinentRequest { u: u as usize, v: v as usize, c });
    }

    let p_non_pertinent =
        audit.p_inserted.iter().filter(|&&(u, v, c)| !out_pertinent(u, c) && !in_pertinent(v, c)).count();
    if p_non_pertinent > n {
        return Err(InvariantViolation::TooManyNonPertinent { count: p_non_pertinent, n });
    }

    let mut extra = vec![0usize; n];
    let mut q_in_pertinent = 0;
    for &(_, v, c) in &audit.q_inserted {
        if in_pertinent(v, c) {
            q_in_pertinent += 1;
        } else {
            extra[v as usize] += 1;
        }
    }
    if let Some((v, &count)) = extra.iter().enumerate().find(|&(_, &k)| k > 1) {
        return Err(InvariantViolation::ExtraIncoming { v, count });
    }
    // In-lists are scanned in sorted order, so the in-pertinent edges into `v`
    // are a prefix of its in-list.
    let mut scanned = vec![0usize; n];
    for &(_, v, _) in &audit.q_inserted {
        scanned[v as usize] += 1;
    }
    for v in 0..n {
        if !d[v].is_finite() {
            continue;
        }
        let adj = graph.in_adj(v);
        let prefix = adj.costs().iter().take_while(|&&c| in_pertinent(v as u32, c)).count();
        if scanned[v] < prefix {
            let (u, _) = adj.get(scanned[v]).expect("prefix within list");
            return Err(InvariantViolation::MissingInPertinent { u: u.index(), v });
        }
    }

    Ok(InvariantReport { stats, p_non_pertinent, q_in_pertinent, q_extra: extra.iter().sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{WeightKind, WeightModel};

    #[test]
    fn holds_on_random_graphs() {
        for seed in 0..20 {
            let n = 2 + (seed as usize * 37) % 300;
            for directed in [true, false] {
                let g = SortedDigraph::gen_complete(n, &WeightModel::exponential(seed), directed).unwrap();
                for cfg in [FbConfig::bucket(n), FbConfig::binary_heap()] {
                    let r = check_fb_invariants(&g, 0, &cfg).unwrap();
                    assert!(r.p_non_pertinent <= n);
                    assert!(r.q_extra <= n);
                }
            }
        }
    }

    #[test]
    fn holds_for_other_weight_models() {
        for kind in [WeightKind::Uniform, WeightKind::Weibull { shape: 0.5 }] {
            let g = SortedDigraph::gen_complete(150, &WeightModel::new(kind, 3), true).unwrap();
            check_fb_invariants(&g, 5, &FbConfig::bucket(150)).unwrap();
        }
    }

    #[test]
    fn sparse_graph_without_stage_two() {
        let g = SortedDigraph::build_sorted_adjacency(5, &[(0, 1, 1.0)], WeightKind::Explicit, true).unwrap();
        let r = check_fb_invariants(&g, 0, &FbConfig::binary_heap()).unwrap();
        assert_eq!(r.stats.median, None);
    }
}

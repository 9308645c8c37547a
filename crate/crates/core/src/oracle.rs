//! Ground truth for the exponential complete graph.
//!
//! In `G_n(Exp(1))` the SPT from a source can be sampled directly: the k-th
//! settled vertex is followed after an increment `X_k ~ Exp(1) / (k (n - k))`,
//! its parent is uniform among the vertices settled before it, and the order
//! of vertices is a uniform permutation with the source first. Given the
//! tree, a non-tree edge `(v_i, v_j)` with `i < j` costs
//! `d_j - d_i + Exp(1)` and one with `i > j` costs `Exp(1)`.
//!
//! Positions `k` below are 1-based in prose and 0-based in code.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{SortedDigraph, VertexId};
use crate::seed::{derive_seed, stream_rng};
use crate::sssp::ShortestPathTree;
use crate::verify::{select_median, VerifyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("position {k} out of range 1..={n}")]
    OutOfRange { n: usize, k: usize },
    #[error("graph must have at least one vertex")]
    Empty,
}

/// One sampled shortest path tree, indexed by settling position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SptSample {
    /// `order[k]` is the vertex settled at position `k`; `order[0]` is the source.
    pub order: Vec<usize>,
    /// Position of the parent of position `k`, uniform in `0..k`; `None` for `k = 0`.
    pub parent_index: Vec<Option<usize>>,
    /// Distance of position `k`; nondecreasing with `dist[0] = 0`.
    pub dist: Vec<f64>,
    /// `increments[k] = dist[k + 1] - dist[k]`.
    pub increments: Vec<f64>,
}

impl SptSample {
    pub fn n(&self) -> usize {
        self.dist.len()
    }

    /// `M`, the distance at position `ceil(n/2)`.
    pub fn median(&self) -> f64 {
        self.dist[self.n().div_ceil(2) - 1]
    }

    /// The sample as a tree over vertex labels.
    pub fn to_tree(&self) -> ShortestPathTree {
        let n = self.n();
        let mut parent = vec![None; n];
        let mut dist = vec![0.0; n];
        for k in 0..n {
            let v = self.order[k];
            parent[v] = self.parent_index[k].map(|p| VertexId::new(self.order[p]));
            dist[v] = self.dist[k];
        }
        ShortestPathTree { source: VertexId::new(self.order[0]), parent, dist }
    }
}

/// Samples the SPT of `G_n(Exp(1))` from source `0` in `O(n)` time.
pub fn sample_spt(n: usize, seed: u64) -> Result<SptSample, OracleError> {
    if n == 0 {
        return Err(OracleError::Empty);
    }
    let mut rng = stream_rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order[1..].shuffle(&mut rng);
    let mut parent_index = Vec::with_capacity(n);
    parent_index.push(None);
    for k in 1..n {
        parent_index.push(Some(rng.random_range(0..k)));
    }
    let mut increments = Vec::with_capacity(n.saturating_sub(1));
    let mut dist = Vec::with_capacity(n);
    dist.push(0.0);
    for k in 1..n {
        let e: f64 = rng.sample(Exp1);
        let x = e / (k as f64 * (n - k) as f64);
        increments.push(x);
        dist.push(dist[k - 1] + x);
    }
    Ok(SptSample { order, parent_index, dist, increments })
}

/// `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`.
pub fn harmonic(m: usize) -> f64 {
    (1..=m).rev().map(|i| 1.0 / i as f64).sum()
}

/// `E[d_{v_k}] = (H_{k-1} - H_{n-k} + H_{n-1}) / n` for `1 <= k <= n`.
pub fn harmonic_expected_distance(n: usize, k: usize) -> Result<f64, OracleError> {
    if k == 0 || k > n {
        return Err(OracleError::OutOfRange { n, k });
    }
    Ok((harmonic(k - 1) - harmonic(n - k) + harmonic(n - 1)) / n as f64)
}

/// Pertinent edges split by tree membership and side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PertinenceCounts {
    pub out_spt: u64,
    pub in_spt: u64,
    pub out_non_spt: u64,
    pub in_non_spt: u64,
    /// Size of the pertinent edge set, the sum of the four counts.
    pub total: u64,
}

impl PertinenceCounts {
    pub fn non_spt(&self) -> u64 {
        self.out_non_spt + self.in_non_spt
    }

    fn add(&mut self, side: Side, spt: bool) {
        match (side, spt) {
            (Side::Out, true) => self.out_spt += 1,
            (Side::In, true) => self.in_spt += 1,
            (Side::Out, false) => self.out_non_spt += 1,
            (Side::In, false) => self.in_non_spt += 1,
        }
        self.total += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Out,
    In,
}

/// Out-pertinence takes precedence; for a valid SPT no edge satisfies both.
#[inline]
fn side(c: f64, du: f64, dv: f64, m: f64) -> Option<Side> {
    if c <= 2.0 * (m - du) {
        Some(Side::Out)
    } else if c < 2.0 * (dv - m) {
        Some(Side::In)
    } else {
        None
    }
}

/// Classifies every edge of `graph` against the SPT `tree`, with `M` the
/// median of `tree.dist`.
///
/// An undirected edge is counted once, in the orientation from the endpoint
/// with the smaller distance (ties by index); that orientation is pertinent
/// whenever the reverse one is. It is a tree edge if either endpoint is the
/// parent of the other.
pub fn classify_pertinence(graph: &SortedDigraph, tree: &ShortestPathTree) -> Result<PertinenceCounts, VerifyError> {
    let d = &tree.dist;
    let m = select_median(d)?;
    let parent = tree.parent_indices();
    let directed = graph.is_directed();
    let mut counts = PertinenceCounts::default();
    for (u, v, c) in graph.edges() {
        let (u, v) = (u.index(), v.index());
        if !directed && (d[u], u) > (d[v], v) {
            continue;
        }
        let spt = parent[v] == Some(u) || (!directed && parent[u] == Some(v));
        if let Some(s) = side(c, d[u], d[v], m) {
            counts.add(s, spt);
        }
    }
    Ok(counts)
}

/// Classifies the edges of a sampled instance, drawing non-tree costs from
/// their conditional law. Stops early once `total` reaches `stop_at`.
///
/// Directed: each ordered pair of positions is an edge. Undirected: each
/// unordered pair `i < j` is one edge with cost `d_j - d_i + Exp(1)` unless it
/// is a tree edge.
pub fn sampled_pertinence<R: Rng>(sample: &SptSample, directed: bool, rng: &mut R, stop_at: u64) -> PertinenceCounts {
    let n = sample.n();
    let d = &sample.dist;
    let m = sample.median();
    let mut counts = PertinenceCounts::default();
    for j in 1..n {
        let p = sample.parent_index[j].expect("non-root position has a parent");
        for i in 0..j {
            // Forward in settling order: i -> j.
            let spt = p == i;
            let c = if spt { d[j] - d[i] } else { d[j] - d[i] + rng.sample::<f64, _>(Exp1) };
            if let Some(s) = side(c, d[i], d[j], m) {
                counts.add(s, spt);
            }
            // Backward j -> i is out-pertinent only if d_j < M and
            // in-pertinent only if d_i > M; skip the draw when neither can hold.
            if directed && (d[j] < m || d[i] > m) {
                let c: f64 = rng.sample(Exp1);
                if let Some(s) = side(c, d[j], d[i], m) {
                    counts.add(s, false);
                }
            }
        }
        if counts.total >= stop_at {
            break;
        }
    }
    counts
}

/// Realized Poisson intensities dominating the non-tree pertinent counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PertinenceRates {
    pub lambda_in: f64,
    pub lambda_out: f64,
    pub median: f64,
    dist: Vec<f64>,
}

impl PertinenceRates {
    /// `Y_{i,j} = 2M - d_{v_i} - d_{v_j}` for 0-based positions.
    pub fn y(&self, i: usize, j: usize) -> f64 {
        2.0 * self.median - self.dist[i] - self.dist[j]
    }
}

/// `Lambda_in = 2(n-1) sum_{k > ceil(n/2)} (d_k - M)` and
/// `Lambda_out = 2(n-1) sum_{k < ceil(n/2)} (M - d_k)` from sampled distances.
pub fn pertinence_rates(sample: &SptSample) -> PertinenceRates {
    let n = sample.n();
    let h = n.div_ceil(2);
    let m = sample.median();
    let scale = 2.0 * (n as f64 - 1.0);
    let lambda_in = scale * sample.dist[h..].iter().map(|d| d - m).sum::<f64>();
    let lambda_out = scale * sample.dist[..h - 1].iter().map(|d| m - d).sum::<f64>();
    PertinenceRates { lambda_in, lambda_out, median: m, dist: sample.dist.clone() }
}

/// `Lambda_in` from the increments: `2(n-1) sum_{k=ceil(n/2)}^{n-1} (n-k) X_k`.
pub fn lambda_in_from_increments(sample: &SptSample) -> f64 {
    let n = sample.n();
    let h = n.div_ceil(2);
    let s: f64 = (h..n).map(|k| (n - k) as f64 * sample.increments[k - 1]).sum();
    2.0 * (n as f64 - 1.0) * s
}

/// Stream for the non-tree edge costs of the trial whose sample used `seed`.
pub fn pertinence_rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed ^ 0x5851_f42d_4c95_7f2d)
}

/// Monte-Carlo estimate of `Pr[|E_per| >= multiple * n]` on directed
/// `G_n(Exp(1))`, one sampled instance per trial.
pub fn tail_fraction(n: usize, multiple: f64, trials: usize, seed: u64) -> Result<f64, OracleError> {
    tail_fraction_with(n, multiple, trials, seed, true)
}

/// [`tail_fraction`] for either graph orientation.
pub fn tail_fraction_with(
    n: usize,
    multiple: f64,
    trials: usize,
    seed: u64,
    directed: bool,
) -> Result<f64, OracleError> {
    if trials == 0 {
        return Ok(f64::NAN);
    }
    let threshold = (multiple * n as f64).ceil().max(0.0) as u64;
    let mut hits = 0usize;
    for t in 0..trials {
        let s = derive_seed(seed, t as u64);
        let sample = sample_spt(n, s)?;
        let mut rng = pertinence_rng(s);
        if sampled_pertinence(&sample, directed, &mut rng, threshold).total >= threshold {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}

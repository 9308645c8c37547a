//! All-pairs shortest paths: one forward-backward run per source.
//!
//! Sources run independently on a shared read-only graph and write disjoint
//! rows, so the result does not depend on the thread count or schedule.

use std::io::{Read, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{GraphError, SortedDigraph, WeightKind};
use crate::sssp::{fb_sssp, FbConfig, ScanStats};

const MAGIC: &[u8; 8] = b"APSPDIST";

#[derive(Debug, Error)]
pub enum ApspError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cost matrix has {got} entries, expected {expected}")]
    MatrixSize { expected: usize, got: usize },
    #[error("thread pool: {0}")]
    Threads(String),
    #[error("bad distance dump: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApspConfig {
    /// Queue choice for every source; `None` picks bucket queues sized for the graph.
    pub fb: Option<FbConfig>,
    /// Worker threads; `0` uses rayon's default.
    pub threads: usize,
}

impl Default for ApspConfig {
    fn default() -> Self {
        Self { fb: None, threads: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct ApspResult {
    n: usize,
    /// Row-major `n x n` distances.
    dist: Vec<f64>,
    pub per_source_stats: Vec<ScanStats>,
    pub preprocess_time: Duration,
    pub total_time: Duration,
}

impl ApspResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, s: usize) -> &[f64] {
        &self.dist[s * self.n..(s + 1) * self.n]
    }

    pub fn get(&self, s: usize, t: usize) -> f64 {
        self.dist[s * self.n + t]
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    /// Counters summed over all sources.
    pub fn total_stats(&self) -> ScanStats {
        let mut total = ScanStats::default();
        for s in &self.per_source_stats {
            total.merge(s);
        }
        total
    }
}

/// Runs the forward-backward algorithm from every vertex of `graph`.
pub fn apsp(graph: &SortedDigraph, config: &ApspConfig) -> Result<ApspResult, ApspError> {
    let start = Instant::now();
    let n = graph.n();
    let fb = config.fb.unwrap_or_else(|| FbConfig::bucket(n));
    let mut dist = vec![0.0; n * n];
    let mut per_source_stats = vec![ScanStats::default(); n];
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| ApspError::Threads(e.to_string()))?;
    pool.install(|| {
        dist.par_chunks_mut(n.max(1)).zip(per_source_stats.par_iter_mut()).enumerate().for_each(|(s, (row, stats))| {
            let (tree, st) = fb_sssp(graph, s, &fb);
            row.copy_from_slice(&tree.dist);
            *stats = st;
        });
    });
    Ok(ApspResult { n, dist, per_source_stats, preprocess_time: Duration::ZERO, total_time: start.elapsed() })
}

/// Builds sorted adjacency from a row-major cost matrix (diagonal ignored),
/// bucket sorting by `hint`, then runs [`apsp`]. Undirected input must be
/// symmetric.
pub fn apsp_from_costs(
    n: usize,
    costs: &[f64],
    hint: WeightKind,
    directed: bool,
    config: &ApspConfig,
) -> Result<ApspResult, ApspError> {
    if costs.len() != n * n {
        return Err(ApspError::MatrixSize { expected: n * n, got: costs.len() });
    }
    let start = Instant::now();
    let edges: Vec<(usize, usize, f64)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v, costs[u * n + v]))).collect();
    let graph = SortedDigraph::build_sorted_adjacency(n, &edges, hint, directed)?;
    let preprocess_time = start.elapsed();
    let mut result = apsp(&graph, config)?;
    result.preprocess_time = preprocess_time;
    result.total_time = start.elapsed();
    Ok(result)
}

/// Writes the matrix as `APSPDIST`, `n` as little-endian `u64`, then the
/// rows as little-endian `f64`.
pub fn write_matrix<W: Write>(result: &ApspResult, mut w: W) -> Result<(), ApspError> {
    w.write_all(MAGIC)?;
    w.write_all(&(result.n as u64).to_le_bytes())?;
    for x in &result.dist {
        w.write_all(&x.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a dump written by [`write_matrix`], returning `n` and the rows.
pub fn read_matrix<R: Read>(mut r: R) -> Result<(usize, Vec<f64>), ApspError> {
    let mut header = [0u8; 16];
    r.read_exact(&mut header)?;
    if &header[..8] != MAGIC {
        return Err(ApspError::Format("bad magic".into()));
    }
    let n = u64::from_le_bytes(header[8..].try_into().expect("8 bytes")) as usize;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if Some(bytes.len()) != n.checked_mul(n).and_then(|m| m.checked_mul(8)) {
        return Err(ApspError::Format(format!("{} payload bytes for n = {n}", bytes.len())));
    }
    let dist = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    Ok((n, dist))
}

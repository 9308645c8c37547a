//! Python bindings: graphs, shortest path trees, the three SSSP algorithms,
//! the verifiers, the exponential-graph oracle and all-pairs shortest paths.
//!
//! Counters and reports are returned as plain dicts. Long computations
//! release the interpreter lock.

use fbpaths_core::apsp::{apsp as run_apsp, ApspConfig};
use fbpaths_core::graph::io;
use fbpaths_core::oracle::{self, PertinenceCounts, SptSample};
use fbpaths_core::sssp::{self, check_fb_invariants};
use fbpaths_core::verify::{verify_fb, verify_forward_only, verify_full};
use fbpaths_core::{
    seed, FbConfig, QueueKind, ScanStats, ShortestPathTree, SortedDigraph, VerifyReport, VertexId, WeightKind,
    WeightModel,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn weight_kind(dist: &str, shape: Option<f64>) -> PyResult<WeightKind> {
    let kind = match (dist, shape) {
        ("exp", None) => WeightKind::Exponential,
        ("uniform", None) => WeightKind::Uniform,
        ("weibull", Some(shape)) => WeightKind::Weibull { shape },
        ("weibull", None) => return Err(value_err("dist='weibull' requires shape")),
        ("exp" | "uniform", Some(_)) => return Err(value_err("shape only applies to dist='weibull'")),
        (other, _) => return Err(value_err(format!("unknown dist {other:?}; expected 'exp', 'uniform' or 'weibull'"))),
    };
    kind.validate().map_err(value_err)?;
    Ok(kind)
}

fn queue_kind(pq: &str, n: usize) -> PyResult<QueueKind> {
    match pq {
        "bucket" => Ok(QueueKind::default_bucket(n)),
        "binheap" => Ok(QueueKind::BinaryHeap),
        other => Err(value_err(format!("unknown pq {other:?}; expected 'bucket' or 'binheap'"))),
    }
}

fn check_source(g: &SortedDigraph, source: usize) -> PyResult<()> {
    if source >= g.n() {
        return Err(value_err(format!("source {source} out of range for n = {}", g.n())));
    }
    Ok(())
}

fn stats_dict<'py>(py: Python<'py>, s: &ScanStats) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("forward_scans", s.forward_scans)?;
    d.set_item("backward_scans", s.backward_scans)?;
    d.set_item("p_inserts", s.p_inserts)?;
    d.set_item("p_extracts", s.p_extracts)?;
    d.set_item("q_inserts", s.q_inserts)?;
    d.set_item("q_extracts", s.q_extracts)?;
    d.set_item("requests", s.requests)?;
    d.set_item("urgent_requests", s.urgent_requests)?;
    d.set_item("median", s.median)?;
    d.set_item("size_at_median", s.size_at_median)?;
    Ok(d)
}

fn report_dict<'py>(py: Python<'py>, r: &VerifyReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("accepted", r.accepted)?;
    d.set_item("edges_examined", r.edges_examined)?;
    d.set_item("max_distance", r.max_distance)?;
    d.set_item("median", r.median)?;
    d.set_item("witness", r.witness.map(|w| (w.u, w.v, w.c)))?;
    Ok(d)
}

fn counts_dict<'py>(py: Python<'py>, c: &PertinenceCounts) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("out_spt", c.out_spt)?;
    d.set_item("in_spt", c.in_spt)?;
    d.set_item("out_non_spt", c.out_non_spt)?;
    d.set_item("in_non_spt", c.in_non_spt)?;
    d.set_item("total", c.total)?;
    Ok(d)
}

/// Complete (or explicitly given) digraph with cost-sorted adjacency lists.
#[pyclass(frozen, module = "fbpaths")]
struct Graph {
    inner: SortedDigraph,
}

#[pymethods]
impl Graph {
    /// Complete graph with i.i.d. costs; a pure function of its arguments.
    #[staticmethod]
    #[pyo3(signature = (n, dist = "exp", shape = None, seed = 1, directed = true))]
    fn generate(py: Python<'_>, n: usize, dist: &str, shape: Option<f64>, seed: u64, directed: bool) -> PyResult<Self> {
        let model = WeightModel::new(weight_kind(dist, shape)?, seed);
        let inner = py.detach(|| SortedDigraph::gen_complete(n, &model, directed)).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Graph from `(u, v, cost)` triples. Undirected input lists each edge once.
    #[staticmethod]
    #[pyo3(signature = (n, edges, directed = true))]
    fn from_edges(n: usize, edges: Vec<(usize, usize, f64)>, directed: bool) -> PyResult<Self> {
        let inner =
            SortedDigraph::build_sorted_adjacency(n, &edges, WeightKind::Explicit, directed).map_err(value_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(Self { inner: io::load(path).map_err(value_err)? })
    }

    fn save(&self, path: std::path::PathBuf) -> PyResult<()> {
        io::save(&self.inner, path).map_err(value_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edge_cost(&self, u: usize, v: usize) -> Option<f64> {
        self.inner.edge_cost(u, v)
    }

    /// `(head, cost)` pairs in nondecreasing cost order.
    fn out_edges(&self, u: usize) -> PyResult<Vec<(usize, f64)>> {
        check_source(&self.inner, u)?;
        Ok(self.inner.out_adj(u).iter().map(|(v, c)| (v.index(), c)).collect())
    }

    /// `(tail, cost)` pairs in nondecreasing cost order.
    fn in_edges(&self, v: usize) -> PyResult<Vec<(usize, f64)>> {
        check_source(&self.inner, v)?;
        Ok(self.inner.in_adj(v).iter().map(|(u, c)| (u.index(), c)).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, directed={}, edges={})", self.inner.n(), self.inner.is_directed(), self.inner.edge_count())
    }
}

/// Shortest path tree: parent pointers and distances from `source`.
#[pyclass(frozen, module = "fbpaths")]
struct Tree {
    inner: ShortestPathTree,
}

#[pymethods]
impl Tree {
    /// Candidate tree for verification; distances are recomputed by the verifiers.
    #[new]
    fn new(source: usize, parent: Vec<Option<usize>>) -> PyResult<Self> {
        let n = parent.len();
        if source >= n {
            return Err(value_err(format!("source {source} out of range for n = {n}")));
        }
        if let Some(p) = parent.iter().flatten().find(|&&p| p >= n) {
            return Err(value_err(format!("parent {p} out of range for n = {n}")));
        }
        let parent = parent.into_iter().map(|p| p.map(VertexId::new)).collect();
        Ok(Self { inner: ShortestPathTree { source: VertexId::new(source), parent, dist: vec![0.0; n] } })
    }

    #[getter]
    fn source(&self) -> usize {
        self.inner.source.index()
    }

    #[getter]
    fn parent(&self) -> Vec<Option<usize>> {
        self.inner.parent_indices()
    }

    #[getter]
    fn dist(&self) -> Vec<f64> {
        self.inner.dist.clone()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Tree(n={}, source={})", self.inner.n(), self.inner.source.index())
    }
}

/// Forward-backward SSSP. Returns `(tree, stats)`.
#[pyfunction]
#[pyo3(signature = (graph, source = 0, pq = "bucket"))]
fn fb_sssp<'py>(py: Python<'py>, graph: &Graph, source: usize, pq: &str) -> PyResult<(Tree, Bound<'py, PyDict>)> {
    check_source(&graph.inner, source)?;
    let cfg = FbConfig::uniform(queue_kind(pq, graph.inner.n())?);
    let (tree, stats) = py.detach(|| sssp::fb_sssp(&graph.inner, source, &cfg));
    Ok((Tree { inner: tree }, stats_dict(py, &stats)?))
}

/// Spira's algorithm. Returns `(tree, stats)`.
#[pyfunction]
#[pyo3(signature = (graph, source = 0, pq = "bucket"))]
fn spira<'py>(py: Python<'py>, graph: &Graph, source: usize, pq: &str) -> PyResult<(Tree, Bound<'py, PyDict>)> {
    check_source(&graph.inner, source)?;
    let kind = queue_kind(pq, graph.inner.n())?;
    let (tree, stats) = py.detach(|| sssp::spira(&graph.inner, source, kind));
    Ok((Tree { inner: tree }, stats_dict(py, &stats)?))
}

/// Dijkstra's algorithm. Returns `(tree, stats)`; relaxations count as forward scans.
#[pyfunction]
#[pyo3(signature = (graph, source = 0))]
fn dijkstra<'py>(py: Python<'py>, graph: &Graph, source: usize) -> PyResult<(Tree, Bound<'py, PyDict>)> {
    check_source(&graph.inner, source)?;
    let (tree, stats) = py.detach(|| sssp::dijkstra_counted(&graph.inner, source));
    Ok((Tree { inner: tree }, stats_dict(py, &stats)?))
}

/// Instrumented forward-backward run; raises `RuntimeError` on a broken invariant.
#[pyfunction]
#[pyo3(signature = (graph, source = 0, pq = "bucket"))]
fn check_invariants<'py>(py: Python<'py>, graph: &Graph, source: usize, pq: &str) -> PyResult<Bound<'py, PyDict>> {
    check_source(&graph.inner, source)?;
    let cfg = FbConfig::uniform(queue_kind(pq, graph.inner.n())?);
    let r = py
        .detach(|| check_fb_invariants(&graph.inner, source, &cfg))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let d = stats_dict(py, &r.stats)?;
    d.set_item("p_non_pertinent", r.p_non_pertinent)?;
    d.set_item("q_in_pertinent", r.q_in_pertinent)?;
    d.set_item("q_extra", r.q_extra)?;
    Ok(d)
}

/// Checks `tree` against `graph` with `mode` in `'full'`, `'forward'`, `'fb'`.
/// Malformed trees raise `ValueError`; wrong distances give `accepted=False`.
#[pyfunction]
#[pyo3(signature = (graph, tree, mode = "fb"))]
fn verify<'py>(py: Python<'py>, graph: &Graph, tree: &Tree, mode: &str) -> PyResult<Bound<'py, PyDict>> {
    let f = match mode {
        "full" => verify_full,
        "forward" => verify_forward_only,
        "fb" => verify_fb,
        other => return Err(value_err(format!("unknown mode {other:?}; expected 'full', 'forward' or 'fb'"))),
    };
    let r = py.detach(|| f(&graph.inner, &tree.inner)).map_err(value_err)?;
    report_dict(py, &r)
}

/// Exhaustive pertinence classification of every edge against a valid tree.
#[pyfunction]
fn classify_pertinence<'py>(py: Python<'py>, graph: &Graph, tree: &Tree) -> PyResult<Bound<'py, PyDict>> {
    let c = py.detach(|| oracle::classify_pertinence(&graph.inner, &tree.inner)).map_err(value_err)?;
    counts_dict(py, &c)
}

/// Exact sample of the shortest path tree of the exponential complete graph.
#[pyclass(frozen, module = "fbpaths")]
struct Sample {
    inner: SptSample,
    seed: u64,
}

#[pymethods]
impl Sample {
    #[new]
    #[pyo3(signature = (n, seed = 1))]
    fn new(n: usize, seed: u64) -> PyResult<Self> {
        Ok(Self { inner: oracle::sample_spt(n, seed).map_err(value_err)?, seed })
    }

    /// Vertices in settling order; the source `0` comes first.
    #[getter]
    fn order(&self) -> Vec<usize> {
        self.inner.order.clone()
    }

    /// Parent position of each position.
    #[getter]
    fn parent_index(&self) -> Vec<Option<usize>> {
        self.inner.parent_index.clone()
    }

    /// Distance of each position, nondecreasing.
    #[getter]
    fn dist(&self) -> Vec<f64> {
        self.inner.dist.clone()
    }

    #[getter]
    fn increments(&self) -> Vec<f64> {
        self.inner.increments.clone()
    }

    #[getter]
    fn median(&self) -> f64 {
        self.inner.median()
    }

    fn to_tree(&self) -> Tree {
        Tree { inner: self.inner.to_tree() }
    }

    /// Realized `lambda_in`, `lambda_out` and median.
    fn rates<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = oracle::pertinence_rates(&self.inner);
        let d = PyDict::new(py);
        d.set_item("lambda_in", r.lambda_in)?;
        d.set_item("lambda_out", r.lambda_out)?;
        d.set_item("lambda_in_from_increments", oracle::lambda_in_from_increments(&self.inner))?;
        d.set_item("median", r.median)?;
        Ok(d)
    }

    /// Pertinent edge counts with non-tree costs drawn from their conditional law.
    #[pyo3(signature = (directed = true))]
    fn pertinence<'py>(&self, py: Python<'py>, directed: bool) -> PyResult<Bound<'py, PyDict>> {
        let mut rng = oracle::pertinence_rng(self.seed);
        let c = py.detach(|| oracle::sampled_pertinence(&self.inner, directed, &mut rng, u64::MAX));
        counts_dict(py, &c)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }
}

/// `E[d_{v_k}]` for 1-based position `k` in the exponential complete graph.
#[pyfunction]
fn harmonic_expected_distance(n: usize, k: usize) -> PyResult<f64> {
    oracle::harmonic_expected_distance(n, k).map_err(value_err)
}

/// Fraction of sampled instances with at least `multiple * n` pertinent edges.
#[pyfunction]
#[pyo3(signature = (n, multiple, trials, seed = 1, directed = true))]
fn tail_fraction(py: Python<'_>, n: usize, multiple: f64, trials: usize, seed: u64, directed: bool) -> PyResult<f64> {
    py.detach(|| oracle::tail_fraction_with(n, multiple, trials, seed, directed)).map_err(value_err)
}

/// All-pairs distances as a list of rows, plus summed stats.
#[pyfunction]
#[pyo3(signature = (graph, threads = 1, pq = "bucket"))]
fn apsp<'py>(
    py: Python<'py>,
    graph: &Graph,
    threads: usize,
    pq: &str,
) -> PyResult<(Vec<Vec<f64>>, Bound<'py, PyDict>)> {
    let cfg = ApspConfig { fb: Some(FbConfig::uniform(queue_kind(pq, graph.inner.n())?)), threads };
    let r = py.detach(|| run_apsp(&graph.inner, &cfg)).map_err(value_err)?;
    let rows = (0..r.n()).map(|s| r.row(s).to_vec()).collect();
    Ok((rows, stats_dict(py, &r.total_stats())?))
}

/// Seed of trial `trial` under master seed `master`, as used by the CLI.
#[pyfunction]
fn derive_seed(master: u64, trial: u64) -> u64 {
    seed::derive_seed(master, trial)
}

#[pymodule]
fn fbpaths(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Tree>()?;
    m.add_class::<Sample>()?;
    m.add_function(wrap_pyfunction!(fb_sssp, m)?)?;
    m.add_function(wrap_pyfunction!(spira, m)?)?;
    m.add_function(wrap_pyfunction!(dijkstra, m)?)?;
    m.add_function(wrap_pyfunction!(check_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(classify_pertinence, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_expected_distance, m)?)?;
    m.add_function(wrap_pyfunction!(tail_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(apsp, m)?)?;
    m.add_function(wrap_pyfunction!(derive_seed, m)?)?;
    Ok(())
}

//! Weighted digraphs with cost-sorted outgoing and incoming adjacency.

pub mod io;
mod sort;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seed::edge_uniform;
use sort::BucketSorter;

pub use io::{load, read_graph, save, write_graph};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has invalid cost {cost}")]
    InvalidCost { u: usize, v: usize, cost: f64 },
    #[error("outgoing list of vertex {0} is not sorted by cost")]
    Unsorted(usize),
    #[error("undirected graph has asymmetric edge ({u}, {v})")]
    Asymmetric { u: usize, v: usize },
    #[error("inconsistent adjacency: {0}")]
    Inconsistent(String),
    #[error("malformed graph file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Index of a vertex in `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        debug_assert!(index <= u32::MAX as usize);
        VertexId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Edge cost distribution.
///
/// Every random kind is a monotone transform of an `Exp(1)` variate `X`:
/// `X` itself, `1 - e^{-X}` (uniform on `[0, 1)`), or `X^s` (Weibull).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WeightKind {
    Exponential,
    Uniform,
    Weibull {
        shape: f64,
    },
    /// Costs supplied by the caller; no distribution is known.
    Explicit,
}

impl WeightKind {
    pub fn validate(&self) -> Result<(), GraphError> {
        match *self {
            WeightKind::Weibull { shape } if !(shape.is_finite() && shape > 0.0) => {
                Err(GraphError::InvalidParameter(format!("Weibull shape must be positive, got {shape}")))
            }
            _ => Ok(()),
        }
    }

    /// Maps a uniform variate in `[0, 1)` to a cost.
    #[inline]
    pub fn cost_from_uniform(&self, u: f64) -> f64 {
        let x = -(-u).ln_1p();
        match *self {
            WeightKind::Exponential | WeightKind::Explicit => x,
            WeightKind::Uniform => -(-x).exp_m1(),
            WeightKind::Weibull { shape } => x.powf(shape),
        }
    }

    /// Cumulative distribution function, when the distribution is known.
    pub fn cdf(&self) -> Option<Box<dyn Fn(f64) -> f64>> {
        match *self {
            WeightKind::Exponential => Some(Box::new(|c: f64| -(-c).exp_m1())),
            WeightKind::Uniform => Some(Box::new(|c: f64| c.clamp(0.0, 1.0))),
            WeightKind::Weibull { shape } => {
                let inv = 1.0 / shape;
                Some(Box::new(move |c: f64| -(-c.powf(inv)).exp_m1()))
            }
            WeightKind::Explicit => None,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            WeightKind::Exponential => "exp".into(),
            WeightKind::Uniform => "uniform".into(),
            WeightKind::Weibull { shape } => format!("weibull:{shape}"),
            WeightKind::Explicit => "explicit".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightModel {
    pub kind: WeightKind,
    pub seed: u64,
}

impl WeightModel {
    pub fn new(kind: WeightKind, seed: u64) -> Self {
        Self { kind, seed }
    }

    pub fn exponential(seed: u64) -> Self {
        Self::new(WeightKind::Exponential, seed)
    }

    /// Cost of the directed edge `(u, v)`; symmetric in `u, v` when `directed` is false.
    #[inline]
    pub fn edge_cost(&self, u: usize, v: usize, directed: bool) -> f64 {
        self.kind.cost_from_uniform(self.edge_uniform(u, v, directed))
    }

    #[inline]
    fn edge_uniform(&self, u: usize, v: usize, directed: bool) -> f64 {
        let (a, b) = if directed || u < v { (u, v) } else { (v, u) };
        edge_uniform(self.seed, a as u32, b as u32)
    }
}

/// One direction of adjacency in compressed form.
#[derive(Debug, Clone, PartialEq, Default)]
struct Csr {
    start: Vec<usize>,
    vertex: Vec<u32>,
    cost: Vec<f64>,
}

impl Csr {
    fn list(&self, u: usize) -> Adjacency<'_> {
        let (lo, hi) = (self.start[u], self.start[u + 1]);
        Adjacency { vertex: &self.vertex[lo..hi], cost: &self.cost[lo..hi] }
    }
}

/// A sorted adjacency list: `(other endpoint, cost)` pairs in nondecreasing
/// cost order, ties by ascending endpoint.
#[derive(Debug, Clone, Copy)]
pub struct Adjacency<'a> {
    vertex: &'a [u32],
    cost: &'a [f64],
}

impl<'a> Adjacency<'a> {
    #[inline]
    pub fn len(&self) -> usize {
        self.vertex.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertex.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Option<(VertexId, f64)> {
        Some((VertexId(*self.vertex.get(i)?), self.cost[i]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, f64)> + 'a {
        let cost = self.cost;
        self.vertex.iter().zip(cost).map(|(&v, &c)| (VertexId(v), c))
    }

    pub fn costs(&self) -> &'a [f64] {
        self.cost
    }
}

/// Immutable weighted digraph whose outgoing and incoming lists are both
/// sorted by cost.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedDigraph {
    n: usize,
    directed: bool,
    out: Csr,
    inc: Csr,
}

#[derive(Clone, Copy)]
struct RawEdge {
    u: u32,
    v: u32,
    cost: f64,
}

fn cost_then_vertex(a: &(f64, u32), b: &(f64, u32)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

impl SortedDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Number of directed edges (an undirected edge counts twice).
    pub fn edge_count(&self) -> usize {
        self.out.vertex.len()
    }

    #[inline]
    pub fn out_adj(&self, u: usize) -> Adjacency<'_> {
        self.out.list(u)
    }

    #[inline]
    pub fn in_adj(&self, v: usize) -> Adjacency<'_> {
        self.inc.list(v)
    }

    /// All directed edges in outgoing-list order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        (0..self.n).flat_map(move |u| self.out_adj(u).iter().map(move |(v, c)| (VertexId::new(u), v, c)))
    }

    /// Cheapest cost of an edge `(u, v)`, if present. Linear in the shorter
    /// of the two lists involved.
    pub fn edge_cost(&self, u: usize, v: usize) -> Option<f64> {
        let out = self.out_adj(u);
        let inc = self.in_adj(v);
        if out.len() <= inc.len() {
            out.iter().find(|(w, _)| w.index() == v).map(|(_, c)| c)
        } else {
            inc.iter().find(|(w, _)| w.index() == u).map(|(_, c)| c)
        }
    }

    /// Complete graph with i.i.d. costs drawn from `model`.
    ///
    /// Costs are a pure function of `(seed, u, v)`; the undirected variant
    /// keys each pair by its smaller endpoint first so `c[u,v] = c[v,u]`.
    pub fn gen_complete(n: usize, model: &WeightModel, directed: bool) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        model.kind.validate()?;
        if model.kind == WeightKind::Explicit {
            return Err(GraphError::InvalidParameter("explicit weights cannot be generated".into()));
        }
        if n > u32::MAX as usize {
            return Err(GraphError::InvalidParameter(format!("n = {n} exceeds vertex index range")));
        }
        let deg = n - 1;
        let m = n * deg;
        let start: Vec<usize> = (0..=n).map(|u| u * deg).collect();
        let kind = model.kind;

        // Costs are increasing functions of their uniforms, so the uniform is
        // already the bucket quantile and sorting by it orders by cost.
        let identity = |q: f64| q;
        let mut sorter = BucketSorter::new();
        let mut buf: Vec<(f64, u32)> = Vec::with_capacity(deg);
        let mut build = |uniform_of: &dyn Fn(usize, usize) -> f64| {
            let mut csr = Csr { start: start.clone(), vertex: Vec::with_capacity(m), cost: Vec::with_capacity(m) };
            for u in 0..n {
                buf.clear();
                buf.extend((0..n).filter(|&v| v != u).map(|v| (uniform_of(u, v), v as u32)));
                sorter.sort(&mut buf, |e| e.0, Some(&identity), cost_then_vertex);
                for e in buf.iter_mut() {
                    e.0 = kind.cost_from_uniform(e.0);
                }
                // Distinct uniforms may round to one cost; restore the vertex tie-break.
                if buf.windows(2).any(|w| cost_then_vertex(&w[0], &w[1]) == Ordering::Greater) {
                    buf.sort_unstable_by(cost_then_vertex);
                }
                for &(c, v) in &buf {
                    csr.vertex.push(v);
                    csr.cost.push(c);
                }
            }
            csr
        };
        let out = build(&|u, v| model.edge_uniform(u, v, directed));
        let inc = if directed { build(&|v, u| model.edge_uniform(u, v, directed)) } else { out.clone() };
        Ok(SortedDigraph { n, directed, out, inc })
    }

    /// Builds sorted adjacency from an explicit edge list.
    ///
    /// With a known distribution (`hint` other than `Explicit`) the edges are
    /// bucket sorted into `N = edges.len()` equal-probability buckets and each
    /// bucket is heapsorted; otherwise a comparison sort is used. Either way
    /// the result equals a full comparison sort by `(cost, source, target)`.
    pub fn build_sorted_adjacency(
        n: usize,
        edges: &[(usize, usize, f64)],
        hint: WeightKind,
        directed: bool,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        hint.validate()?;
        let mut raw = Vec::with_capacity(edges.len());
        for &(u, v, cost) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !(cost.is_finite() && cost >= 0.0) {
                return Err(GraphError::InvalidCost { u, v, cost });
            }
            raw.push(RawEdge { u: u as u32, v: v as u32, cost });
        }
        let cdf = hint.cdf();
        BucketSorter::new().sort(
            &mut raw,
            |e| e.cost,
            cdf.as_deref(),
            |a, b| a.cost.total_cmp(&b.cost).then(a.u.cmp(&b.u)).then(a.v.cmp(&b.v)),
        );
        let g = Self::from_globally_sorted(n, directed, &raw);
        if !directed {
            g.check_symmetric()?;
        }
        Ok(g)
    }

    /// Scatters edges sorted by `(cost, u, v)` into both CSR views; each list
    /// inherits the global order.
    fn from_globally_sorted(n: usize, directed: bool, sorted: &[RawEdge]) -> Self {
        let mut out_deg = vec![0usize; n + 1];
        let mut in_deg = vec![0usize; n + 1];
        for e in sorted {
            out_deg[e.u as usize + 1] += 1;
            in_deg[e.v as usize + 1] += 1;
        }
        for i in 0..n {
            out_deg[i + 1] += out_deg[i];
            in_deg[i + 1] += in_deg[i];
        }
        let m = sorted.len();
        let mut out = Csr { start: out_deg.clone(), vertex: vec![0; m], cost: vec![0.0; m] };
        let mut inc = Csr { start: in_deg.clone(), vertex: vec![0; m], cost: vec![0.0; m] };
        for e in sorted {
            let slot = &mut out_deg[e.u as usize];
            out.vertex[*slot] = e.v;
            out.cost[*slot] = e.cost;
            *slot += 1;
            let slot = &mut in_deg[e.v as usize];
            inc.vertex[*slot] = e.u;
            inc.cost[*slot] = e.cost;
            *slot += 1;
        }
        SortedDigraph { n, directed, out, inc }
    }

    /// Builds the incoming view from outgoing lists that are already sorted.
    pub(crate) fn from_sorted_out_lists(
        n: usize,
        directed: bool,
        lists: Vec<Vec<(u32, f64)>>,
    ) -> Result<Self, GraphError> {
        let mut out = Csr { start: Vec::with_capacity(n + 1), ..Default::default() };
        out.start.push(0);
        for (u, list) in lists.iter().enumerate() {
            for w in list.windows(2) {
                if cost_then_vertex(&(w[0].1, w[0].0), &(w[1].1, w[1].0)) == Ordering::Greater {
                    return Err(GraphError::Unsorted(u));
                }
            }
            for &(v, c) in list {
                out.vertex.push(v);
                out.cost.push(c);
            }
            out.start.push(out.vertex.len());
        }
        let mut in_lists: Vec<Vec<(f64, u32)>> = vec![Vec::new(); n];
        for (u, list) in lists.iter().enumerate() {
            for &(v, c) in list {
                in_lists[v as usize].push((c, u as u32));
            }
        }
        let mut inc = Csr {
            start: Vec::with_capacity(n + 1),
            vertex: Vec::with_capacity(out.vertex.len()),
            cost: Vec::with_capacity(out.vertex.len()),
        };
        inc.start.push(0);
        for list in &mut in_lists {
            list.sort_unstable_by(cost_then_vertex);
            for &(c, u) in list.iter() {
                inc.vertex.push(u);
                inc.cost.push(c);
            }
            inc.start.push(inc.vertex.len());
        }
        let g = SortedDigraph { n, directed, out, inc };
        if !directed {
            g.check_symmetric()?;
        }
        Ok(g)
    }

    fn check_symmetric(&self) -> Result<(), GraphError> {
        let mut fwd: Vec<(u32, u32, u64)> = Vec::with_capacity(self.edge_count());
        let mut rev: Vec<(u32, u32, u64)> = Vec::with_capacity(self.edge_count());
        for (u, v, c) in self.edges() {
            fwd.push((u.0, v.0, c.to_bits()));
            rev.push((v.0, u.0, c.to_bits()));
        }
        fwd.sort_unstable();
        rev.sort_unstable();
        match fwd.iter().zip(&rev).find(|(a, b)| a != b) {
            Some((a, _)) => Err(GraphError::Asymmetric { u: a.0 as usize, v: a.1 as usize }),
            None => Ok(()),
        }
    }

    /// Checks every structural invariant: sorted lists in both directions,
    /// the two views describing the same edge multiset, no self-loops, and
    /// finite nonnegative costs.
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        for view in [&self.out, &self.inc] {
            if view.start.len() != self.n + 1 || *view.start.last().unwrap() != view.vertex.len() {
                return Err(GraphError::Inconsistent("bad list offsets".into()));
            }
        }
        if self.out.vertex.len() != self.inc.vertex.len() {
            return Err(GraphError::Inconsistent("views differ in edge count".into()));
        }
        for u in 0..self.n {
            for view in [&self.out, &self.inc] {
                let list = view.list(u);
                for i in 0..list.len() {
                    let (v, c) = list.get(i).unwrap();
                    if v.index() >= self.n {
                        return Err(GraphError::VertexOutOfRange { u, v: v.index(), n: self.n });
                    }
                    if v.index() == u {
                        return Err(GraphError::SelfLoop(u));
                    }
                    if !(c.is_finite() && c >= 0.0) {
                        return Err(GraphError::InvalidCost { u, v: v.index(), cost: c });
                    }
                    if i > 0 {
                        let (pv, pc) = list.get(i - 1).unwrap();
                        if cost_then_vertex(&(pc, pv.0), &(c, v.0)) == Ordering::Greater {
                            return Err(GraphError::Unsorted(u));
                        }
                    }
                }
            }
        }
        // Both views list, per target v, the same (source, cost) pairs.
        let mut from_out: Vec<Vec<(u32, u64)>> = vec![Vec::new(); self.n];
        for (u, v, c) in self.edges() {
            from_out[v.index()].push((u.0, c.to_bits()));
        }
        for (v, expected) in from_out.iter_mut().enumerate() {
            let mut got: Vec<(u32, u64)> = self.in_adj(v).iter().map(|(u, c)| (u.0, c.to_bits())).collect();
            got.sort_unstable();
            expected.sort_unstable();
            if got != *expected {
                return Err(GraphError::Inconsistent(format!(
                    "incoming list of vertex {v} disagrees with outgoing lists"
                )));
            }
        }
        if !self.directed {
            self.check_symmetric()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_has_no_edges() {
        for kind in [WeightKind::Exponential, WeightKind::Uniform, WeightKind::Weibull { shape: 0.5 }] {
            let g = SortedDigraph::gen_complete(1, &WeightModel::new(kind, 1), true).unwrap();
            assert_eq!(g.edge_count(), 0);
            assert!(g.out_adj(0).is_empty());
            g.validate().unwrap();
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let model = WeightModel::exponential(42);
        let a = SortedDigraph::gen_complete(3, &model, true).unwrap();
        let b = SortedDigraph::gen_complete(3, &model, true).unwrap();
        assert_eq!(a.edge_count(), 6);
        assert_eq!(a, b);
        let c = SortedDigraph::gen_complete(3, &WeightModel::exponential(43), true).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_empty_and_bad_shape() {
        assert!(matches!(SortedDigraph::gen_complete(0, &WeightModel::exponential(1), true), Err(GraphError::Empty)));
        for shape in [0.0, -1.0, f64::NAN] {
            let model = WeightModel::new(WeightKind::Weibull { shape }, 1);
            assert!(matches!(SortedDigraph::gen_complete(5, &model, true), Err(GraphError::InvalidParameter(_))));
        }
        let explicit = WeightModel::new(WeightKind::Explicit, 1);
        assert!(SortedDigraph::gen_complete(5, &explicit, true).is_err());
    }

    #[test]
    fn exponential_mean_within_three_standard_errors() {
        let n = 1000;
        let g = SortedDigraph::gen_complete(n, &WeightModel::exponential(2024), true).unwrap();
        let m = g.edge_count() as f64;
        let mean = g.edges().map(|(_, _, c)| c).sum::<f64>() / m;
        // Exp(1) has unit variance.
        let se = 1.0 / m.sqrt();
        assert!((mean - 1.0).abs() < 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn generated_graphs_satisfy_invariants() {
        for directed in [true, false] {
            for kind in [
                WeightKind::Exponential,
                WeightKind::Uniform,
                WeightKind::Weibull { shape: 0.5 },
                WeightKind::Weibull { shape: 2.0 },
            ] {
                let g = SortedDigraph::gen_complete(40, &WeightModel::new(kind, 9), directed).unwrap();
                g.validate().unwrap();
                assert_eq!(g.edge_count(), 40 * 39);
            }
        }
    }

    #[test]
    fn undirected_costs_are_symmetric() {
        let g = SortedDigraph::gen_complete(30, &WeightModel::exponential(5), false).unwrap();
        for u in 0..30 {
            for v in 0..30 {
                if u != v {
                    assert_eq!(g.edge_cost(u, v), g.edge_cost(v, u));
                }
            }
        }
    }

    #[test]
    fn uniform_and_weibull_ranges() {
        let g = SortedDigraph::gen_complete(60, &WeightModel::new(WeightKind::Uniform, 3), true).unwrap();
        assert!(g.edges().all(|(_, _, c)| (0.0..1.0).contains(&c)));
        let mean = g.edges().map(|(_, _, c)| c).sum::<f64>() / g.edge_count() as f64;
        assert!((mean - 0.5).abs() < 0.03);
    }

    #[test]
    fn two_edge_sort() {
        let g =
            SortedDigraph::build_sorted_adjacency(3, &[(0, 1, 2.0), (0, 2, 1.0)], WeightKind::Explicit, true).unwrap();
        let out: Vec<_> = g.out_adj(0).iter().map(|(v, c)| (v.index(), c)).collect();
        assert_eq!(out, vec![(2, 1.0), (1, 2.0)]);
        g.validate().unwrap();
    }

    #[test]
    fn empty_edge_list() {
        let g = SortedDigraph::build_sorted_adjacency(4, &[], WeightKind::Exponential, true).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!((0..4).all(|u| g.out_adj(u).is_empty() && g.in_adj(u).is_empty()));
    }

    #[test]
    fn explicit_ties_broken_by_index() {
        let edges = [(0, 3, 1.0), (0, 1, 1.0), (0, 2, 1.0), (2, 1, 1.0), (3, 1, 0.5)];
        let g = SortedDigraph::build_sorted_adjacency(4, &edges, WeightKind::Explicit, true).unwrap();
        let out: Vec<_> = g.out_adj(0).iter().map(|(v, _)| v.index()).collect();
        assert_eq!(out, vec![1, 2, 3]);
        let inc: Vec<_> = g.in_adj(1).iter().map(|(u, _)| u.index()).collect();
        assert_eq!(inc, vec![3, 0, 2]);
    }

    #[test]
    fn build_rejects_bad_edges() {
        let build = |e: &[(usize, usize, f64)]| SortedDigraph::build_sorted_adjacency(3, e, WeightKind::Explicit, true);
        assert!(matches!(build(&[(0, 3, 1.0)]), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(build(&[(0, 1, -1.0)]), Err(GraphError::InvalidCost { .. })));
        assert!(matches!(build(&[(0, 1, f64::INFINITY)]), Err(GraphError::InvalidCost { .. })));
        assert!(matches!(build(&[(1, 1, 1.0)]), Err(GraphError::SelfLoop(1))));
    }

    #[test]
    fn bucket_sorted_adjacency_equals_comparison_sort() {
        // Oracle: per-vertex comparison sort of the same edge list.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 200;
        let mut edges = Vec::new();
        while edges.len() < 10_000 {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                let x: f64 = rng.random();
                edges.push((u, v, -(-x).ln_1p()));
            }
        }
        let g = SortedDigraph::build_sorted_adjacency(n, &edges, WeightKind::Exponential, true).unwrap();
        let reference = SortedDigraph::build_sorted_adjacency(n, &edges, WeightKind::Explicit, true).unwrap();
        assert_eq!(g, reference);
        for u in 0..n {
            let mut expected: Vec<(u32, u64)> =
                edges.iter().filter(|e| e.0 == u).map(|e| (e.1 as u32, e.2.to_bits())).collect();
            expected.sort_by(|a, b| f64::from_bits(a.1).total_cmp(&f64::from_bits(b.1)).then(a.0.cmp(&b.0)));
            let got: Vec<(u32, u64)> = g.out_adj(u).iter().map(|(v, c)| (v.0, c.to_bits())).collect();
            assert_eq!(got, expected);
        }
        g.validate().unwrap();
    }

    #[test]
    fn generated_lists_match_comparison_sort() {
        let model = WeightModel::new(WeightKind::Weibull { shape: 0.5 }, 77);
        let n = 120;
        let g = SortedDigraph::gen_complete(n, &model, true).unwrap();
        for u in 0..n {
            let mut expected: Vec<(f64, u32)> =
                (0..n).filter(|&v| v != u).map(|v| (model.edge_cost(u, v, true), v as u32)).collect();
            expected.sort_by(cost_then_vertex);
            let got: Vec<(f64, u32)> = g.out_adj(u).iter().map(|(v, c)| (c, v.0)).collect();
            assert_eq!(got, expected);
        }
    }
}

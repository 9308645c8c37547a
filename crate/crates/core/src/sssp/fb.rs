use serde::{Deserialize, Serialize};

use super::{check_source, FbConfig, ScanStats, ShortestPathTree, NO_PARENT};
use crate::graph::SortedDigraph;
use crate::pq::{MonotoneQueue, QueueOp, Recorder};

/// Hooks called at every queue and request event of a forward-backward run.
pub(crate) trait Observer {
    fn p_insert(&mut self, _u: u32, _v: u32, _c: f64) {}
    fn p_extract(&mut self, _u: u32, _v: u32) {}
    fn q_insert(&mut self, _u: u32, _v: u32, _c: f64) {}
    fn q_extract(&mut self, _u: u32, _v: u32) {}
    fn request(&mut self, _u: u32, _v: u32, _c: f64) {}
}

pub(crate) struct NoObserver;

impl Observer for NoObserver {}

/// State of one forward-backward run.
///
/// `S` is the set of vertices with finite `d`. `out_open[u]` is false once
/// `u`'s outgoing list is exhausted or its next edge is not out-pertinent;
/// from then on `u` is served from its request list. `active[u]` holds iff
/// `u` has an edge in `P`.
pub(crate) struct Engine<'g, P, Q, O> {
    g: &'g SortedDigraph,
    d: Vec<f64>,
    parent: Vec<u32>,
    out_open: Vec<bool>,
    active: Vec<bool>,
    out_cursor: Vec<u32>,
    in_cursor: Vec<u32>,
    req: Vec<Vec<(u32, f64)>>,
    req_cursor: Vec<u32>,
    m: f64,
    size: usize,
    pub(crate) p: P,
    pub(crate) q: Q,
    pub(crate) obs: O,
    stats: ScanStats,
}

impl<'g, P, Q, O> Engine<'g, P, Q, O>
where
    P: MonotoneQueue<(u32, u32)>,
    Q: MonotoneQueue<(u32, u32)>,
    O: Observer,
{
    pub(crate) fn new(g: &'g SortedDigraph, p: P, q: Q, obs: O) -> Self {
        let n = g.n();
        Self {
            g,
            d: vec![f64::INFINITY; n],
            parent: vec![NO_PARENT; n],
            out_open: vec![true; n],
            active: vec![false; n],
            out_cursor: vec![0; n],
            in_cursor: vec![0; n],
            req: vec![Vec::new(); n],
            req_cursor: vec![0; n],
            m: f64::INFINITY,
            size: 0,
            p,
            q,
            obs,
            stats: ScanStats::default(),
        }
    }

    fn forward(&mut self, u: usize) {
        let du = self.d[u];
        let mut next = None;
        if self.out_open[u] {
            match self.g.out_adj(u).get(self.out_cursor[u] as usize) {
                Some((v, c)) => {
                    self.out_cursor[u] += 1;
                    self.stats.forward_scans += 1;
                    // In stage one M is infinite and every edge passes.
                    if self.m == f64::INFINITY || c <= 2.0 * (self.m - du) {
                        next = Some((v.index() as u32, c));
                    } else {
                        self.out_open[u] = false;
                    }
                }
                None => self.out_open[u] = false,
            }
        }
        if !self.out_open[u] {
            let i = self.req_cursor[u] as usize;
            if let Some(&e) = self.req[u].get(i) {
                self.req_cursor[u] += 1;
                next = Some(e);
            }
        }
        self.active[u] = next.is_some();
        if let Some((v, c)) = next {
            self.stats.p_inserts += 1;
            self.obs.p_insert(u as u32, v, c);
            self.p.insert((u as u32, v), du + c);
        }
    }

    fn backward(&mut self, v: usize) {
        if let Some((u, c)) = self.g.in_adj(v).get(self.in_cursor[v] as usize) {
            self.in_cursor[v] += 1;
            self.stats.backward_scans += 1;
            self.stats.q_inserts += 1;
            let u = u.index() as u32;
            self.obs.q_insert(u, v as u32, c);
            self.q.insert((u, v as u32), c);
        }
    }

    fn request(&mut self, u: usize, v: usize, c: f64) {
        self.req[u].push((v as u32, c));
        self.stats.requests += 1;
        self.obs.request(u as u32, v as u32, c);
        if self.d[u] < f64::INFINITY && !self.active[u] {
            self.stats.urgent_requests += 1;
            self.forward(u);
        }
    }

    fn settle_median(&mut self, v: usize) {
        if self.size != self.g.n().div_ceil(2) {
            return;
        }
        self.m = self.d[v];
        self.stats.median = Some(self.m);
        self.stats.size_at_median = self.size as u64;
        for w in 0..self.g.n() {
            if self.d[w] == f64::INFINITY {
                self.backward(w);
            }
        }
    }

    pub(crate) fn run(mut self, source: usize) -> (ShortestPathTree, ScanStats, P, Q, O) {
        let n = self.g.n();
        self.d[source] = 0.0;
        self.size = 1;
        self.forward(source);
        // For n <= 2 the source alone reaches the median size.
        self.settle_median(source);

        while self.size < n {
            let Some(((u, v), key)) = self.p.extract_min() else { break };
            self.stats.p_extracts += 1;
            self.obs.p_extract(u, v);
            self.forward(u as usize);
            let v = v as usize;
            if self.d[v] == f64::INFINITY {
                self.d[v] = key;
                self.parent[v] = u;
                self.size += 1;
                self.forward(v);
                self.settle_median(v);
            }
            while !self.q.is_empty() && self.q.min_key() < 2.0 * (self.p.min_key() - self.m) {
                let ((u, v), c) = self.q.extract_min().expect("queue is non-empty");
                self.stats.q_extracts += 1;
                self.obs.q_extract(u, v);
                let (u, v) = (u as usize, v as usize);
                if self.d[v] == f64::INFINITY {
                    self.backward(v);
                    self.request(u, v, c);
                }
            }
        }
        self.stats.p_queue = self.p.stats();
        self.stats.q_queue = self.q.stats();
        let tree = ShortestPathTree::from_raw(source, self.parent, self.d);
        (tree, self.stats, self.p, self.q, self.obs)
    }
}

/// Runs the forward-backward algorithm from `source`.
pub fn fb_sssp(graph: &SortedDigraph, source: usize, config: &FbConfig) -> (ShortestPathTree, ScanStats) {
    check_source(graph, source);
    let engine = Engine::new(graph, config.p_queue.build(), config.q_queue.build(), NoObserver);
    let (tree, stats, ..) = engine.run(source);
    (tree, stats)
}

/// Operation traces of the two queues of one forward-backward run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FbTrace {
    pub p: Vec<QueueOp>,
    pub q: Vec<QueueOp>,
}

/// Runs the forward-backward algorithm and records both queue traces.
pub fn record_trace(graph: &SortedDigraph, source: usize, config: &FbConfig) -> (ShortestPathTree, ScanStats, FbTrace) {
    check_source(graph, source);
    let p = Recorder::new(config.p_queue.build());
    let q = Recorder::new(config.q_queue.build());
    let (tree, stats, p, q, _) = Engine::new(graph, p, q, NoObserver).run(source);
    let trace = FbTrace { p: p.into_ops(), q: q.into_ops() };
    (tree, stats, trace)
}

/// Queue traces of a run with the default bucket queues.
pub fn replay_trace(graph: &SortedDigraph, source: usize) -> FbTrace {
    record_trace(graph, source, &FbConfig::bucket(graph.n())).2
}

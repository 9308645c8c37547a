use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::{check_source, ScanStats, ShortestPathTree, NO_PARENT};
use crate::graph::SortedDigraph;

#[derive(PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Textbook Dijkstra with lazy deletion; the reference for every other
/// algorithm in the crate.
pub fn dijkstra(graph: &SortedDigraph, source: usize) -> ShortestPathTree {
    dijkstra_counted(graph, source).0
}

/// Dijkstra that also reports relaxations (`forward_scans`) and heap traffic.
pub fn dijkstra_counted(graph: &SortedDigraph, source: usize) -> (ShortestPathTree, ScanStats) {
    check_source(graph, source);
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![NO_PARENT; n];
    let mut done = vec![false; n];
    let mut stats = ScanStats::default();
    let mut heap = BinaryHeap::new();

    dist[source] = 0.0;
    heap.push((Reverse(Dist(0.0)), source as u32));
    stats.p_inserts += 1;
    while let Some((Reverse(Dist(du)), u)) = heap.pop() {
        stats.p_extracts += 1;
        let u = u as usize;
        if done[u] {
            continue;
        }
        done[u] = true;
        for (v, c) in graph.out_adj(u).iter() {
            stats.forward_scans += 1;
            let v = v.index();
            let alt = du + c;
            if alt < dist[v] {
                dist[v] = alt;
                parent[v] = u as u32;
                heap.push((Reverse(Dist(alt)), v as u32));
                stats.p_inserts += 1;
            }
        }
    }
    (ShortestPathTree::from_raw(source, parent, dist), stats)
}

use super::{check_source, ScanStats, ShortestPathTree, NO_PARENT};
use crate::graph::SortedDigraph;
use crate::pq::{MonotoneQueue, QueueKind};

/// Spira's algorithm: the queue holds edges keyed by `d[u] + c[u,v]`, and
/// each vertex has exactly one outgoing edge in the queue at a time.
pub fn spira(graph: &SortedDigraph, source: usize, queue: QueueKind) -> (ShortestPathTree, ScanStats) {
    check_source(graph, source);
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![NO_PARENT; n];
    let mut cursor = vec![0u32; n];
    let mut stats = ScanStats::default();
    let mut p = queue.build::<(u32, u32)>();

    let mut forward = |u: usize, dist: &[f64], p: &mut dyn MonotoneQueue<(u32, u32)>, stats: &mut ScanStats| {
        if let Some((v, c)) = graph.out_adj(u).get(cursor[u] as usize) {
            cursor[u] += 1;
            stats.forward_scans += 1;
            stats.p_inserts += 1;
            p.insert((u as u32, v.index() as u32), dist[u] + c);
        }
    };

    dist[source] = 0.0;
    let mut settled = 1;
    forward(source, &dist, &mut p, &mut stats);
    while settled < n {
        let Some(((u, v), key)) = p.extract_min() else { break };
        stats.p_extracts += 1;
        forward(u as usize, &dist, &mut p, &mut stats);
        let v = v as usize;
        if dist[v] == f64::INFINITY {
            dist[v] = key;
            parent[v] = u;
            settled += 1;
            forward(v, &dist, &mut p, &mut stats);
        }
    }
    stats.p_queue = p.stats();
    (ShortestPathTree::from_raw(source, parent, dist), stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{WeightKind, WeightModel};
    use crate::pq::BucketQueueConfig;
    use crate::sssp::test_graphs::*;
    use crate::sssp::{dijkstra, same_distances};

    #[test]
    fn triangle_matches_dijkstra() {
        let (t, _) = spira(&triangle(), 0, QueueKind::BinaryHeap);
        assert_eq!(t.dist, dijkstra(&triangle(), 0).dist);
    }

    #[test]
    fn two_vertices_single_extraction() {
        let g = SortedDigraph::build_sorted_adjacency(2, &[(0, 1, 0.7)], WeightKind::Explicit, true).unwrap();
        let (t, s) = spira(&g, 0, QueueKind::BinaryHeap);
        assert_eq!(t.dist, vec![0.0, 0.7]);
        assert_eq!(s.p_extracts, 1);
    }

    #[test]
    fn unreachable_and_random_graphs() {
        let g = with_unreachable();
        let (t, _) = spira(&g, 0, QueueKind::BinaryHeap);
        assert!(same_distances(&t, &dijkstra(&g, 0).dist, 0.0));
        for seed in 0..10 {
            let g = SortedDigraph::gen_complete(60, &WeightModel::exponential(seed), true).unwrap();
            let reference = dijkstra(&g, 3).dist;
            for kind in [QueueKind::BinaryHeap, QueueKind::Bucket(BucketQueueConfig::for_graph_size(60))] {
                let (t, _) = spira(&g, 3, kind);
                assert!(same_distances(&t, &reference, 1e-12));
            }
        }
    }
}

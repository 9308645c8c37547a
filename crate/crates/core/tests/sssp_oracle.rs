//! Every SSSP algorithm and queue combination against Dijkstra.

mod common;

use fbpaths::graph::io;
use fbpaths::pq::{replay, BinaryHeapQueue, BucketQueue, QueueOp};
use fbpaths::sssp::{check_fb_invariants, dijkstra, fb_sssp, record_trace, same_distances, spira};
use fbpaths::{BucketQueueConfig, FbConfig, QueueKind, SortedDigraph, WeightKind, WeightModel};
use proptest::prelude::*;

fn kinds() -> impl Strategy<Value = WeightKind> {
    prop_oneof![
        Just(WeightKind::Exponential),
        Just(WeightKind::Uniform),
        (0.2f64..3.0).prop_map(|shape| WeightKind::Weibull { shape }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn all_algorithms_agree_with_dijkstra(
        seed in any::<u64>(),
        n in 1usize..160,
        directed in any::<bool>(),
        kind in kinds(),
        source_pick in any::<usize>(),
    ) {
        let g = SortedDigraph::gen_complete(n, &WeightModel::new(kind, seed), directed).unwrap();
        let s = source_pick % n;
        let reference = dijkstra(&g, s).dist;
        for cfg in [FbConfig::bucket(n), FbConfig::binary_heap()] {
            let (t, _) = fb_sssp(&g, s, &cfg);
            prop_assert!(same_distances(&t, &reference, 1e-9));
        }
        let (t, _) = spira(&g, s, QueueKind::default_bucket(n));
        prop_assert!(same_distances(&t, &reference, 1e-9));
    }

    #[test]
    fn invariants_hold(seed in any::<u64>(), n in 1usize..200, directed in any::<bool>(), kind in kinds()) {
        let g = SortedDigraph::gen_complete(n, &WeightModel::new(kind, seed), directed).unwrap();
        let r = check_fb_invariants(&g, 0, &FbConfig::bucket(n));
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn bucket_geometry_does_not_change_results(seed in any::<u64>(), buckets in 1usize..300, width in 1e-5f64..0.5) {
        let g = SortedDigraph::gen_complete(120, &WeightModel::exponential(seed), true).unwrap();
        let cfg = FbConfig::uniform(QueueKind::Bucket(BucketQueueConfig::new(buckets, width).unwrap()));
        let (t, _) = fb_sssp(&g, 0, &cfg);
        prop_assert!(same_distances(&t, &dijkstra(&g, 0).dist, 1e-9));
    }
}

#[test]
fn sparse_graphs_with_unreachable_vertices() {
    use rand::Rng;
    for seed in 0..40u64 {
        let mut rng = fbpaths::seed::stream_rng(seed);
        let n = rng.random_range(2..60);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(0.06) {
                    edges.push((u, v, rng.random::<f64>()));
                }
            }
        }
        let g = SortedDigraph::build_sorted_adjacency(n, &edges, WeightKind::Uniform, true).unwrap();
        let reference = dijkstra(&g, 0).dist;
        let (t, _) = fb_sssp(&g, 0, &FbConfig::bucket(n));
        assert!(same_distances(&t, &reference, 1e-9), "seed {seed}");
        check_fb_invariants(&g, 0, &FbConfig::binary_heap()).unwrap();
        let (t, _) = spira(&g, 0, QueueKind::BinaryHeap);
        assert!(same_distances(&t, &reference, 1e-9));
    }
}

#[test]
fn loaded_graph_behaves_like_generated() {
    let g = SortedDigraph::gen_complete(80, &WeightModel::exponential(77), true).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    io::save(&g, &path).unwrap();
    let h = io::load(&path).unwrap();
    assert_eq!(fb_sssp(&g, 4, &FbConfig::bucket(80)), fb_sssp(&h, 4, &FbConfig::bucket(80)));
}

#[test]
fn runs_are_deterministic() {
    let g = SortedDigraph::gen_complete(500, &WeightModel::exponential(3), true).unwrap();
    let a = fb_sssp(&g, 0, &FbConfig::bucket(500));
    let b = fb_sssp(&g, 0, &FbConfig::bucket(500));
    assert_eq!(a, b);
}

#[test]
fn heap_and_bucket_runs_extract_the_same_keys() {
    let g = SortedDigraph::gen_complete(400, &WeightModel::exponential(12), true).unwrap();
    let (_, _, bucket) = record_trace(&g, 0, &FbConfig::bucket(400));
    let (_, _, heap) = record_trace(&g, 0, &FbConfig::binary_heap());
    let keys = |ops: &[QueueOp]| -> Vec<f64> {
        ops.iter().filter_map(|o| if let QueueOp::Extract { key } = o { Some(*key) } else { None }).collect()
    };
    assert_eq!(keys(&bucket.p), keys(&heap.p));
    assert_eq!(keys(&bucket.q), keys(&heap.q));
    let replayed = replay(&heap.p, &mut BucketQueue::new(BucketQueueConfig::for_graph_size(400))).unwrap();
    assert_eq!(replayed, keys(&heap.p));
    assert_eq!(replay(&bucket.q, &mut BinaryHeapQueue::new()).unwrap(), keys(&bucket.q));
}

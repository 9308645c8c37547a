//! Monotone priority queues.
//!
//! A monotone queue may assume that no key smaller than the last extracted
//! key is ever inserted. Both implementations here support `insert`, `min`
//! and `extract_min`; there is no decrease-key.

mod bucket;
mod heap;
mod trace;

use serde::{Deserialize, Serialize};

pub use bucket::{BucketQueue, BucketQueueConfig};
pub use heap::BinaryHeapQueue;
pub use trace::{replay, QueueOp, Recorder};

/// Counters kept by every queue.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueueStats {
    pub inserts: u64,
    pub extracts: u64,
    /// Largest heap observed: a sub-bucket for the bucket queue, the whole
    /// heap for the binary-heap queue.
    pub max_subbucket_size: u64,
    pub splits: u64,
    pub heap_comparisons: u64,
    /// Items inserted into a top-level bucket that was already active.
    pub late_inserts: u64,
}

pub trait MonotoneQueue<T> {
    fn insert(&mut self, item: T, key: f64);

    /// Smallest key present, or `+inf` when empty.
    ///
    /// Takes `&mut self` because bucket queues may skip empty buckets while
    /// locating the minimum.
    fn min_key(&mut self) -> f64;

    fn extract_min(&mut self) -> Option<(T, f64)>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn stats(&self) -> QueueStats;
}

/// Which queue implementation to build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum QueueKind {
    BinaryHeap,
    Bucket(BucketQueueConfig),
}

impl QueueKind {
    /// Bucket queue with the default geometry for an `n`-vertex graph.
    pub fn default_bucket(n: usize) -> Self {
        QueueKind::Bucket(BucketQueueConfig::for_graph_size(n))
    }

    pub fn build<T>(&self) -> AnyQueue<T> {
        match *self {
            QueueKind::BinaryHeap => AnyQueue::Heap(BinaryHeapQueue::new()),
            QueueKind::Bucket(cfg) => AnyQueue::Bucket(BucketQueue::new(cfg)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            QueueKind::BinaryHeap => "binheap",
            QueueKind::Bucket(_) => "bucket",
        }
    }
}

/// Runtime-selected queue.
#[derive(Debug, Clone)]
pub enum AnyQueue<T> {
    Heap(BinaryHeapQueue<T>),
    Bucket(BucketQueue<T>),
}

impl<T> MonotoneQueue<T> for AnyQueue<T> {
    #[inline]
    fn insert(&mut self, item: T, key: f64) {
        match self {
            AnyQueue::Heap(q) => q.insert(item, key),
            AnyQueue::Bucket(q) => q.insert(item, key),
        }
    }

    #[inline]
    fn min_key(&mut self) -> f64 {
        match self {
            AnyQueue::Heap(q) => q.min_key(),
            AnyQueue::Bucket(q) => q.min_key(),
        }
    }

    #[inline]
    fn extract_min(&mut self) -> Option<(T, f64)> {
        match self {
            AnyQueue::Heap(q) => q.extract_min(),
            AnyQueue::Bucket(q) => q.extract_min(),
        }
    }

    #[inline]
    fn len(&self) -> usize {
        match self {
            AnyQueue::Heap(q) => q.len(),
            AnyQueue::Bucket(q) => q.len(),
        }
    }

    fn stats(&self) -> QueueStats {
        match self {
            AnyQueue::Heap(q) => q.stats(),
            AnyQueue::Bucket(q) => q.stats(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn drain<Q: MonotoneQueue<u32>>(q: &mut Q) -> Vec<f64> {
        std::iter::from_fn(|| q.extract_min().map(|e| e.1)).collect()
    }

    #[test]
    fn min_of_small_sets() {
        for kind in [QueueKind::BinaryHeap, QueueKind::Bucket(BucketQueueConfig::new(4, 1.0).unwrap())] {
            let mut q = kind.build::<u32>();
            assert_eq!(q.min_key(), f64::INFINITY);
            assert!(q.extract_min().is_none());
            q.insert(0, 3.2);
            q.insert(1, 1.1);
            q.insert(2, 1.1);
            assert_eq!(q.min_key(), 1.1);
            assert_eq!(q.extract_min().unwrap().1, 1.1);

            let mut q = kind.build::<u32>();
            q.insert(0, 2.0);
            q.insert(1, 5.0);
            let m = q.min_key();
            assert_eq!(m, 2.0);
            assert_eq!(q.extract_min().unwrap().1, m);
        }
    }

    /// Random monotone trace: each insert draws a key at or above the last
    /// extracted key. Returns the extraction keys of both queues.
    fn run_trace(seed: u64, ops: usize, cfg: BucketQueueConfig) -> (Vec<f64>, Vec<f64>) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut heap = BinaryHeapQueue::new();
        let mut bucket = BucketQueue::new(cfg);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut floor = 0.0f64;
        for i in 0..ops {
            if heap.is_empty() || rng.random_bool(0.55) {
                let key = floor + rng.random::<f64>() * 0.05 * rng.random::<f64>();
                heap.insert(i as u32, key);
                bucket.insert(i as u32, key);
            } else {
                assert_eq!(heap.min_key(), bucket.min_key());
                let x = heap.extract_min().unwrap().1;
                let y = bucket.extract_min().unwrap().1;
                floor = x;
                a.push(x);
                b.push(y);
            }
            assert_eq!(heap.len(), bucket.len());
        }
        a.extend(drain(&mut heap));
        b.extend(drain(&mut bucket));
        (a, b)
    }

    #[test]
    fn bucket_matches_binary_heap_on_long_trace() {
        let (a, b) = run_trace(99, 10_000, BucketQueueConfig::new(1000, 1.0 / (1000.0 * 1000f64.ln())).unwrap());
        assert_eq!(a.len(), b.len());
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] <= w[1]));
    }

    proptest! {
        #[test]
        fn trace_equivalence(seed in any::<u64>(), buckets in 1usize..64, width in 1e-4f64..0.1) {
            let (a, b) = run_trace(seed, 600, BucketQueueConfig::new(buckets, width).unwrap());
            prop_assert_eq!(&a, &b);
            prop_assert!(b.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn no_item_lost(keys in proptest::collection::vec(0.0f64..10.0, 0..200)) {
            let mut q = BucketQueue::new(BucketQueueConfig::new(5, 0.7).unwrap());
            for (i, &k) in keys.iter().enumerate() {
                q.insert(i as u32, k);
            }
            let mut seen: Vec<u32> = std::iter::from_fn(|| q.extract_min().map(|e| e.0)).collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..keys.len() as u32).collect::<Vec<_>>());
            let s = q.stats();
            prop_assert_eq!(s.inserts, s.extracts);
        }
    }
}

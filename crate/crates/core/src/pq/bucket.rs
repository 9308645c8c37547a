use serde::{Deserialize, Serialize};

use super::heap::KeyedHeap;
use super::{MonotoneQueue, QueueStats};

/// Geometry of the top level: `buckets` buckets of width `width`; bucket `i`
/// covers `[i * width, (i + 1) * width)` and the last bucket also takes every
/// larger key.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BucketQueueConfig {
    pub buckets: usize,
    pub width: f64,
}

impl BucketQueueConfig {
    pub fn new(buckets: usize, width: f64) -> Result<Self, String> {
        if buckets == 0 {
            return Err("bucket count must be at least 1".into());
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(format!("bucket width must be positive and finite, got {width}"));
        }
        Ok(Self { buckets, width })
    }

    /// `B = n` buckets of width `W = 1 / (n ln n)`.
    ///
    /// For `n < 3` the logarithm is below one and the geometry is
    /// meaningless; a single unit-width bucket is used instead.
    pub fn for_graph_size(n: usize) -> Self {
        if n < 3 {
            return Self { buckets: n.max(1), width: 1.0 };
        }
        let nf = n as f64;
        Self { buckets: n, width: 1.0 / (nf * nf.ln()) }
    }
}

/// Two-level bucket queue for monotone use.
///
/// Top-level buckets are unsorted append-only vectors until they become
/// active. A bucket holding `b` items on activation is split evenly into `b`
/// sub-buckets, each a binary heap; the overflow bucket becomes one heap.
/// Items inserted into the bucket while it is active go straight into the
/// matching sub-bucket.
#[derive(Debug, Clone)]
pub struct BucketQueue<T> {
    config: BucketQueueConfig,
    buckets: Vec<Vec<(f64, T)>>,
    active: usize,
    activated: bool,
    subs: Vec<KeyedHeap<T>>,
    spare: Vec<KeyedHeap<T>>,
    cursor: usize,
    active_len: usize,
    len: usize,
    last_extracted: f64,
    stats: QueueStats,
}

impl<T> BucketQueue<T> {
    pub fn new(config: BucketQueueConfig) -> Self {
        let mut buckets = Vec::with_capacity(config.buckets);
        buckets.resize_with(config.buckets, Vec::new);
        Self {
            config,
            buckets,
            active: 0,
            activated: false,
            subs: Vec::new(),
            spare: Vec::new(),
            cursor: 0,
            active_len: 0,
            len: 0,
            last_extracted: 0.0,
            stats: QueueStats::default(),
        }
    }

    pub fn config(&self) -> BucketQueueConfig {
        self.config
    }

    /// Index of the active top-level bucket.
    pub fn active_bucket(&self) -> usize {
        self.active
    }

    fn top_index(&self, key: f64) -> usize {
        // `as` saturates, so huge keys land past the end and get clamped.
        ((key / self.config.width) as usize).min(self.config.buckets - 1)
    }

    fn sub_index(&self, key: f64) -> usize {
        let b = self.subs.len();
        if b == 1 {
            return 0;
        }
        let lo = self.active as f64 * self.config.width;
        let scaled = (key - lo) * b as f64 / self.config.width;
        let idx = if scaled > 0.0 { (scaled as usize).min(b - 1) } else { 0 };
        idx.max(self.cursor)
    }

    fn insert_into_active(&mut self, key: f64, item: T) {
        if self.subs.is_empty() {
            let heap = self.spare.pop().unwrap_or_default();
            self.subs.push(heap);
        }
        let s = self.sub_index(key);
        self.subs[s].push(key, item, &mut self.stats.heap_comparisons);
        self.active_len += 1;
        self.stats.max_subbucket_size = self.stats.max_subbucket_size.max(self.subs[s].len() as u64);
    }

    fn activate(&mut self) {
        self.spare.append(&mut self.subs);
        let items = std::mem::take(&mut self.buckets[self.active]);
        self.activated = true;
        self.cursor = 0;
        self.active_len = 0;
        let b = items.len();
        if b == 0 {
            return;
        }
        let parts = if self.active == self.config.buckets - 1 { 1 } else { b };
        for _ in 0..parts {
            let heap = self.spare.pop().unwrap_or_default();
            self.subs.push(heap);
        }
        if parts > 1 {
            self.stats.splits += 1;
        }
        for (key, item) in items {
            let s = self.sub_index(key);
            self.subs[s].push(key, item, &mut self.stats.heap_comparisons);
        }
        self.active_len = b;
        let largest = self.subs.iter().map(KeyedHeap::len).max().unwrap_or(0);
        self.stats.max_subbucket_size = self.stats.max_subbucket_size.max(largest as u64);
    }

    /// Advances to the sub-bucket holding the global minimum. Returns false
    /// when the queue is empty.
    fn locate(&mut self) -> bool {
        if self.len == 0 {
            return false;
        }
        loop {
            if self.activated && self.active_len > 0 {
                while self.subs[self.cursor].is_empty() {
                    self.cursor += 1;
                }
                return true;
            }
            if self.activated {
                self.active += 1;
                debug_assert!(self.active < self.config.buckets, "nonempty queue ran out of buckets");
            }
            self.activate();
        }
    }
}

impl<T> MonotoneQueue<T> for BucketQueue<T> {
    fn insert(&mut self, item: T, key: f64) {
        debug_assert!(
            key >= self.last_extracted - 1e-9 * self.last_extracted.abs().max(1e-12),
            "monotone contract violated: insert {key} after extracting {}",
            self.last_extracted
        );
        self.stats.inserts += 1;
        self.len += 1;
        let b = self.top_index(key).max(self.active);
        if b == self.active && self.activated {
            self.stats.late_inserts += 1;
            self.insert_into_active(key, item);
        } else {
            self.buckets[b].push((key, item));
        }
    }

    fn min_key(&mut self) -> f64 {
        if self.locate() {
            self.subs[self.cursor].peek_key().unwrap()
        } else {
            f64::INFINITY
        }
    }

    fn extract_min(&mut self) -> Option<(T, f64)> {
        if !self.locate() {
            return None;
        }
        let (key, item) = self.subs[self.cursor].pop(&mut self.stats.heap_comparisons).unwrap();
        self.active_len -= 1;
        self.len -= 1;
        self.stats.extracts += 1;
        self.last_extracted = key;
        Some((item, key))
    }

    fn len(&self) -> usize {
        self.len
    }

    fn stats(&self) -> QueueStats {
        self.stats
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(b: usize, w: f64) -> BucketQueueConfig {
        BucketQueueConfig::new(b, w).unwrap()
    }

    #[test]
    fn zero_key_goes_to_first_bucket() {
        let mut q = BucketQueue::new(cfg(4, 1.0));
        q.insert('a', 0.0);
        assert_eq!(q.top_index(0.0), 0);
        assert_eq!(q.buckets[0].len(), 1);
        assert_eq!(q.extract_min(), Some(('a', 0.0)));
    }

    #[test]
    fn overflow_key_clamps_to_last_bucket() {
        let mut q = BucketQueue::new(cfg(4, 1.0));
        q.insert('a', 7.5);
        assert_eq!(q.buckets[3].len(), 1);
        q.insert('b', 1e300);
        assert_eq!(q.buckets[3].len(), 2);
        assert_eq!(q.extract_min(), Some(('a', 7.5)));
        assert_eq!(q.active_bucket(), 3);
        // Last bucket is a single heap, not split.
        assert_eq!(q.subs.len(), 1);
        assert_eq!(q.stats().splits, 0);
        q.insert('c', 9.0);
        assert_eq!(q.stats().late_inserts, 1);
        assert_eq!(q.extract_min(), Some(('c', 9.0)));
        assert_eq!(q.extract_min(), Some(('b', 1e300)));
        assert_eq!(q.extract_min(), None);
    }

    #[test]
    fn activation_splits_into_one_heap_per_item() {
        let mut q = BucketQueue::new(cfg(8, 1.0));
        for (i, k) in [1.9, 1.1, 1.5, 1.0, 2.2].into_iter().enumerate() {
            q.insert(i, k);
        }
        assert_eq!(q.min_key(), 1.0);
        assert_eq!(q.active_bucket(), 1);
        assert_eq!(q.subs.len(), 4);
        assert_eq!(q.stats().splits, 1);
        // 1.0 -> 0, 1.1 -> 0, 1.5 -> 2, 1.9 -> 3
        let sizes: Vec<_> = q.subs.iter().map(KeyedHeap::len).collect();
        assert_eq!(sizes, vec![2, 0, 1, 1]);
        let keys: Vec<f64> = std::iter::from_fn(|| q.extract_min().map(|e| e.1)).collect();
        assert_eq!(keys, vec![1.0, 1.1, 1.5, 1.9, 2.2]);
    }

    #[test]
    fn late_inserts_land_in_active_subbuckets() {
        let mut q = BucketQueue::new(cfg(8, 1.0));
        q.insert(0, 1.2);
        q.insert(1, 1.8);
        assert_eq!(q.extract_min(), Some((0, 1.2)));
        q.insert(2, 1.3);
        q.insert(3, 1.99);
        assert_eq!(q.stats().late_inserts, 2);
        let keys: Vec<f64> = std::iter::from_fn(|| q.extract_min().map(|e| e.1)).collect();
        assert_eq!(keys, vec![1.3, 1.8, 1.99]);
        let s = q.stats();
        assert_eq!((s.inserts, s.extracts), (4, 4));
    }

    #[test]
    fn empty_queue_reports_infinity() {
        let mut q: BucketQueue<u8> = BucketQueue::new(cfg(4, 0.5));
        assert_eq!(q.min_key(), f64::INFINITY);
        assert_eq!(q.extract_min(), None);
        assert_eq!(q.active_bucket(), 0);
    }

    #[test]
    fn default_geometry() {
        let c = BucketQueueConfig::for_graph_size(1000);
        assert_eq!(c.buckets, 1000);
        assert!((c.width - 1.0 / (1000.0 * 1000f64.ln())).abs() < 1e-18);
        assert_eq!(BucketQueueConfig::for_graph_size(1).buckets, 1);
        assert!(BucketQueueConfig::new(0, 1.0).is_err());
        assert!(BucketQueueConfig::new(3, 0.0).is_err());
    }
}

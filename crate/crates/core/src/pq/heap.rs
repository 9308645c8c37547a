use super::{MonotoneQueue, QueueStats};

/// Array-backed binary min-heap keyed by `f64`.
///
/// Comparison counts are accumulated into a caller-supplied counter so that
/// many heaps (the sub-buckets of a bucket queue) can share one tally.
#[derive(Debug, Clone)]
pub(crate) struct KeyedHeap<T> {
    data: Vec<(f64, T)>,
}

impl<T> Default for KeyedHeap<T> {
    fn default() -> Self {
        Self { data: Vec::new() }
    }
}

impl<T> KeyedHeap<T> {
    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub(crate) fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub(crate) fn peek_key(&self) -> Option<f64> {
        self.data.first().map(|e| e.0)
    }

    pub(crate) fn push(&mut self, key: f64, item: T, cmps: &mut u64) {
        self.data.push((key, item));
        let mut i = self.data.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            *cmps += 1;
            if self.data[parent].0 <= self.data[i].0 {
                break;
            }
            self.data.swap(parent, i);
            i = parent;
        }
    }

    pub(crate) fn pop(&mut self, cmps: &mut u64) -> Option<(f64, T)> {
        if self.data.is_empty() {
            return None;
        }
        let top = self.data.swap_remove(0);
        let n = self.data.len();
        let mut i = 0;
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let mut c = l;
            if l + 1 < n {
                *cmps += 1;
                if self.data[l + 1].0 < self.data[l].0 {
                    c = l + 1;
                }
            }
            *cmps += 1;
            if self.data[i].0 <= self.data[c].0 {
                break;
            }
            self.data.swap(i, c);
            i = c;
        }
        Some(top)
    }
}

/// Plain binary-heap priority queue; the baseline for the bucket queue.
#[derive(Debug, Clone)]
pub struct BinaryHeapQueue<T> {
    heap: KeyedHeap<T>,
    stats: QueueStats,
}

impl<T> Default for BinaryHeapQueue<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> BinaryHeapQueue<T> {
    pub fn new() -> Self {
        Self { heap: KeyedHeap::default(), stats: QueueStats::default() }
    }
}

impl<T> MonotoneQueue<T> for BinaryHeapQueue<T> {
    fn insert(&mut self, item: T, key: f64) {
        self.stats.inserts += 1;
        self.heap.push(key, item, &mut self.stats.heap_comparisons);
        self.stats.max_subbucket_size = self.stats.max_subbucket_size.max(self.heap.len() as u64);
    }

    fn min_key(&mut self) -> f64 {
        self.heap.peek_key().unwrap_or(f64::INFINITY)
    }

    fn extract_min(&mut self) -> Option<(T, f64)> {
        let (key, item) = self.heap.pop(&mut self.stats.heap_comparisons)?;
        self.stats.extracts += 1;
        Some((item, key))
    }

    fn len(&self) -> usize {
        self.heap.len()
    }

    fn stats(&self) -> QueueStats {
        self.stats
    }
}

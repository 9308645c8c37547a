//! Distribution-aware bucket sort.
//!
//! When the cost distribution is known, `N` items are scattered into `N`
//! equal-probability buckets using the cost CDF and each bucket is
//! heapsorted. Buckets then hold O(1) items on average, so the whole sort is
//! linear in expectation.

use std::cmp::Ordering;

/// Reusable scratch buffers for [`BucketSorter::sort`].
pub(crate) struct BucketSorter<T> {
    counts: Vec<u32>,
    cursor: Vec<u32>,
    bucket_of: Vec<u32>,
    scratch: Vec<T>,
}

impl<T: Copy> BucketSorter<T> {
    pub(crate) fn new() -> Self {
        Self { counts: Vec::new(), cursor: Vec::new(), bucket_of: Vec::new(), scratch: Vec::new() }
    }

    /// Sorts `items` by `cmp`, which must order primarily by `cost`.
    ///
    /// `cdf` maps a cost to its quantile in `[0, 1]`. With `cdf = None` the
    /// sorter falls back to a comparison sort.
    pub(crate) fn sort<K, C>(&mut self, items: &mut [T], cost: K, cdf: Option<&dyn Fn(f64) -> f64>, cmp: C)
    where
        K: Fn(&T) -> f64,
        C: Fn(&T, &T) -> Ordering,
    {
        let n = items.len();
        if n < 2 {
            return;
        }
        let Some(cdf) = cdf else {
            items.sort_unstable_by(cmp);
            return;
        };

        self.counts.clear();
        self.counts.resize(n + 1, 0);
        self.bucket_of.clear();
        for item in items.iter() {
            let q = cdf(cost(item));
            let b = if q.is_nan() || q <= 0.0 { 0 } else { ((q * n as f64) as usize).min(n - 1) };
            self.bucket_of.push(b as u32);
            self.counts[b + 1] += 1;
        }
        for b in 0..n {
            self.counts[b + 1] += self.counts[b];
        }

        self.scratch.clear();
        self.scratch.extend_from_slice(items);
        self.cursor.clear();
        self.cursor.extend_from_slice(&self.counts);
        for (item, &b) in self.scratch.iter().zip(&self.bucket_of) {
            let slot = &mut self.cursor[b as usize];
            items[*slot as usize] = *item;
            *slot += 1;
        }
        for b in 0..n {
            let (lo, hi) = (self.counts[b] as usize, self.counts[b + 1] as usize);
            if hi - lo > 1 {
                heapsort(&mut items[lo..hi], &cmp);
            }
        }

        // A CDF that is not monotone under rounding can misplace an item
        // across a bucket boundary.
        if items.windows(2).any(|w| cmp(&w[0], &w[1]) == Ordering::Greater) {
            items.sort_unstable_by(cmp);
        }
    }
}

/// In-place heapsort (ascending under `cmp`).
pub(crate) fn heapsort<T, C: Fn(&T, &T) -> Ordering>(v: &mut [T], cmp: &C) {
    let n = v.len();
    for start in (0..n / 2).rev() {
        sift_down(v, start, n, cmp);
    }
    for end in (1..n).rev() {
        v.swap(0, end);
        sift_down(v, 0, end, cmp);
    }
}

fn sift_down<T, C: Fn(&T, &T) -> Ordering>(v: &mut [T], mut root: usize, end: usize, cmp: &C) {
    loop {
        let mut child = 2 * root + 1;
        if child >= end {
            return;
        }
        if child + 1 < end && cmp(&v[child], &v[child + 1]) == Ordering::Less {
            child += 1;
        }
        if cmp(&v[root], &v[child]) != Ordering::Less {
            return;
        }
        v.swap(root, child);
        root = child;
    }
}

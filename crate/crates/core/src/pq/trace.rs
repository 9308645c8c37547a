use serde::{Deserialize, Serialize};

use super::{MonotoneQueue, QueueStats};

/// One recorded queue operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum QueueOp {
    Insert { key: f64 },
    Extract { key: f64 },
}

/// Wraps a queue and records every insert and extraction.
#[derive(Debug, Clone)]
pub struct Recorder<Q> {
    inner: Q,
    ops: Vec<QueueOp>,
}

impl<Q> Recorder<Q> {
    pub fn new(inner: Q) -> Self {
        Self { inner, ops: Vec::new() }
    }

    pub fn ops(&self) -> &[QueueOp] {
        &self.ops
    }

    pub fn into_ops(self) -> Vec<QueueOp> {
        self.ops
    }
}

impl<T, Q: MonotoneQueue<T>> MonotoneQueue<T> for Recorder<Q> {
    fn insert(&mut self, item: T, key: f64) {
        self.ops.push(QueueOp::Insert { key });
        self.inner.insert(item, key);
    }

    fn min_key(&mut self) -> f64 {
        self.inner.min_key()
    }

    fn extract_min(&mut self) -> Option<(T, f64)> {
        let out = self.inner.extract_min();
        if let Some((_, key)) = &out {
            self.ops.push(QueueOp::Extract { key: *key });
        }
        out
    }

    fn len(&self) -> usize {
        self.inner.len()
    }

    fn stats(&self) -> QueueStats {
        self.inner.stats()
    }
}

/// Drives `queue` with the inserts of `ops`, performing an extraction
/// wherever the trace has one. Returns the extracted keys in order, or
/// `None` if the queue ran dry where the trace expected an item.
pub fn replay<Q: MonotoneQueue<usize>>(ops: &[QueueOp], queue: &mut Q) -> Option<Vec<f64>> {
    let mut keys = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        match *op {
            QueueOp::Insert { key } => queue.insert(i, key),
            QueueOp::Extract { .. } => keys.push(queue.extract_min()?.1),
        }
    }
    Some(keys)
}

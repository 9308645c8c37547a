//! Shortest paths on complete digraphs with sorted adjacency lists.
//!
//! The crate is organised around one shared representation, [`SortedDigraph`],
//! whose outgoing and incoming adjacency lists are both sorted by cost. On top
//! of it sit
//!
//! * [`sssp`]: Dijkstra, Spira, and the forward-backward algorithm that scans
//!   incoming lists to discover cheap edges into far vertices,
//! * [`pq`]: monotone priority queues (a binary heap and a two-level bucket
//!   queue whose active bucket is split into one heap per item),
//! * [`verify`]: shortest path tree checkers (exhaustive, forward-only and
//!   forward-backward),
//! * [`apsp`]: all-pairs driver with distribution-aware bucket sorting,
//! * [`oracle`]: exact samplers and analytic quantities for the
//!   exponential complete graph, used as ground truth by the test suites.

pub mod apsp;
pub mod graph;
pub mod oracle;
pub mod pq;
pub mod seed;
pub mod sssp;
pub mod stats;
pub mod verify;

pub use graph::{GraphError, SortedDigraph, VertexId, WeightKind, WeightModel};
pub use pq::{BinaryHeapQueue, BucketQueue, BucketQueueConfig, MonotoneQueue, QueueKind, QueueStats};
pub use sssp::{FbConfig, ScanStats, ShortestPathTree};
pub use verify::{VerifyError, VerifyReport};

//! Greedy graph partitioning for random-walk workloads.
//!
//! The crate is organised around the pipeline a partitioned random-walk job
//! goes through:
//!
//! - [`graph`] loads, repairs and generates simple undirected graphs.
//! - [`partition`] splits a graph into `k` partitions with one of five
//!   algorithms (BFS growth, large-degree-first, balanced growth, vertex-cut
//!   and random hash) and builds the per-partition neighbor tables.
//! - [`metrics`] scores a partitioning: modularity, balance variance,
//!   connectivity, the vertex-cut improvement, the replication objective and
//!   the expected number of hand-offs per walk step.
//! - [`walk`] runs random walks that only ever look at the partition tables
//!   and records how long a walker stays in one partition.
//!
//! ```
//! use rwpart::graph::Graph;
//! use rwpart::partition::{partition, Algorithm, PartitionConfig};
//! use rwpart::metrics::MetricsReport;
//!
//! let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
//! let ps = partition(&g, &PartitionConfig::new(Algorithm::Bfs, 2)).unwrap();
//! let report = MetricsReport::compute(&g, &ps).unwrap();
//! assert!(report.connection.all_connected());
//! ```

pub mod error;
pub mod graph;
pub mod metrics;
pub mod partition;
pub mod walk;

pub use error::{Error, Result};

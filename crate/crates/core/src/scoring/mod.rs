//! Stateful streaming scoring (HDRF), degree-based hashing (DBH), and the
//! single-pass baseline partitioners built on them.

mod baseline;
mod dbh;
mod hdrf;
mod state;

pub use baseline::{dbh_partitioner, hdrf_partitioner};
pub use dbh::{dbh_assign, lower_degree_endpoint, mix64};
pub use hdrf::{
    balance_score_for, hdrf_assign, hdrf_score, replication_score, HdrfScorer, BALANCE_EPSILON,
    DEFAULT_LAMBDA,
};
pub use state::{capacity, PartitionId, PartitionLoads, PartitionState, ReplicationMatrix};

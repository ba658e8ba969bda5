//! Phase 2 of 2PS: cluster placement, pre-partitioning and the capped
//! remaining-edge pass.

mod mapping;
mod sink;
mod two_phase;

pub use mapping::{map_clusters_to_partitions, sorted_list_schedule, ClusterPlacement, UNPLACED};
pub use sink::{spill_dir, AssignmentFileWriter, AssignmentSink, NullSink, VecSink, TMPDIR_ENV};
pub use two_phase::{
    partition_remaining_edges, prepartition_edges, prepartition_target, run_2ps, run_2ps_detailed,
    PrepartitionStats, RemainingStats, TwoPsRun,
};

//! Streaming edge partitioning.
//!
//! 2PS partitions an edge stream in two phases: a two-pass streaming
//! clustering with a volume cap, then a cluster-guided partitioning that
//! pre-assigns intra-cluster edges and places the rest with HDRF under a
//! hard balance cap. HDRF and DBH are provided as single-pass baselines.
//!
//! ```
//! use twops::{run_partitioner, Algorithm, EdgeStream, PartitionerConfig, VecSink};
//!
//! let stream = EdgeStream::from_pairs(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
//! let mut sink = VecSink::new();
//! let report = run_partitioner(&stream, Algorithm::TwoPs, &PartitionerConfig::new(2), &mut sink)?;
//! assert_eq!(report.rf, 1.0);
//! # Ok::<(), twops::Error>(())
//! ```

pub mod clustering;
mod config;
mod error;
pub mod experiment;
pub mod io;
pub mod metrics;
pub mod partitioning;
pub mod scoring;

use std::time::Instant;

pub use clustering::{streaming_clustering, ClusterId, ClusteringState, VolumeCap, UNASSIGNED};
pub use config::{Algorithm, PartitionerConfig, DEFAULT_ALPHA};
pub use error::{Error, Result};
pub use io::{
    compute_degrees, open_stream, DegreeTable, Edge, EdgeStream, GeneratorConfig, VertexId,
};
pub use metrics::{PeakState, RunReport};
pub use partitioning::{run_2ps, AssignmentFileWriter, AssignmentSink, NullSink, VecSink};
pub use scoring::{capacity, PartitionId, DEFAULT_LAMBDA};

/// Runs `algorithm` over `stream`. The baselines get a degree pass first.
pub fn run_partitioner<S: AssignmentSink>(
    stream: &EdgeStream,
    algorithm: Algorithm,
    config: &PartitionerConfig,
    sink: S,
) -> Result<RunReport> {
    if algorithm == Algorithm::TwoPs {
        return run_2ps(stream, config, sink);
    }
    config.validate(1)?;
    let t = Instant::now();
    let degrees = compute_degrees(stream)?;
    let t_degrees = t.elapsed();
    let mut report = match algorithm {
        Algorithm::Hdrf => scoring::hdrf_partitioner(stream, &degrees, config, sink)?,
        Algorithm::Dbh => scoring::dbh_partitioner(stream, &degrees, config, sink)?,
        Algorithm::TwoPs => unreachable!(),
    };
    report.stream_passes += 1;
    report.phase_times.insert(
        0,
        metrics::PhaseTime {
            phase: "degrees".into(),
            seconds: t_degrees.as_secs_f64(),
        },
    );
    Ok(report)
}

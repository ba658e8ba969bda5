use std::time::Instant;

use crate::config::PartitionerConfig;
use crate::error::Result;
use crate::io::{DegreeTable, EdgeStream};
use crate::metrics::{PeakState, RunReport};
use crate::partitioning::AssignmentSink;
use crate::scoring::dbh::dbh_assign;
use crate::scoring::hdrf::HdrfScorer;
use crate::scoring::state::{capacity, PartitionState};

/// Single-pass HDRF over all `k` partitions with no hard cap. Balance is
/// left to the balance term; the report flags any α violation.
pub fn hdrf_partitioner<S: AssignmentSink>(
    stream: &EdgeStream,
    degrees: &DegreeTable,
    config: &PartitionerConfig,
    mut sink: S,
) -> Result<RunReport> {
    config.validate(1)?;
    let k = config.k;
    let scorer = HdrfScorer::new(degrees, config.lambda);
    let mut state = PartitionState::new(degrees.len(), k, None);
    let passes_before = stream.completed_passes();

    let start = Instant::now();
    stream.for_each(|i, e| {
        let p = scorer.assign(e, 0..k as u32, &mut state)?;
        sink.record(i, p)
    })?;
    sink.end_pass()?;
    let elapsed = start.elapsed();

    let cap = capacity(config.alpha, stream.edge_count(), k);
    let mut report = RunReport::from_state("hdrf", config.alpha, cap, &state.matrix, &state.loads);
    report.lambda = Some(config.lambda);
    report.scoring_degrees = Some("true".into());
    report.stream_passes = stream.completed_passes() - passes_before;
    report.push_phase("partition", elapsed);
    report.peak_state = PeakState {
        degree_entries: degrees.len(),
        replication_cells: state.matrix.cell_count(),
        partition_load_entries: k,
        ..PeakState::default()
    };
    Ok(report)
}

/// Degree-based hashing. Stateless per edge; the matrix is kept only to
/// report the replication factor.
pub fn dbh_partitioner<S: AssignmentSink>(
    stream: &EdgeStream,
    degrees: &DegreeTable,
    config: &PartitionerConfig,
    mut sink: S,
) -> Result<RunReport> {
    config.validate(1)?;
    let k = config.k;
    let mut state = PartitionState::new(degrees.len(), k, None);
    let passes_before = stream.completed_passes();

    let start = Instant::now();
    stream.for_each(|i, e| {
        let p = dbh_assign(e, degrees, k);
        state.place(e.first, e.second, p);
        sink.record(i, p)
    })?;
    sink.end_pass()?;
    let elapsed = start.elapsed();

    let cap = capacity(config.alpha, stream.edge_count(), k);
    let mut report = RunReport::from_state("dbh", config.alpha, cap, &state.matrix, &state.loads);
    report.stream_passes = stream.completed_passes() - passes_before;
    report.push_phase("partition", elapsed);
    report.peak_state = PeakState {
        degree_entries: degrees.len(),
        replication_cells: state.matrix.cell_count(),
        partition_load_entries: k,
        ..PeakState::default()
    };
    Ok(report)
}

//! Phase 2 and the end-to-end 2PS driver.
//!
//! An edge is *pre-partitionable* when both endpoints share a cluster or
//! their clusters were mapped to the same partition. The pre-partition pass
//! assigns exactly those edges to their cluster's partition, falling back to
//! HDRF over non-full partitions when the target is at capacity. The
//! remaining pass skips them and scores every other edge with HDRF over the
//! partitions still below capacity.

use std::time::Instant;

use crate::clustering::{streaming_clustering, ClusteringState};
use crate::config::PartitionerConfig;
use crate::error::{Error, Result};
use crate::io::{compute_degrees, DegreeTable, Edge, EdgeStream};
use crate::metrics::{modularity_from_parts, PeakState, RunReport};
use crate::partitioning::mapping::{map_clusters_to_partitions, ClusterPlacement};
use crate::partitioning::sink::AssignmentSink;
use crate::scoring::{capacity, HdrfScorer, PartitionId, PartitionState};

/// Target partition of `e` if it is pre-partitionable, else `None`.
#[inline]
pub fn prepartition_target(
    e: Edge,
    clustering: &ClusteringState,
    placement: &ClusterPlacement,
) -> Option<PartitionId> {
    let c1 = clustering.cluster_of(e.first)?;
    let c2 = clustering.cluster_of(e.second)?;
    let p1 = placement.partition_of(c1)?;
    if c1 == c2 || placement.partition_of(c2) == Some(p1) {
        Some(p1)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrepartitionStats {
    pub assigned: u64,
    pub redirected: u64,
    pub intra_cluster: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RemainingStats {
    pub assigned: u64,
    pub skipped: u64,
}

fn no_room(e: Edge) -> Error {
    Error::CapacityExhausted {
        first: e.first,
        second: e.second,
    }
}

/// Pre-partition pass over the full stream.
pub fn prepartition_edges<S: AssignmentSink>(
    stream: &EdgeStream,
    clustering: &ClusteringState,
    placement: &ClusterPlacement,
    state: &mut PartitionState,
    scorer: &HdrfScorer<'_>,
    sink: &mut S,
) -> Result<PrepartitionStats> {
    let mut stats = PrepartitionStats::default();
    stream.for_each(|i, e| {
        let Some(mut target) = prepartition_target(e, clustering, placement) else {
            return Ok(());
        };
        if clustering.cluster_of(e.first) == clustering.cluster_of(e.second) {
            stats.intra_cluster += 1;
        }
        if state.loads.is_full(target) {
            target = scorer
                .best(e, state.loads.open_partitions(), state)
                .ok_or_else(|| no_room(e))?;
            stats.redirected += 1;
        }
        state.place(e.first, e.second, target);
        stats.assigned += 1;
        sink.record(i, target)
    })?;
    sink.end_pass()?;
    Ok(stats)
}

/// Remaining-edge pass: HDRF over partitions below capacity.
pub fn partition_remaining_edges<S: AssignmentSink>(
    stream: &EdgeStream,
    clustering: &ClusteringState,
    placement: &ClusterPlacement,
    state: &mut PartitionState,
    scorer: &HdrfScorer<'_>,
    sink: &mut S,
) -> Result<RemainingStats> {
    let mut stats = RemainingStats::default();
    stream.for_each(|i, e| {
        if prepartition_target(e, clustering, placement).is_some() {
            stats.skipped += 1;
            return Ok(());
        }
        let p = scorer
            .best(e, state.loads.open_partitions(), state)
            .ok_or_else(|| no_room(e))?;
        state.place(e.first, e.second, p);
        stats.assigned += 1;
        sink.record(i, p)
    })?;
    sink.end_pass()?;
    Ok(stats)
}

/// Everything a 2PS run produced, for inspection.
#[derive(Debug)]
pub struct TwoPsRun {
    pub report: RunReport,
    pub degrees: DegreeTable,
    pub clustering: ClusteringState,
    pub placement: ClusterPlacement,
    pub state: PartitionState,
    pub prepartition: PrepartitionStats,
    pub remaining: RemainingStats,
}

/// Degree pass, two clustering passes, cluster mapping, pre-partition pass,
/// remaining-edge pass.
pub fn run_2ps_detailed<S: AssignmentSink>(
    stream: &EdgeStream,
    config: &PartitionerConfig,
    mut sink: S,
) -> Result<TwoPsRun> {
    config.validate(2)?;
    let k = config.k;
    let passes_before = stream.completed_passes();

    let t = Instant::now();
    let degrees = compute_degrees(stream)?;
    let t_degrees = t.elapsed();

    let t = Instant::now();
    let clustering = streaming_clustering(stream, &degrees, k)?;
    let t_clustering = t.elapsed();

    let t = Instant::now();
    let placement = map_clusters_to_partitions(&clustering, k);
    let t_mapping = t.elapsed();

    let cap = capacity(config.alpha, stream.edge_count(), k);
    let scorer = HdrfScorer::new(&degrees, config.lambda);
    let mut state = PartitionState::new(degrees.len(), k, Some(cap));

    let t = Instant::now();
    let prepartition = prepartition_edges(
        stream,
        &clustering,
        &placement,
        &mut state,
        &scorer,
        &mut sink,
    )?;
    let t_prepartition = t.elapsed();

    let t = Instant::now();
    let remaining = partition_remaining_edges(
        stream,
        &clustering,
        &placement,
        &mut state,
        &scorer,
        &mut sink,
    )?;
    let t_remaining = t.elapsed();

    let edges = stream.edge_count();
    if prepartition.assigned + remaining.assigned != edges {
        return Err(Error::Assignment(format!(
            "{} + {} edges assigned out of {edges}",
            prepartition.assigned, remaining.assigned
        )));
    }

    let mut report = RunReport::from_state("2ps", config.alpha, cap, &state.matrix, &state.loads);
    report.lambda = Some(config.lambda);
    report.scoring_degrees = Some("true".into());
    report.modularity = modularity_from_parts(
        prepartition.intra_cluster,
        clustering.volumes().iter().copied(),
        edges,
    );
    report.clusters = Some(clustering.non_empty_clusters());
    report.prepartitioned_edges = Some(prepartition.assigned);
    report.prepartitioned_ratio = (edges > 0).then(|| prepartition.assigned as f64 / edges as f64);
    report.overflow_redirects = Some(prepartition.redirected);
    report.stream_passes = stream.completed_passes() - passes_before;
    report.push_phase("degrees", t_degrees);
    report.push_phase("clustering", t_clustering);
    report.push_phase("mapping", t_mapping);
    report.push_phase("prepartition", t_prepartition);
    report.push_phase("remaining", t_remaining);
    let (v2c_entries, cluster_volume_entries) = clustering.state_entries();
    report.peak_state = PeakState {
        degree_entries: degrees.len(),
        v2c_entries,
        cluster_volume_entries,
        c2p_entries: placement.c2p().len(),
        partition_volume_entries: placement.partition_volumes().len(),
        replication_cells: state.matrix.cell_count(),
        partition_load_entries: state.loads.k(),
    };

    Ok(TwoPsRun {
        report,
        degrees,
        clustering,
        placement,
        state,
        prepartition,
        remaining,
    })
}

/// Runs 2PS, streaming assignments into `sink`.
pub fn run_2ps<S: AssignmentSink>(
    stream: &EdgeStream,
    config: &PartitionerConfig,
    sink: S,
) -> Result<RunReport> {
    run_2ps_detailed(stream, config, sink).map(|run| run.report)
}

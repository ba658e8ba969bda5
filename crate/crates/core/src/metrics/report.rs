use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::scoring::{PartitionLoads, ReplicationMatrix};

/// Peak sizes of the auxiliary structures a run allocates, in entries.
///
/// None of these depend on the number of edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeakState {
    pub degree_entries: usize,
    pub v2c_entries: usize,
    pub cluster_volume_entries: usize,
    pub c2p_entries: usize,
    pub partition_volume_entries: usize,
    pub replication_cells: usize,
    pub partition_load_entries: usize,
}

impl PeakState {
    pub fn total(&self) -> usize {
        self.degree_entries
            + self.v2c_entries
            + self.cluster_volume_entries
            + self.c2p_entries
            + self.partition_volume_entries
            + self.replication_cells
            + self.partition_load_entries
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTime {
    pub phase: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub k: usize,
    pub alpha: f64,
    pub lambda: Option<f64>,
    pub edges: u64,
    pub vertices: usize,
    pub covered_vertices: usize,
    pub rf: f64,
    /// Set when no vertex is covered and `rf` is reported as 1.0.
    pub degenerate: bool,
    pub capacity: u64,
    pub partition_sizes: Vec<u64>,
    pub max_partition_size: u64,
    pub alpha_observed: f64,
    pub alpha_violation: bool,
    pub modularity: Option<f64>,
    pub clusters: Option<usize>,
    pub prepartitioned_edges: Option<u64>,
    pub prepartitioned_ratio: Option<f64>,
    pub overflow_redirects: Option<u64>,
    /// "true" when scoring uses full-stream degrees.
    pub scoring_degrees: Option<String>,
    pub stream_passes: u64,
    pub phase_times: Vec<PhaseTime>,
    pub peak_state: PeakState,
}

/// `max load / (|E| / k)`; 1.0 for an empty graph.
pub fn observed_alpha(max_load: u64, edges: u64, k: usize) -> f64 {
    if edges == 0 {
        1.0
    } else {
        max_load as f64 * k as f64 / edges as f64
    }
}

impl RunReport {
    /// Fills the balance and replication fields from a finished state.
    pub fn from_state(
        algorithm: &str,
        alpha: f64,
        capacity: u64,
        matrix: &ReplicationMatrix,
        loads: &PartitionLoads,
    ) -> Self {
        let edges = loads.total();
        let k = loads.k();
        let rf = matrix.replication_factor();
        let max = loads.max();
        RunReport {
            algorithm: algorithm.to_string(),
            k,
            alpha,
            lambda: None,
            edges,
            vertices: matrix.vertex_count(),
            covered_vertices: matrix.covered_vertices(),
            rf: rf.unwrap_or(1.0),
            degenerate: rf.is_none(),
            capacity,
            partition_sizes: loads.sizes().to_vec(),
            max_partition_size: max,
            alpha_observed: observed_alpha(max, edges, k),
            alpha_violation: max > capacity,
            modularity: None,
            clusters: None,
            prepartitioned_edges: None,
            prepartitioned_ratio: None,
            overflow_redirects: None,
            scoring_degrees: None,
            stream_passes: 0,
            phase_times: Vec::new(),
            peak_state: PeakState::default(),
        }
    }

    pub fn push_phase(&mut self, phase: &str, elapsed: Duration) {
        self.phase_times.push(PhaseTime {
            phase: phase.to_string(),
            seconds: elapsed.as_secs_f64(),
        });
    }

    pub fn total_seconds(&self) -> f64 {
        self.phase_times.iter().map(|p| p.seconds).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat `key: value` lines for terminal output.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        line("algorithm", self.algorithm.clone());
        line("k", self.k.to_string());
        line("edges", self.edges.to_string());
        line("vertices", self.vertices.to_string());
        line("covered_vertices", self.covered_vertices.to_string());
        line("rf", format!("{:.6}", self.rf));
        if self.degenerate {
            line("degenerate", "true".into());
        }
        line("alpha", format!("{}", self.alpha));
        line("alpha_observed", format!("{:.6}", self.alpha_observed));
        line("capacity", self.capacity.to_string());
        line("max_partition_size", self.max_partition_size.to_string());
        line("alpha_violation", self.alpha_violation.to_string());
        if let Some(l) = self.lambda {
            line("lambda", format!("{l}"));
        }
        if let Some(q) = self.modularity {
            line("modularity", format!("{q:.6}"));
        }
        if let Some(c) = self.clusters {
            line("clusters", c.to_string());
        }
        if let Some(r) = self.prepartitioned_ratio {
            line("prepartitioned_ratio", format!("{r:.6}"));
        }
        if let Some(r) = self.overflow_redirects {
            line("overflow_redirects", r.to_string());
        }
        if let Some(d) = &self.scoring_degrees {
            line("scoring_degrees", d.clone());
        }
        line("stream_passes", self.stream_passes.to_string());
        for p in &self.phase_times {
            line(&format!("time_{}", p.phase), format!("{:.6}", p.seconds));
        }
        line("peak_state_entries", self.peak_state.total().to_string());
        out
    }
}

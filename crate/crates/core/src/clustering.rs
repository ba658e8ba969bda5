//! Phase 1: two-pass streaming clustering with true-degree volumes.
//!
//! Each vertex starts in a singleton cluster the first time it is seen. For
//! every edge whose endpoint clusters both sit within the volume cap, the
//! endpoint in the smaller cluster migrates into the larger one, provided
//! the destination stays within the cap. The first pass runs with cap
//! `|E| / k`, the second over the same state with the cap doubled.

use crate::error::{Error, Result};
use crate::io::{DegreeTable, Edge, EdgeStream, VertexId};

pub type ClusterId = u32;

/// Marks a vertex that has not been seen on the stream.
pub const UNASSIGNED: ClusterId = ClusterId::MAX;

/// An exact rational volume bound `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VolumeCap {
    num: u64,
    den: u64,
}

impl VolumeCap {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "volume cap denominator must be positive");
        VolumeCap { num, den }
    }

    /// First-pass cap: `(2·|E| / k) · 0.5`, kept as the exact ratio `|E| / k`.
    pub fn first_pass(edge_count: u64, k: usize) -> Self {
        VolumeCap::new(edge_count, k as u64)
    }

    pub fn doubled(self) -> Self {
        VolumeCap::new(self.num * 2, self.den)
    }

    pub fn admits(&self, volume: u64) -> bool {
        volume as u128 * self.den as u128 <= self.num as u128
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// A single accepted move, as reported by [`ClusteringState::process_edge`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Migration {
    pub vertex: VertexId,
    pub from: ClusterId,
    pub to: ClusterId,
    pub from_volume_before: u64,
    pub to_volume_before: u64,
}

#[derive(Clone, Debug)]
pub struct ClusteringState {
    v2c: Vec<ClusterId>,
    vol: Vec<u64>,
    max_vol: VolumeCap,
    next_id: ClusterId,
}

impl ClusteringState {
    pub fn new(vertex_count: usize, max_vol: VolumeCap) -> Self {
        ClusteringState {
            v2c: vec![UNASSIGNED; vertex_count],
            vol: vec![0; vertex_count],
            max_vol,
            next_id: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.v2c.len()
    }

    pub fn cluster_of(&self, v: VertexId) -> Option<ClusterId> {
        match self.v2c[v as usize] {
            UNASSIGNED => None,
            c => Some(c),
        }
    }

    /// Vertex → cluster map, [`UNASSIGNED`] for unseen vertices.
    pub fn v2c(&self) -> &[ClusterId] {
        &self.v2c
    }

    /// Volumes of every cluster id handed out so far, including emptied ones.
    pub fn volumes(&self) -> &[u64] {
        &self.vol[..self.next_id as usize]
    }

    pub fn volume(&self, c: ClusterId) -> u64 {
        self.vol[c as usize]
    }

    pub fn max_vol(&self) -> VolumeCap {
        self.max_vol
    }

    pub fn set_max_vol(&mut self, cap: VolumeCap) {
        self.max_vol = cap;
    }

    pub fn next_id(&self) -> ClusterId {
        self.next_id
    }

    pub fn non_empty_clusters(&self) -> usize {
        self.volumes().iter().filter(|&&v| v > 0).count()
    }

    /// Entries held by the vertex and volume arrays.
    pub fn state_entries(&self) -> (usize, usize) {
        (self.v2c.len(), self.vol.len())
    }

    fn assign_fresh(&mut self, v: VertexId, degrees: &DegreeTable) -> ClusterId {
        let slot = &mut self.v2c[v as usize];
        if *slot == UNASSIGNED {
            let id = self.next_id;
            *slot = id;
            self.vol[id as usize] += degrees[v];
            self.next_id += 1;
        }
        *slot
    }

    /// Applies one edge to the state and returns the migration, if any.
    pub fn process_edge(&mut self, e: Edge, degrees: &DegreeTable) -> Option<Migration> {
        let c_first = self.assign_fresh(e.first, degrees);
        let c_second = self.assign_fresh(e.second, degrees);
        if c_first == c_second {
            return None;
        }

        let vol_first = self.vol[c_first as usize];
        let vol_second = self.vol[c_second as usize];
        if !(self.max_vol.admits(vol_first) && self.max_vol.admits(vol_second)) {
            return None;
        }

        // ties favour moving e.first
        let (small, c_small, vol_small, c_large, vol_large) = if vol_first <= vol_second {
            (e.first, c_first, vol_first, c_second, vol_second)
        } else {
            (e.second, c_second, vol_second, c_first, vol_first)
        };
        let d = degrees[small];
        if !self.max_vol.admits(vol_large + d) {
            return None;
        }

        self.v2c[small as usize] = c_large;
        self.vol[c_large as usize] += d;
        self.vol[c_small as usize] -= d;
        Some(Migration {
            vertex: small,
            from: c_small,
            to: c_large,
            from_volume_before: vol_small,
            to_volume_before: vol_large,
        })
    }

    /// One full pass over `stream` with the current cap.
    pub fn streaming_pass(&mut self, stream: &EdgeStream, degrees: &DegreeTable) -> Result<()> {
        stream.for_each(|_, e| {
            if e.first as usize >= self.v2c.len() || e.second as usize >= self.v2c.len() {
                return Err(Error::VertexOutOfRange {
                    vertex: e.first.max(e.second),
                    vertex_count: self.v2c.len(),
                });
            }
            self.process_edge(e, degrees);
            Ok(())
        })
    }
}

/// Runs both clustering passes and returns the final state.
pub fn streaming_clustering(
    stream: &EdgeStream,
    degrees: &DegreeTable,
    k: usize,
) -> Result<ClusteringState> {
    if k < 2 {
        return Err(Error::config(format!("k must be at least 2, got {k}")));
    }
    let cap = VolumeCap::first_pass(stream.edge_count(), k);
    let mut state = ClusteringState::new(degrees.len(), cap);
    state.streaming_pass(stream, degrees)?;
    state.set_max_vol(cap.doubled());
    state.streaming_pass(stream, degrees)?;
    Ok(state)
}

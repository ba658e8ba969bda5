//! HDRF scoring.
//!
//! `C(u, v, p) = C_REP(u, v, p) + C_BAL(p)` with
//!
//! * `θ(u) = d(u) / (d(u) + d(v))`
//! * `g(u, p) = 1 + (1 − θ(u))` if `u ∈ V(p)`, else 0
//! * `C_REP = g(u, p) + g(v, p)`
//! * `C_BAL(p) = λ · (maxsize − |p|) / (ε + maxsize − minsize)`, `ε = 1`
//!
//! Degrees are the true degrees from the degree pass.

use crate::error::{Error, Result};
use crate::io::{DegreeTable, Edge};
use crate::scoring::state::{PartitionId, PartitionLoads, PartitionState, ReplicationMatrix};

pub const DEFAULT_LAMBDA: f64 = 1.1;
pub const BALANCE_EPSILON: f64 = 1.0;

/// Replication part of the score.
pub fn replication_score(
    e: Edge,
    p: PartitionId,
    matrix: &ReplicationMatrix,
    degrees: &DegreeTable,
) -> f64 {
    let du = degrees.get(e.first) as f64;
    let dv = degrees.get(e.second) as f64;
    let sum = du + dv;
    let (theta_u, theta_v) = if sum > 0.0 {
        (du / sum, dv / sum)
    } else {
        (0.5, 0.5)
    };
    let g = |present: bool, theta: f64| if present { 2.0 - theta } else { 0.0 };
    g(matrix.contains(e.first, p), theta_u) + g(matrix.contains(e.second, p), theta_v)
}

#[inline]
fn balance_score(size: u64, max: u64, min: u64, lambda: f64) -> f64 {
    lambda * (max - size) as f64 / (BALANCE_EPSILON + (max - min) as f64)
}

/// Balance part of the score.
pub fn balance_score_for(p: PartitionId, loads: &PartitionLoads, lambda: f64) -> f64 {
    balance_score(loads.size(p), loads.max(), loads.min(), lambda)
}

/// Full HDRF score of placing `e` on `p`.
pub fn hdrf_score(
    e: Edge,
    p: PartitionId,
    matrix: &ReplicationMatrix,
    loads: &PartitionLoads,
    degrees: &DegreeTable,
    lambda: f64,
) -> f64 {
    replication_score(e, p, matrix, degrees) + balance_score_for(p, loads, lambda)
}

/// Scores partitions for a fixed degree table and λ.
#[derive(Clone, Copy, Debug)]
pub struct HdrfScorer<'a> {
    degrees: &'a DegreeTable,
    lambda: f64,
}

impl<'a> HdrfScorer<'a> {
    pub fn new(degrees: &'a DegreeTable, lambda: f64) -> Self {
        HdrfScorer { degrees, lambda }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn degrees(&self) -> &'a DegreeTable {
        self.degrees
    }

    pub fn score(&self, e: Edge, p: PartitionId, state: &PartitionState) -> f64 {
        hdrf_score(e, p, &state.matrix, &state.loads, self.degrees, self.lambda)
    }

    /// Highest-scoring candidate without mutating state. Ties go to the
    /// first candidate yielded, so ascending candidates break ties by
    /// lowest id.
    pub fn best<I>(&self, e: Edge, candidates: I, state: &PartitionState) -> Option<PartitionId>
    where
        I: IntoIterator<Item = PartitionId>,
    {
        let max = state.loads.max();
        let min = state.loads.min();
        let mut best: Option<(PartitionId, f64)> = None;
        for p in candidates {
            let score = replication_score(e, p, &state.matrix, self.degrees)
                + balance_score(state.loads.size(p), max, min, self.lambda);
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((p, score));
            }
        }
        best.map(|(p, _)| p)
    }

    /// Places `e` on the best candidate and updates the state.
    pub fn assign<I>(
        &self,
        e: Edge,
        candidates: I,
        state: &mut PartitionState,
    ) -> Result<PartitionId>
    where
        I: IntoIterator<Item = PartitionId>,
    {
        let p = self
            .best(e, candidates, state)
            .ok_or(Error::CapacityExhausted {
                first: e.first,
                second: e.second,
            })?;
        state.place(e.first, e.second, p);
        Ok(p)
    }
}

/// Places `e` on the best of `candidates`; see [`HdrfScorer::assign`].
pub fn hdrf_assign<I>(
    e: Edge,
    candidates: I,
    state: &mut PartitionState,
    degrees: &DegreeTable,
    lambda: f64,
) -> Result<PartitionId>
where
    I: IntoIterator<Item = PartitionId>,
{
    HdrfScorer::new(degrees, lambda).assign(e, candidates, state)
}

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::clustering::{ClusterId, ClusteringState};
use crate::scoring::PartitionId;

/// Marks a cluster with no partition (empty clusters).
pub const UNPLACED: PartitionId = PartitionId::MAX;

/// Cluster → partition map and the cluster volume accumulated per partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPlacement {
    c2p: Vec<PartitionId>,
    vol_p: Vec<u64>,
}

impl ClusterPlacement {
    pub fn partition_of(&self, c: ClusterId) -> Option<PartitionId> {
        match self.c2p.get(c as usize) {
            None | Some(&UNPLACED) => None,
            Some(&p) => Some(p),
        }
    }

    pub fn c2p(&self) -> &[PartitionId] {
        &self.c2p
    }

    pub fn partition_volumes(&self) -> &[u64] {
        &self.vol_p
    }

    pub fn makespan(&self) -> u64 {
        self.vol_p.iter().copied().max().unwrap_or(0)
    }
}

/// Sorted list scheduling: jobs by decreasing size (ties: lower index),
/// each to the least-loaded machine (ties: lower machine id). Zero-size
/// jobs are left unplaced.
pub fn sorted_list_schedule(sizes: &[u64], machines: usize) -> (Vec<PartitionId>, Vec<u64>) {
    assert!(machines > 0, "need at least one machine");
    let mut order: Vec<usize> = (0..sizes.len()).filter(|&j| sizes[j] > 0).collect();
    order.sort_unstable_by_key(|&j| (Reverse(sizes[j]), j));

    let mut heap: BinaryHeap<Reverse<(u64, PartitionId)>> = (0..machines as PartitionId)
        .map(|p| Reverse((0, p)))
        .collect();
    let mut assignment = vec![UNPLACED; sizes.len()];
    let mut loads = vec![0u64; machines];
    for j in order {
        let Reverse((load, p)) = heap.pop().expect("k > 0");
        assignment[j] = p;
        loads[p as usize] = load + sizes[j];
        heap.push(Reverse((loads[p as usize], p)));
    }
    (assignment, loads)
}

/// Maps every non-empty cluster to a partition, balancing total volume.
///
/// The map is sized to the vertex count, the upper bound on cluster ids.
pub fn map_clusters_to_partitions(state: &ClusteringState, k: usize) -> ClusterPlacement {
    let (mut c2p, vol_p) = sorted_list_schedule(state.volumes(), k);
    c2p.resize(state.vertex_count().max(c2p.len()), UNPLACED);
    ClusterPlacement { c2p, vol_p }
}

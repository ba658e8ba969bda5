//! Partitioning quality: replication factor, balance, modularity.

mod oracle;
mod report;

use std::collections::{HashMap, HashSet};

pub use oracle::{brute_force_min_rf, MAX_ORACLE_EDGES, MAX_ORACLE_K};
pub use report::{observed_alpha, PeakState, PhaseTime, RunReport};

use crate::clustering::UNASSIGNED;
use crate::error::{Error, Result};
use crate::io::{DegreeTable, Edge, EdgeStream, VertexId};
use crate::scoring::{PartitionId, PartitionLoads, ReplicationMatrix};

/// `Σ_p |V(p)| / |{v : deg(v) > 0}|`; `None` when nothing is covered.
pub fn replication_factor(matrix: &ReplicationMatrix) -> Option<f64> {
    matrix.replication_factor()
}

/// Replication factor recomputed from a per-edge assignment, tracking
/// `(vertex, partition)` pairs in a hash set rather than a bit matrix.
pub fn replication_factor_from_assignment(
    stream: &EdgeStream,
    assignment: &[PartitionId],
    k: usize,
) -> Result<Option<f64>> {
    check_assignment_len(stream, assignment)?;
    let mut replicas: HashSet<(VertexId, PartitionId)> = HashSet::new();
    let mut covered: HashSet<VertexId> = HashSet::new();
    stream.for_each(|i, e| {
        let p = assignment[i as usize];
        if p as usize >= k {
            return Err(Error::PartitionOutOfRange { partition: p, k });
        }
        for v in [e.first, e.second] {
            replicas.insert((v, p));
            covered.insert(v);
        }
        Ok(())
    })?;
    Ok((!covered.is_empty()).then(|| replicas.len() as f64 / covered.len() as f64))
}

fn check_assignment_len(stream: &EdgeStream, assignment: &[PartitionId]) -> Result<()> {
    if assignment.len() as u64 != stream.edge_count() {
        return Err(Error::Assignment(format!(
            "{} assignment records for {} edges",
            assignment.len(),
            stream.edge_count()
        )));
    }
    Ok(())
}

/// Rebuilds the replication matrix and loads implied by an assignment.
pub fn replay_assignment(
    stream: &EdgeStream,
    assignment: &[PartitionId],
    vertex_count: usize,
    k: usize,
) -> Result<(ReplicationMatrix, PartitionLoads)> {
    check_assignment_len(stream, assignment)?;
    let mut matrix = ReplicationMatrix::new(vertex_count, k);
    let mut loads = PartitionLoads::new(k, None);
    stream.for_each(|i, e| {
        let p = assignment[i as usize];
        if p as usize >= k {
            return Err(Error::PartitionOutOfRange { partition: p, k });
        }
        for v in [e.first, e.second] {
            if v as usize >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
        }
        matrix.insert(e.first, p);
        matrix.insert(e.second, p);
        loads.increment(p);
        Ok(())
    })?;
    Ok((matrix, loads))
}

/// `Σ_c (intra_c / m − (vol_c / 2m)²)` from the total intra-cluster edge
/// count and the cluster volumes. `None` when `m = 0`.
pub fn modularity_from_parts<I>(intra_edges: u64, volumes: I, m: u64) -> Option<f64>
where
    I: IntoIterator<Item = u64>,
{
    if m == 0 {
        return None;
    }
    let two_m = 2.0 * m as f64;
    let expected: f64 = volumes
        .into_iter()
        .map(|v| {
            let f = v as f64 / two_m;
            f * f
        })
        .sum();
    Some(intra_edges as f64 / m as f64 - expected)
}

/// Modularity of the clustering `v2c`, one pass over the stream.
///
/// Self-loops count as intra-cluster edges. Unassigned vertices are treated
/// as singletons. `None` for an empty stream.
pub fn modularity(stream: &EdgeStream, v2c: &[u32], degrees: &DegreeTable) -> Result<Option<f64>> {
    let cluster_key = |v: VertexId| -> Result<u64> {
        match v2c.get(v as usize) {
            None => Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: v2c.len(),
            }),
            Some(&UNASSIGNED) => Ok((1 << 32) | v as u64),
            Some(&c) => Ok(c as u64),
        }
    };
    let mut intra = 0u64;
    stream.for_each(|_, Edge { first, second }| {
        if cluster_key(first)? == cluster_key(second)? {
            intra += 1;
        }
        Ok(())
    })?;
    let mut volumes: HashMap<u64, u64> = HashMap::new();
    for (v, &d) in degrees.as_slice().iter().enumerate() {
        if d > 0 {
            *volumes.entry(cluster_key(v as VertexId)?).or_default() += d;
        }
    }
    Ok(modularity_from_parts(
        intra,
        volumes.into_values(),
        stream.edge_count(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::compute_degrees;

    #[test]
    fn single_cluster_has_zero_modularity() {
        let s = EdgeStream::from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let d = compute_degrees(&s).unwrap();
        let q = modularity(&s, &[0, 0, 0, 0], &d).unwrap().unwrap();
        assert!(q.abs() < 1e-12);
    }

    #[test]
    fn two_triangles_have_modularity_one_half() {
        let s = EdgeStream::from_pairs(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let d = compute_degrees(&s).unwrap();
        let q = modularity(&s, &[0, 0, 0, 1, 1, 1], &d).unwrap().unwrap();
        assert!((q - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_stream_modularity_is_undefined() {
        let s = EdgeStream::from_pairs(&[]);
        let d = compute_degrees(&s).unwrap();
        assert_eq!(modularity(&s, &[], &d).unwrap(), None);
    }

    #[test]
    fn rf_of_single_partition_is_one() {
        let s = EdgeStream::from_pairs(&[(0, 1), (1, 2), (2, 0)]);
        let rf = replication_factor_from_assignment(&s, &[0, 0, 0], 2).unwrap();
        assert_eq!(rf, Some(1.0));
    }

    #[test]
    fn rf_of_split_triangle() {
        // {01, 12} on p0 covers {0,1,2}; {20} on p1 covers {2,0}
        let s = EdgeStream::from_pairs(&[(0, 1), (1, 2), (2, 0)]);
        let rf = replication_factor_from_assignment(&s, &[0, 0, 1], 2)
            .unwrap()
            .unwrap();
        assert!((rf - 5.0 / 3.0).abs() < 1e-12);
        // {01} on p0, {12, 20} on p1: covers 2 + 3
        let (m, _) = replay_assignment(&s, &[0, 1, 1], 3, 2).unwrap();
        assert!((replication_factor(&m).unwrap() - 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn one_cut_vertex_among_three() {
        // cover sets {0,1} and {1,2}
        let s = EdgeStream::from_pairs(&[(0, 1), (1, 2)]);
        let rf = replication_factor_from_assignment(&s, &[0, 1], 2)
            .unwrap()
            .unwrap();
        assert!((rf - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn assignment_length_and_range_are_checked() {
        let s = EdgeStream::from_pairs(&[(0, 1)]);
        assert!(replication_factor_from_assignment(&s, &[], 2).is_err());
        assert!(matches!(
            replication_factor_from_assignment(&s, &[5], 2),
            Err(Error::PartitionOutOfRange { partition: 5, k: 2 })
        ));
    }
}

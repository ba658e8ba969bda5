use crate::error::{Error, Result};
use crate::io::Edge;
use crate::scoring::capacity;

pub const MAX_ORACLE_EDGES: usize = 10;
pub const MAX_ORACLE_K: usize = 3;

/// Minimum replication factor over every assignment of `edges` to `k`
/// partitions that respects the cap `ceil(α·|E| / k)`, by enumerating all
/// `k^|E|` assignments. An empty edge set reports 1.0.
pub fn brute_force_min_rf(edges: &[Edge], k: usize, alpha: f64) -> Result<f64> {
    if edges.len() > MAX_ORACLE_EDGES || k > MAX_ORACLE_K {
        return Err(Error::TooLarge(format!(
            "{} edges, k = {k} (limits: {MAX_ORACLE_EDGES} edges, k = {MAX_ORACLE_K})",
            edges.len()
        )));
    }
    if k == 0 {
        return Err(Error::config("k must be positive"));
    }
    if edges.is_empty() {
        return Ok(1.0);
    }

    // compact vertex ids so cover sets fit in a u64 bitmask per partition
    let mut ids: Vec<u32> = edges.iter().flat_map(|e| [e.first, e.second]).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |v: u32| ids.binary_search(&v).unwrap();
    let masks: Vec<u64> = edges
        .iter()
        .map(|e| (1u64 << local(e.first)) | (1u64 << local(e.second)))
        .collect();

    let cap = capacity(alpha, edges.len() as u64, k);
    let mut choice = vec![0usize; edges.len()];
    let mut best: Option<u32> = None;
    loop {
        let mut sizes = [0u64; MAX_ORACLE_K];
        let mut covers = [0u64; MAX_ORACLE_K];
        for (m, &p) in masks.iter().zip(&choice) {
            sizes[p] += 1;
            covers[p] |= m;
        }
        if sizes[..k].iter().all(|&s| s <= cap) {
            let replicas: u32 = covers[..k].iter().map(|c| c.count_ones()).sum();
            best = Some(best.map_or(replicas, |b| b.min(replicas)));
        }

        // odometer increment
        let mut i = 0;
        loop {
            if i == choice.len() {
                let replicas =
                    best.ok_or_else(|| Error::config("no assignment satisfies the cap"))?;
                return Ok(replicas as f64 / ids.len() as f64);
            }
            choice[i] += 1;
            if choice[i] < k {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(pairs: &[(u32, u32)]) -> Vec<Edge> {
        pairs.iter().copied().map(Edge::from).collect()
    }

    #[test]
    fn two_disjoint_edges() {
        assert_eq!(
            brute_force_min_rf(&edges(&[(0, 1), (2, 3)]), 2, 1.0).unwrap(),
            1.0
        );
    }

    #[test]
    fn triangle_with_forced_split() {
        // cap ceil(1.5) = 2: covers of sizes 3 and 2
        let rf = brute_force_min_rf(&edges(&[(0, 1), (1, 2), (2, 0)]), 2, 1.0).unwrap();
        assert_eq!(rf, 5.0 / 3.0);
    }

    #[test]
    fn path_of_four_edges() {
        // cap 2: split at the middle vertex, covers {0,1,2} and {2,3,4}
        let rf = brute_force_min_rf(&edges(&[(0, 1), (1, 2), (2, 3), (3, 4)]), 2, 1.0).unwrap();
        assert_eq!(rf, 6.0 / 5.0);
    }

    #[test]
    fn loose_cap_allows_single_partition() {
        let rf = brute_force_min_rf(&edges(&[(0, 1), (1, 2), (2, 0)]), 2, 2.0).unwrap();
        assert_eq!(rf, 1.0);
    }

    #[test]
    fn refuses_large_instances() {
        let many: Vec<Edge> = (0..11).map(|i| Edge::new(i, i + 1)).collect();
        assert!(matches!(
            brute_force_min_rf(&many, 2, 1.0),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            brute_force_min_rf(&edges(&[(0, 1)]), 4, 1.0),
            Err(Error::TooLarge(_))
        ));
    }
}

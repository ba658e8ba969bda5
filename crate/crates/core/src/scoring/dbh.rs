use crate::io::{DegreeTable, Edge, VertexId};
use crate::scoring::state::PartitionId;

/// SplitMix64 finalizer (Steele, Lea & Flood constants).
#[inline]
pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Endpoint with the smaller degree; equal degrees pick the smaller id.
pub fn lower_degree_endpoint(e: Edge, degrees: &DegreeTable) -> VertexId {
    let (du, dv) = (degrees.get(e.first), degrees.get(e.second));
    if du < dv || (du == dv && e.first <= e.second) {
        e.first
    } else {
        e.second
    }
}

/// Degree-based hashing: hash the lower-degree endpoint modulo `k`.
pub fn dbh_assign(e: Edge, degrees: &DegreeTable, k: usize) -> PartitionId {
    assert!(k > 0, "k must be positive");
    (mix64(lower_degree_endpoint(e, degrees) as u64) % k as u64) as PartitionId
}

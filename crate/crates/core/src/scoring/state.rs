use crate::io::VertexId;

pub type PartitionId = u32;

/// Hard per-partition edge cap `ceil(α·|E| / k)`.
///
/// Products that land within float noise above an integer are snapped down
/// to it, so `1.1 · 100 / 2` gives 55 rather than 56.
pub fn capacity(alpha: f64, edge_count: u64, k: usize) -> u64 {
    let exact = alpha * edge_count as f64 / k as f64;
    let floor = exact.floor();
    if exact - floor <= 1e-9 * exact.max(1.0) {
        floor as u64
    } else {
        exact.ceil() as u64
    }
}

/// `|V| × k` bit matrix; bit `(v, p)` is set iff `v ∈ V(p)`.
#[derive(Clone, Debug)]
pub struct ReplicationMatrix {
    rows: usize,
    k: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl ReplicationMatrix {
    pub fn new(vertex_count: usize, k: usize) -> Self {
        let words_per_row = k.div_ceil(64);
        ReplicationMatrix {
            rows: vertex_count,
            k,
            words_per_row,
            bits: vec![0; vertex_count * words_per_row],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Logical cell count `|V| · k`.
    pub fn cell_count(&self) -> usize {
        self.rows * self.k
    }

    #[inline]
    fn slot(&self, v: VertexId, p: PartitionId) -> (usize, u64) {
        debug_assert!((p as usize) < self.k);
        let word = v as usize * self.words_per_row + p as usize / 64;
        (word, 1u64 << (p % 64))
    }

    #[inline]
    pub fn contains(&self, v: VertexId, p: PartitionId) -> bool {
        let (w, mask) = self.slot(v, p);
        self.bits[w] & mask != 0
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId, p: PartitionId) {
        let (w, mask) = self.slot(v, p);
        self.bits[w] |= mask;
    }

    fn row(&self, v: VertexId) -> &[u64] {
        let start = v as usize * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    pub fn row_weight(&self, v: VertexId) -> u32 {
        self.row(v).iter().map(|w| w.count_ones()).sum()
    }

    pub fn partitions_of(&self, v: VertexId) -> impl Iterator<Item = PartitionId> + '_ {
        (0..self.k as PartitionId).filter(move |&p| self.contains(v, p))
    }

    /// `Σ_p |V(p)|`.
    pub fn total_replicas(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Vertices present in at least one partition.
    pub fn covered_vertices(&self) -> usize {
        self.bits
            .chunks_exact(self.words_per_row.max(1))
            .filter(|row| row.iter().any(|&w| w != 0))
            .count()
    }

    /// `Σ_p |V(p)| / |V'|`, or `None` when no vertex is covered.
    pub fn replication_factor(&self) -> Option<f64> {
        let covered = self.covered_vertices();
        (covered > 0).then(|| self.total_replicas() as f64 / covered as f64)
    }
}

/// Edge counts per partition, optionally with a hard cap.
#[derive(Clone, Debug)]
pub struct PartitionLoads {
    sizes: Vec<u64>,
    capacity: Option<u64>,
}

impl PartitionLoads {
    pub fn new(k: usize, capacity: Option<u64>) -> Self {
        PartitionLoads {
            sizes: vec![0; k],
            capacity,
        }
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn size(&self, p: PartitionId) -> u64 {
        self.sizes[p as usize]
    }

    pub fn capacity(&self) -> Option<u64> {
        self.capacity
    }

    pub fn is_full(&self, p: PartitionId) -> bool {
        self.capacity.is_some_and(|c| self.sizes[p as usize] >= c)
    }

    /// Partitions still below capacity, ascending.
    pub fn open_partitions(&self) -> impl Iterator<Item = PartitionId> + '_ {
        (0..self.k() as PartitionId).filter(move |&p| !self.is_full(p))
    }

    pub fn all_partitions(&self) -> impl Iterator<Item = PartitionId> {
        0..self.k() as PartitionId
    }

    pub fn increment(&mut self, p: PartitionId) {
        self.sizes[p as usize] += 1;
        debug_assert!(
            self.capacity.is_none_or(|c| self.sizes[p as usize] <= c),
            "partition {p} exceeded its capacity"
        );
    }

    pub fn max(&self) -> u64 {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn min(&self) -> u64 {
        self.sizes.iter().copied().min().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }
}

/// Replication matrix plus loads: the full partitioning state.
#[derive(Clone, Debug)]
pub struct PartitionState {
    pub matrix: ReplicationMatrix,
    pub loads: PartitionLoads,
}

impl PartitionState {
    pub fn new(vertex_count: usize, k: usize, capacity: Option<u64>) -> Self {
        PartitionState {
            matrix: ReplicationMatrix::new(vertex_count, k),
            loads: PartitionLoads::new(k, capacity),
        }
    }

    pub fn k(&self) -> usize {
        self.loads.k()
    }

    /// Records `e` on `p`: sets both cover bits and bumps the load.
    pub fn place(&mut self, first: VertexId, second: VertexId, p: PartitionId) {
        self.matrix.insert(first, p);
        self.matrix.insert(second, p);
        self.loads.increment(p);
    }
}

use std::ops::Index;

use crate::error::Result;
use crate::io::stream::{EdgeStream, VertexId};

/// True per-vertex degrees. A self-loop adds 2 to its endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeTable {
    degrees: Vec<u64>,
}

impl DegreeTable {
    pub fn from_vec(degrees: Vec<u64>) -> Self {
        DegreeTable { degrees }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.degrees.get(v as usize).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.degrees
    }

    pub fn total(&self) -> u64 {
        self.degrees.iter().sum()
    }

    /// Vertices with at least one incident edge.
    pub fn covered_vertices(&self) -> usize {
        self.degrees.iter().filter(|&&d| d > 0).count()
    }
}

impl Index<VertexId> for DegreeTable {
    type Output = u64;

    fn index(&self, v: VertexId) -> &u64 {
        &self.degrees[v as usize]
    }
}

/// One full pass over `stream` counting edge endpoints per vertex.
///
/// The table length is the declared vertex count, or `max id + 1` otherwise.
pub fn compute_degrees(stream: &EdgeStream) -> Result<DegreeTable> {
    let mut degrees = vec![0u64; stream.declared_vertex_count().unwrap_or(0)];
    stream.for_each(|_, e| {
        let hi = e.first.max(e.second) as usize;
        if hi >= degrees.len() {
            // only reachable without a declared count; the stream rejects
            // out-of-range ids otherwise
            degrees.resize(hi + 1, 0);
        }
        degrees[e.first as usize] += 1;
        degrees[e.second as usize] += 1;
        Ok(())
    })?;
    if let Some(n) = stream.vertex_count() {
        degrees.resize(n.max(degrees.len()), 0);
    }
    Ok(DegreeTable { degrees })
}

use std::fs::File;
use std::io::{BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Bytes per edge record: two little-endian `u32` vertex ids.
pub const EDGE_RECORD_BYTES: u64 = 8;

const READ_BUFFER_BYTES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub first: VertexId,
    pub second: VertexId,
}

impl Edge {
    pub const fn new(first: VertexId, second: VertexId) -> Self {
        Edge { first, second }
    }

    pub fn is_self_loop(&self) -> bool {
        self.first == self.second
    }

    pub fn to_le_bytes(self) -> [u8; 8] {
        let mut buf = [0u8; 8];
        buf[..4].copy_from_slice(&self.first.to_le_bytes());
        buf[4..].copy_from_slice(&self.second.to_le_bytes());
        buf
    }

    pub fn from_le_bytes(buf: [u8; 8]) -> Self {
        Edge {
            first: u32::from_le_bytes([buf[0], buf[1], buf[2], buf[3]]),
            second: u32::from_le_bytes([buf[4], buf[5], buf[6], buf[7]]),
        }
    }
}

impl From<(VertexId, VertexId)> for Edge {
    fn from((first, second): (VertexId, VertexId)) -> Self {
        Edge { first, second }
    }
}

#[derive(Debug, Clone)]
enum Source {
    File(PathBuf),
    Memory(Arc<[Edge]>),
}

/// A restreamable sequence of edges backed by a binary edge-list file or an
/// in-memory buffer.
///
/// Every pass opens its own cursor, so independent readers may stream the
/// same `EdgeStream` concurrently. The vertex count is either declared up
/// front or inferred as `max id + 1` at the end of the first complete pass.
#[derive(Debug)]
pub struct EdgeStream {
    source: Source,
    edge_count: u64,
    declared_vertices: Option<usize>,
    inferred_vertices: OnceLock<usize>,
    completed_passes: AtomicU64,
}

/// Opens a binary edge list of 32-bit little-endian vertex id pairs.
pub fn open_stream(path: impl AsRef<Path>) -> Result<EdgeStream> {
    EdgeStream::open(path)
}

impl EdgeStream {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let len = std::fs::metadata(path)?.len();
        if len % EDGE_RECORD_BYTES != 0 {
            return Err(Error::TruncatedRecord {
                path: path.to_path_buf(),
                len,
            });
        }
        Ok(EdgeStream {
            source: Source::File(path.to_path_buf()),
            edge_count: len / EDGE_RECORD_BYTES,
            declared_vertices: None,
            inferred_vertices: OnceLock::new(),
            completed_passes: AtomicU64::new(0),
        })
    }

    pub fn from_edges(edges: impl Into<Vec<Edge>>) -> Self {
        let edges: Vec<Edge> = edges.into();
        EdgeStream {
            edge_count: edges.len() as u64,
            source: Source::Memory(edges.into()),
            declared_vertices: None,
            inferred_vertices: OnceLock::new(),
            completed_passes: AtomicU64::new(0),
        }
    }

    pub fn from_pairs(pairs: &[(VertexId, VertexId)]) -> Self {
        Self::from_edges(pairs.iter().copied().map(Edge::from).collect::<Vec<_>>())
    }

    /// Declares |V|. Any id `>= n` met during a pass is an error.
    pub fn with_vertex_count(mut self, n: usize) -> Self {
        self.declared_vertices = Some(n);
        self
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// |V| if declared or already inferred by a complete pass.
    pub fn vertex_count(&self) -> Option<usize> {
        self.declared_vertices
            .or_else(|| self.inferred_vertices.get().copied())
    }

    pub fn declared_vertex_count(&self) -> Option<usize> {
        self.declared_vertices
    }

    /// Number of full passes completed over this stream so far.
    pub fn completed_passes(&self) -> u64 {
        self.completed_passes.load(Ordering::Relaxed)
    }

    pub fn path(&self) -> Option<&Path> {
        match &self.source {
            Source::File(p) => Some(p),
            Source::Memory(_) => None,
        }
    }

    /// Starts a new pass with its own cursor.
    pub fn edges(&self) -> Result<EdgeReader<'_>> {
        let cursor = match &self.source {
            Source::File(path) => {
                let file = File::open(path)?;
                let len = file.metadata()?.len();
                if len != self.edge_count * EDGE_RECORD_BYTES {
                    return Err(Error::TruncatedRecord {
                        path: path.clone(),
                        len,
                    });
                }
                Cursor::File(BufReader::with_capacity(READ_BUFFER_BYTES, file))
            }
            Source::Memory(edges) => Cursor::Memory(Arc::clone(edges)),
        };
        Ok(EdgeReader {
            stream: self,
            cursor,
            position: 0,
            max_id: None,
            done: false,
        })
    }

    /// Runs one full pass, handing each edge and its stream index to `f`.
    pub fn for_each<F>(&self, mut f: F) -> Result<()>
    where
        F: FnMut(u64, Edge) -> Result<()>,
    {
        let mut reader = self.edges()?;
        while let Some(edge) = reader.next() {
            let index = reader.position - 1;
            f(index, edge?)?;
        }
        Ok(())
    }

    fn finish_pass(&self, max_id: Option<VertexId>) {
        if self.declared_vertices.is_none() {
            let n = max_id.map_or(0, |m| m as usize + 1);
            let _ = self.inferred_vertices.set(n);
        }
        self.completed_passes.fetch_add(1, Ordering::Relaxed);
    }
}

enum Cursor {
    File(BufReader<File>),
    Memory(Arc<[Edge]>),
}

/// Cursor over one pass of an [`EdgeStream`].
pub struct EdgeReader<'a> {
    stream: &'a EdgeStream,
    cursor: Cursor,
    position: u64,
    max_id: Option<VertexId>,
    done: bool,
}

impl EdgeReader<'_> {
    fn read_raw(&mut self) -> Result<Edge> {
        match &mut self.cursor {
            Cursor::File(reader) => {
                let mut buf = [0u8; 8];
                reader.read_exact(&mut buf).map_err(|e| {
                    if e.kind() == ErrorKind::UnexpectedEof {
                        Error::TruncatedRecord {
                            path: self.stream.path().unwrap_or(Path::new("")).to_path_buf(),
                            len: self.position * EDGE_RECORD_BYTES,
                        }
                    } else {
                        Error::Io(e)
                    }
                })?;
                Ok(Edge::from_le_bytes(buf))
            }
            Cursor::Memory(edges) => Ok(edges[self.position as usize]),
        }
    }
}

impl Iterator for EdgeReader<'_> {
    type Item = Result<Edge>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.position == self.stream.edge_count {
            self.done = true;
            self.stream.finish_pass(self.max_id);
            return None;
        }
        let edge = match self.read_raw() {
            Ok(e) => e,
            Err(e) => {
                self.done = true;
                return Some(Err(e));
            }
        };
        self.position += 1;
        if let Some(n) = self.stream.declared_vertices {
            for v in [edge.first, edge.second] {
                if v as usize >= n {
                    self.done = true;
                    return Some(Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count: n,
                    }));
                }
            }
        }
        let hi = edge.first.max(edge.second);
        self.max_id = Some(self.max_id.map_or(hi, |m| m.max(hi)));
        Some(Ok(edge))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.stream.edge_count - self.position) as usize;
        (left, Some(left))
    }
}

/// Writes edges in the binary edge-list format and returns the edge count.
pub fn write_edges<I>(path: impl AsRef<Path>, edges: I) -> Result<u64>
where
    I: IntoIterator<Item = Edge>,
{
    let mut out = BufWriter::new(File::create(path)?);
    let mut n = 0u64;
    for e in edges {
        out.write_all(&e.to_le_bytes())?;
        n += 1;
    }
    out.flush()?;
    Ok(n)
}

/// Reads a whole file of little-endian `u32` values (assignments, cluster ids).
pub fn read_u32_file(path: impl AsRef<Path>) -> Result<Vec<u32>> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() % 4 != 0 {
        return Err(Error::TruncatedIdFile {
            path: path.to_path_buf(),
            len: bytes.len() as u64,
        });
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}

pub fn write_u32_file<I>(path: impl AsRef<Path>, values: I) -> Result<()>
where
    I: IntoIterator<Item = u32>,
{
    let mut out = BufWriter::new(File::create(path)?);
    for v in values {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

//! Consumers of `(edge index, partition)` records.
//!
//! Partitioners emit records pass by pass; within a pass indices ascend.
//! [`AssignmentFileWriter`] merges the per-pass runs by index through
//! temporary spill files, so no sink buffers `|E|` records in memory.

use std::fs::File;
use std::io::{BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::scoring::PartitionId;

/// Environment variable overriding the directory used for spill files.
pub const TMPDIR_ENV: &str = "TWOPS_TMPDIR";

pub fn spill_dir() -> PathBuf {
    std::env::var_os(TMPDIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir)
}

pub trait AssignmentSink {
    fn record(&mut self, edge_index: u64, partition: PartitionId) -> Result<()>;

    /// Called after each partitioning pass.
    fn end_pass(&mut self) -> Result<()> {
        Ok(())
    }
}

impl<S: AssignmentSink + ?Sized> AssignmentSink for &mut S {
    fn record(&mut self, edge_index: u64, partition: PartitionId) -> Result<()> {
        (**self).record(edge_index, partition)
    }

    fn end_pass(&mut self) -> Result<()> {
        (**self).end_pass()
    }
}

/// Discards records, counting them.
#[derive(Debug, Default)]
pub struct NullSink {
    pub records: u64,
}

impl AssignmentSink for NullSink {
    fn record(&mut self, _: u64, _: PartitionId) -> Result<()> {
        self.records += 1;
        Ok(())
    }
}

/// Keeps every record in memory, grouped by pass. Intended for tests and
/// small graphs.
#[derive(Debug, Default)]
pub struct VecSink {
    passes: Vec<Vec<(u64, PartitionId)>>,
    open: Vec<(u64, PartitionId)>,
}

impl VecSink {
    pub fn new() -> Self {
        Self::default()
    }

    /// Closed passes plus the currently open one, if non-empty.
    pub fn passes(&self) -> Vec<&[(u64, PartitionId)]> {
        let mut all: Vec<&[(u64, PartitionId)]> = self.passes.iter().map(Vec::as_slice).collect();
        if !self.open.is_empty() {
            all.push(&self.open);
        }
        all
    }

    pub fn records(&self) -> impl Iterator<Item = (u64, PartitionId)> + '_ {
        self.passes.iter().flatten().chain(&self.open).copied()
    }

    /// Merges all passes into one partition id per edge, in stream order.
    /// Fails unless every index in `0..edge_count` appears exactly once.
    pub fn into_ordered(self, edge_count: u64) -> Result<Vec<PartitionId>> {
        let mut out = vec![None; edge_count as usize];
        for (i, p) in self.records() {
            let slot = out.get_mut(i as usize).ok_or_else(|| {
                Error::Assignment(format!("edge index {i} beyond {edge_count} edges"))
            })?;
            if slot.replace(p).is_some() {
                return Err(Error::Assignment(format!("edge {i} assigned twice")));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::Assignment(format!("edge {i} never assigned"))))
            .collect()
    }
}

impl AssignmentSink for VecSink {
    fn record(&mut self, edge_index: u64, partition: PartitionId) -> Result<()> {
        self.open.push((edge_index, partition));
        Ok(())
    }

    fn end_pass(&mut self) -> Result<()> {
        self.passes.push(std::mem::take(&mut self.open));
        Ok(())
    }
}

const RECORD_BYTES: usize = 12;

struct RunReader {
    reader: BufReader<File>,
    peeked: Option<(u64, PartitionId)>,
    _file: NamedTempFile,
}

impl RunReader {
    fn open(file: NamedTempFile) -> Result<Self> {
        let reader = BufReader::with_capacity(1 << 16, file.reopen()?);
        let mut run = RunReader {
            reader,
            peeked: None,
            _file: file,
        };
        run.advance()?;
        Ok(run)
    }

    fn advance(&mut self) -> Result<()> {
        let mut buf = [0u8; RECORD_BYTES];
        self.peeked = match self.reader.read_exact(&mut buf) {
            Ok(()) => Some((
                u64::from_le_bytes(buf[..8].try_into().unwrap()),
                u32::from_le_bytes(buf[8..].try_into().unwrap()),
            )),
            Err(e) if e.kind() == ErrorKind::UnexpectedEof => None,
            Err(e) => return Err(e.into()),
        };
        Ok(())
    }

    fn peek(&self) -> Option<(u64, PartitionId)> {
        self.peeked
    }

    fn pop(&mut self) -> Result<Option<(u64, PartitionId)>> {
        let head = self.peeked;
        if head.is_some() {
            self.advance()?;
        }
        Ok(head)
    }
}

struct RunWriter {
    writer: BufWriter<File>,
    file: NamedTempFile,
}

impl RunWriter {
    fn create(dir: &Path) -> Result<Self> {
        let file = NamedTempFile::new_in(dir)?;
        let writer = BufWriter::with_capacity(1 << 16, file.reopen()?);
        Ok(RunWriter { writer, file })
    }

    fn push(&mut self, (index, p): (u64, PartitionId)) -> Result<()> {
        self.writer.write_all(&index.to_le_bytes())?;
        self.writer.write_all(&p.to_le_bytes())?;
        Ok(())
    }

    fn close(mut self) -> Result<NamedTempFile> {
        self.writer.flush()?;
        Ok(self.file)
    }
}

/// Writes the final assignment file: one little-endian `u32` partition id
/// per edge, in stream order.
pub struct AssignmentFileWriter {
    out_path: PathBuf,
    edge_count: u64,
    dir: PathBuf,
    merged: Option<RunReader>,
    current: RunWriter,
    last_index: Option<u64>,
}

impl AssignmentFileWriter {
    /// Spill files go to [`spill_dir`].
    pub fn create(out_path: impl AsRef<Path>, edge_count: u64) -> Result<Self> {
        Self::create_in(out_path, edge_count, spill_dir())
    }

    pub fn create_in(
        out_path: impl AsRef<Path>,
        edge_count: u64,
        dir: impl AsRef<Path>,
    ) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        Ok(AssignmentFileWriter {
            out_path: out_path.as_ref().to_path_buf(),
            edge_count,
            current: RunWriter::create(&dir)?,
            dir,
            merged: None,
            last_index: None,
        })
    }

    fn drain_below(&mut self, bound: Option<u64>) -> Result<()> {
        let Some(merged) = self.merged.as_mut() else {
            return Ok(());
        };
        while let Some((i, _)) = merged.peek() {
            if bound.is_some_and(|b| i >= b) {
                break;
            }
            let rec = merged.pop()?.expect("peeked");
            self.current.push(rec)?;
        }
        Ok(())
    }

    /// Closes the last pass and writes the output file, checking that every
    /// edge index was recorded exactly once.
    pub fn finish(mut self) -> Result<()> {
        self.end_pass()?;
        let mut out = BufWriter::new(File::create(&self.out_path)?);
        let mut expected = 0u64;
        if let Some(mut merged) = self.merged.take() {
            while let Some((i, p)) = merged.pop()? {
                if i != expected {
                    return Err(Error::Assignment(format!(
                        "edge {expected} never assigned (next record is {i})"
                    )));
                }
                out.write_all(&p.to_le_bytes())?;
                expected += 1;
            }
        }
        if expected != self.edge_count {
            return Err(Error::Assignment(format!(
                "{expected} of {} edges assigned",
                self.edge_count
            )));
        }
        out.flush()?;
        Ok(())
    }
}

impl AssignmentSink for AssignmentFileWriter {
    fn record(&mut self, edge_index: u64, partition: PartitionId) -> Result<()> {
        if self.last_index.is_some_and(|l| edge_index <= l) {
            return Err(Error::Assignment(format!(
                "edge {edge_index} recorded out of stream order"
            )));
        }
        if edge_index >= self.edge_count {
            return Err(Error::Assignment(format!(
                "edge index {edge_index} beyond {} edges",
                self.edge_count
            )));
        }
        self.drain_below(Some(edge_index))?;
        if let Some((i, _)) = self.merged.as_ref().and_then(RunReader::peek) {
            if i == edge_index {
                return Err(Error::Assignment(format!(
                    "edge {edge_index} assigned twice"
                )));
            }
        }
        self.current.push((edge_index, partition))?;
        self.last_index = Some(edge_index);
        Ok(())
    }

    fn end_pass(&mut self) -> Result<()> {
        if self.last_index.is_none() && self.merged.is_some() {
            // nothing recorded since the last merge
            return Ok(());
        }
        self.drain_below(None)?;
        let finished = std::mem::replace(&mut self.current, RunWriter::create(&self.dir)?);
        self.merged = Some(RunReader::open(finished.close()?)?);
        self.last_index = None;
        Ok(())
    }
}

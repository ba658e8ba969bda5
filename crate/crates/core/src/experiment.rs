//! Synthetic power-law sweep: generate, partition, measure.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, PartitionerConfig, DEFAULT_ALPHA};
use crate::error::{Error, Result};
use crate::io::{generate_power_law, GeneratorConfig};
use crate::partitioning::NullSink;
use crate::run_partitioner;
use crate::scoring::DEFAULT_LAMBDA;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub exponents: Vec<f64>,
    pub n_vertices: usize,
    pub k: usize,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    pub alpha: f64,
    pub lambda: f64,
    /// Partitioner runs per cell; timings are averaged.
    pub repetitions: usize,
}

impl ExperimentSpec {
    pub fn new(
        exponents: Vec<f64>,
        n_vertices: usize,
        k: usize,
        seeds: Vec<u64>,
        algorithms: Vec<Algorithm>,
    ) -> Self {
        ExperimentSpec {
            exponents,
            n_vertices,
            k,
            seeds,
            algorithms,
            alpha: DEFAULT_ALPHA,
            lambda: DEFAULT_LAMBDA,
            repetitions: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.exponents.is_empty() {
            return Err(Error::config("exponent list is empty"));
        }
        if self.seeds.is_empty() {
            return Err(Error::config("seed list is empty"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::config("algorithm list is empty"));
        }
        if self.repetitions == 0 {
            return Err(Error::config("repetitions must be at least 1"));
        }
        self.partitioner_config().validate(2)?;
        for &a in &self.exponents {
            GeneratorConfig::new(self.n_vertices, a, 0).validate()?;
        }
        Ok(())
    }

    fn partitioner_config(&self) -> PartitionerConfig {
        PartitionerConfig::new(self.k)
            .with_alpha(self.alpha)
            .with_lambda(self.lambda)
    }
}

/// One (exponent, seed, algorithm) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub exponent: f64,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub edges: u64,
    pub rf: f64,
    pub modularity: Option<f64>,
    pub prepartitioned_ratio: Option<f64>,
    pub alpha_observed: f64,
    pub seconds: f64,
    /// `None` on success, the error message otherwise.
    pub error: Option<String>,
}

impl SweepRow {
    fn failed(exponent: f64, seed: u64, algorithm: Algorithm, err: &Error) -> Self {
        SweepRow {
            exponent,
            seed,
            algorithm,
            edges: 0,
            rf: f64::NAN,
            modularity: None,
            prepartitioned_ratio: None,
            alpha_observed: f64::NAN,
            seconds: 0.0,
            error: Some(err.to_string()),
        }
    }

    pub fn ok(&self) -> bool {
        self.error.is_none()
    }
}

/// Seed-averaged metrics for one (exponent, algorithm) pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub exponent: f64,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub rf: f64,
    pub modularity: Option<f64>,
    pub prepartitioned_ratio: Option<f64>,
}

fn run_cell(spec: &ExperimentSpec, dir: &Path, exponent: f64, seed: u64) -> Vec<SweepRow> {
    let path = dir.join(format!("powerlaw-{exponent}-{seed}.bin"));
    let gen = GeneratorConfig::new(spec.n_vertices, exponent, seed);
    let stream = match generate_power_law(&gen, &path) {
        Ok(s) => s,
        Err(e) => {
            return spec
                .algorithms
                .iter()
                .map(|&a| SweepRow::failed(exponent, seed, a, &e))
                .collect()
        }
    };
    let config = spec.partitioner_config();
    let rows = spec
        .algorithms
        .iter()
        .map(|&algorithm| {
            let mut seconds = 0.0;
            let mut last = None;
            for _ in 0..spec.repetitions {
                match run_partitioner(&stream, algorithm, &config, NullSink::default()) {
                    Ok(report) => {
                        seconds += report.total_seconds();
                        last = Some(report);
                    }
                    Err(e) => return SweepRow::failed(exponent, seed, algorithm, &e),
                }
            }
            let report = last.expect("repetitions >= 1");
            SweepRow {
                exponent,
                seed,
                algorithm,
                edges: report.edges,
                rf: report.rf,
                modularity: report.modularity,
                prepartitioned_ratio: report.prepartitioned_ratio,
                alpha_observed: report.alpha_observed,
                seconds: seconds / spec.repetitions as f64,
                error: None,
            }
        })
        .collect();
    let _ = std::fs::remove_file(&path);
    rows
}

/// Runs every cell, in parallel across (exponent, seed) pairs, with graphs
/// written under `dir`. Failed cells are reported in their row.
pub fn run_sweep(spec: &ExperimentSpec, dir: impl AsRef<Path>) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let dir = dir.as_ref();
    let cells: Vec<(f64, u64)> = spec
        .exponents
        .iter()
        .flat_map(|&a| spec.seeds.iter().map(move |&s| (a, s)))
        .collect();
    Ok(cells
        .par_iter()
        .flat_map_iter(|&(a, s)| run_cell(spec, dir, a, s))
        .collect())
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Averages successful rows over seeds.
pub fn summarize(spec: &ExperimentSpec, rows: &[SweepRow]) -> Vec<SweepSummary> {
    let mut out = Vec::new();
    for &exponent in &spec.exponents {
        for &algorithm in &spec.algorithms {
            let cell: Vec<&SweepRow> = rows
                .iter()
                .filter(|r| r.ok() && r.exponent == exponent && r.algorithm == algorithm)
                .collect();
            if cell.is_empty() {
                continue;
            }
            out.push(SweepSummary {
                exponent,
                algorithm,
                runs: cell.len(),
                rf: mean(cell.iter().map(|r| r.rf)).unwrap(),
                modularity: mean(cell.iter().filter_map(|r| r.modularity)),
                prepartitioned_ratio: mean(cell.iter().filter_map(|r| r.prepartitioned_ratio)),
            });
        }
    }
    out
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"))
}

/// Tab-separated table, one row per cell, with a header line.
pub fn rows_to_tsv(rows: &[SweepRow]) -> String {
    let mut out =
        String::from("exponent\tseed\talgo\tedges\trf\tmodularity\tprepartitioned_ratio\talpha_observed\tseconds\tstatus\n");
    for r in rows {
        let status = r
            .error
            .as_deref()
            .map_or("ok".to_string(), |e| format!("failed: {e}"));
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{:.6}\t{}\t{}\t{:.6}\t{:.6}\t{}",
            r.exponent,
            r.seed,
            r.algorithm,
            r.edges,
            r.rf,
            opt(r.modularity),
            opt(r.prepartitioned_ratio),
            r.alpha_observed,
            r.seconds,
            status
        );
    }
    out
}

pub fn summary_to_text(summary: &[SweepSummary]) -> String {
    let mut out = String::from("exponent  algo   runs  rf        modularity  prepartitioned\n");
    for s in summary {
        let _ = writeln!(
            out,
            "{:<9} {:<6} {:<5} {:<9.4} {:<11} {}",
            s.exponent,
            s.algorithm.name(),
            s.runs,
            s.rf,
            s.modularity.map_or("-".into(), |q| format!("{q:.4}")),
            s.prepartitioned_ratio
                .map_or("-".into(), |r| format!("{r:.4}")),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> ExperimentSpec {
        ExperimentSpec::new(
            vec![2.5, 3.5],
            500,
            4,
            vec![1, 2],
            vec![Algorithm::TwoPs, Algorithm::Hdrf],
        )
    }

    #[test]
    fn empty_exponent_list_is_rejected() {
        let mut spec = small_spec();
        spec.exponents.clear();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            run_sweep(&spec, dir.path()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn one_row_per_cell_and_deterministic() {
        let spec = small_spec();
        let dir = tempfile::tempdir().unwrap();
        let a = run_sweep(&spec, dir.path()).unwrap();
        let b = run_sweep(&spec, dir.path()).unwrap();
        assert_eq!(a.len(), 8);
        assert!(a.iter().all(SweepRow::ok));
        let strip = |rows: &[SweepRow]| -> Vec<(u64, u64)> {
            rows.iter().map(|r| (r.edges, r.rf.to_bits())).collect()
        };
        assert_eq!(strip(&a), strip(&b));
        let summary = summarize(&spec, &a);
        assert_eq!(summary.len(), 4);
        assert!(summary.iter().all(|s| s.runs == 2));
        let tsv = rows_to_tsv(&a);
        assert_eq!(tsv.lines().count(), 9);
        assert!(tsv.starts_with("exponent\tseed\talgo"));
    }

    #[test]
    fn invalid_exponent_is_a_config_error() {
        let mut spec = small_spec();
        spec.exponents = vec![0.5];
        let dir = tempfile::tempdir().unwrap();
        assert!(run_sweep(&spec, dir.path()).is_err());
    }
}

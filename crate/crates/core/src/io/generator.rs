//! Random power-law graphs via the configuration model.
//!
//! Degrees are drawn i.i.d. from `P(d) ∝ d^(-exponent)` on `[1, n - 1]`, then
//! degree stubs are shuffled and paired. Self-loops and repeated pairs are
//! kept as separate edges. When the stub total is odd, the spare stub is
//! paired with a stub of a uniformly chosen vertex, so the edge count is
//! `ceil(Σd / 2)`.
//!
//! The edge list is emitted in node order: each edge is stored as
//! `(min, max)` and the list is sorted, the layout produced by node-iterating
//! edge-list writers. Output is a pure function of the config.

use std::path::Path;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::stream::{write_edges, Edge, EdgeStream, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n_vertices: usize,
    pub power_law_exponent: f64,
    pub rng_seed: u64,
}

impl GeneratorConfig {
    pub fn new(n_vertices: usize, power_law_exponent: f64, rng_seed: u64) -> Self {
        GeneratorConfig {
            n_vertices,
            power_law_exponent,
            rng_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.power_law_exponent.is_finite() || self.power_law_exponent <= 1.0 {
            return Err(Error::config(format!(
                "power-law exponent must be a finite value > 1, got {}",
                self.power_law_exponent
            )));
        }
        if self.n_vertices < 2 {
            return Err(Error::config(format!(
                "generator needs at least 2 vertices, got {}",
                self.n_vertices
            )));
        }
        if self.n_vertices > VertexId::MAX as usize {
            return Err(Error::config("vertex count exceeds the 32-bit id space"));
        }
        Ok(())
    }
}

/// Samples the degree sequence only.
pub fn sample_degrees(cfg: &GeneratorConfig, rng: &mut impl Rng) -> Result<Vec<u64>> {
    cfg.validate()?;
    let max_degree = cfg.n_vertices - 1;
    let weights = (1..=max_degree).map(|d| (d as f64).powf(-cfg.power_law_exponent));
    let dist = WeightedIndex::new(weights)
        .map_err(|e| Error::config(format!("degree distribution: {e}")))?;
    Ok((0..cfg.n_vertices)
        .map(|_| dist.sample(rng) as u64 + 1)
        .collect())
}

pub fn generate_edges(cfg: &GeneratorConfig) -> Result<Vec<Edge>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let degrees = sample_degrees(cfg, &mut rng)?;

    let mut stubs: Vec<VertexId> = Vec::with_capacity(degrees.iter().sum::<u64>() as usize + 1);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v as VertexId, d as usize));
    }
    if stubs.len() % 2 == 1 {
        let extra = rng.random_range(0..cfg.n_vertices) as VertexId;
        stubs.push(extra);
    }
    stubs.shuffle(&mut rng);

    let mut edges: Vec<Edge> = stubs
        .chunks_exact(2)
        .map(|pair| Edge::new(pair[0].min(pair[1]), pair[0].max(pair[1])))
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

/// Generates a graph, writes it to `path`, and opens it as a stream with
/// the vertex count declared.
pub fn generate_power_law(cfg: &GeneratorConfig, path: impl AsRef<Path>) -> Result<EdgeStream> {
    let edges = generate_edges(cfg)?;
    write_edges(&path, edges)?;
    Ok(EdgeStream::open(path)?.with_vertex_count(cfg.n_vertices))
}

//! Independent reference implementations used as test oracles. None of
//! these call into the library code paths they are compared against.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Straight-line interpreter of the two-pass clustering pseudocode, using
/// hash maps and a floating-point volume bound.
pub fn interpret_clustering(edges: &[(u32, u32)], k: usize) -> HashMap<u32, usize> {
    let mut d: HashMap<u32, i64> = HashMap::new();
    for &(u, v) in edges {
        *d.entry(u).or_default() += 1;
        *d.entry(v).or_default() += 1;
    }
    let mut vol: HashMap<usize, i64> = HashMap::new();
    let mut v2c: HashMap<u32, usize> = HashMap::new();
    let mut next_id = 0usize;
    let mut max_vol = (2.0 * edges.len() as f64 / k as f64) * 0.5;

    for pass in 0..2 {
        if pass == 1 {
            max_vol *= 2.0;
        }
        for &(a, b) in edges {
            for v in [a, b] {
                if let std::collections::hash_map::Entry::Vacant(slot) = v2c.entry(v) {
                    slot.insert(next_id);
                    *vol.entry(next_id).or_default() += d[&v];
                    next_id += 1;
                }
            }
            if a == b {
                continue;
            }
            let vol_of = |v: u32, vol: &HashMap<usize, i64>| vol[&v2c[&v]] as f64;
            if vol_of(a, &vol) <= max_vol && vol_of(b, &vol) <= max_vol {
                let (vs, vl) = if vol_of(a, &vol) <= vol_of(b, &vol) {
                    (a, b)
                } else {
                    (b, a)
                };
                if vol_of(vl, &vol) + d[&vs] as f64 <= max_vol {
                    let from = v2c[&vs];
                    let to = v2c[&vl];
                    v2c.insert(vs, to);
                    *vol.get_mut(&to).unwrap() += d[&vs];
                    *vol.get_mut(&from).unwrap() -= d[&vs];
                }
            }
        }
    }
    v2c
}

/// `Q = (1/2m) Σ_u Σ_v (A_uv − d_u d_v / 2m) δ(c_u, c_v)` over a dense
/// adjacency matrix; self-loops put 2 on the diagonal.
pub fn double_sum_modularity(edges: &[(u32, u32)], cluster: &dyn Fn(u32) -> u64) -> f64 {
    let n = edges
        .iter()
        .map(|&(a, b)| a.max(b) as usize + 1)
        .max()
        .unwrap_or(0);
    let mut adj = vec![vec![0.0f64; n]; n];
    for &(a, b) in edges {
        let (a, b) = (a as usize, b as usize);
        if a == b {
            adj[a][a] += 2.0;
        } else {
            adj[a][b] += 1.0;
            adj[b][a] += 1.0;
        }
    }
    let deg: Vec<f64> = adj.iter().map(|row| row.iter().sum()).collect();
    let two_m = 2.0 * edges.len() as f64;
    let mut q = 0.0;
    for u in 0..n {
        for v in 0..n {
            if cluster(u as u32) == cluster(v as u32) {
                q += adj[u][v] - deg[u] * deg[v] / two_m;
            }
        }
    }
    q / two_m
}

/// Optimal makespan by exhaustive assignment of jobs to machines.
pub fn brute_force_makespan(sizes: &[u64], machines: usize) -> u64 {
    fn go(i: usize, sizes: &[u64], loads: &mut Vec<u64>, best: &mut u64) {
        let current = *loads.iter().max().unwrap();
        if current >= *best {
            return;
        }
        if i == sizes.len() {
            *best = current;
            return;
        }
        let mut seen = Vec::new();
        for m in 0..loads.len() {
            // machines with equal load are interchangeable
            if seen.contains(&loads[m]) {
                continue;
            }
            seen.push(loads[m]);
            loads[m] += sizes[i];
            go(i + 1, sizes, loads, best);
            loads[m] -= sizes[i];
        }
    }
    let mut best = u64::MAX;
    go(0, sizes, &mut vec![0; machines], &mut best);
    best
}

/// Random multigraph on `n` vertices with up to `max_edges` edges,
/// self-loops included.
pub fn random_small_graph(rng: &mut ChaCha8Rng, n: u32, max_edges: usize) -> Vec<(u32, u32)> {
    let m = rng.random_range(0..=max_edges);
    (0..m)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random edges over `n` vertices.
pub fn uniform_edges(n: u32, m: u64, seed: u64) -> impl Iterator<Item = twops::Edge> {
    let mut r = rng(seed);
    (0..m).map(move |_| twops::Edge::new(r.random_range(0..n), r.random_range(0..n)))
}

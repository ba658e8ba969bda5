mod common;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use proptest::prelude::*;

use twops::io::{generate_edges, generate_power_law, read_u32_file, write_edges};
use twops::metrics::{brute_force_min_rf, modularity, replication_factor_from_assignment};
use twops::partitioning::{prepartition_target, run_2ps_detailed, sorted_list_schedule};
use twops::{
    capacity, compute_degrees, streaming_clustering, AssignmentFileWriter, AssignmentSink, Edge,
    EdgeStream, GeneratorConfig, NullSink, PartitionId, PartitionerConfig, VecSink, UNASSIGNED,
};

use common::{brute_force_makespan, double_sum_modularity, interpret_clustering};

/// Records every assignment and checks the cap after each one.
struct CapCheckingSink {
    cap: u64,
    sizes: Vec<u64>,
    inner: VecSink,
}

impl AssignmentSink for CapCheckingSink {
    fn record(&mut self, i: u64, p: PartitionId) -> twops::Result<()> {
        self.sizes[p as usize] += 1;
        assert!(
            self.sizes[p as usize] <= self.cap,
            "partition {p} over cap {}",
            self.cap
        );
        self.inner.record(i, p)
    }

    fn end_pass(&mut self) -> twops::Result<()> {
        self.inner.end_pass()
    }
}

fn edges_strategy(max_vertex: u32, max_edges: usize) -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0..max_vertex, 0..max_vertex), 0..max_edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn clustering_matches_pseudocode_interpreter(pairs in edges_strategy(10, 13), k in 2usize..6) {
        let s = EdgeStream::from_pairs(&pairs);
        let d = compute_degrees(&s).unwrap();
        let state = streaming_clustering(&s, &d, k).unwrap();
        let expected = interpret_clustering(&pairs, k);
        for (v, &c) in state.v2c().iter().enumerate() {
            match expected.get(&(v as u32)) {
                Some(&e) => prop_assert_eq!(c as usize, e),
                None => prop_assert_eq!(c, UNASSIGNED),
            }
        }
    }

    #[test]
    fn streaming_modularity_matches_double_sum(
        pairs in edges_strategy(9, 13),
        labels in prop::collection::vec(0u32..4, 9),
    ) {
        prop_assume!(!pairs.is_empty());
        let s = EdgeStream::from_pairs(&pairs);
        let d = compute_degrees(&s).unwrap();
        let v2c = &labels[..d.len()];
        let q = modularity(&s, v2c, &d).unwrap().unwrap();
        let oracle = double_sum_modularity(&pairs, &|v| labels[v as usize] as u64);
        prop_assert!((q - oracle).abs() < 1e-9, "{} vs {}", q, oracle);
    }

    #[test]
    fn list_scheduling_within_four_thirds(
        sizes in prop::collection::vec(0u64..40, 1..=10),
        k in 2usize..4,
    ) {
        let (_, loads) = sorted_list_schedule(&sizes, k);
        let graham = *loads.iter().max().unwrap();
        let opt = brute_force_makespan(&sizes, k);
        prop_assert!(3 * graham <= 4 * opt, "graham {} opt {}", graham, opt);
        prop_assert_eq!(loads.iter().sum::<u64>(), sizes.iter().sum::<u64>());
    }

    #[test]
    fn two_phase_invariants(
        pairs in edges_strategy(40, 250),
        k in 2usize..6,
        alpha_pct in prop::sample::select(vec![100u32, 105, 110, 150]),
    ) {
        let s = EdgeStream::from_pairs(&pairs);
        let m = s.edge_count();
        let alpha = alpha_pct as f64 / 100.0;
        let cap = capacity(alpha, m, k);
        let config = PartitionerConfig::new(k).with_alpha(alpha);
        let mut sink = CapCheckingSink { cap, sizes: vec![0; k], inner: VecSink::new() };
        let run = run_2ps_detailed(&s, &config, &mut sink).unwrap();

        // complementarity: what pass A assigned is what pass B skipped
        prop_assert_eq!(run.prepartition.assigned, run.remaining.skipped);
        prop_assert_eq!(run.prepartition.assigned + run.remaining.assigned, m);

        let passes = sink.inner.passes();
        let pass_a: Vec<u64> = passes.first().map(|p| p.iter().map(|r| r.0).collect()).unwrap_or_default();
        let expected_a: Vec<u64> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| prepartition_target(Edge::new(a, b), &run.clustering, &run.placement).is_some())
            .map(|(i, _)| i as u64)
            .collect();
        prop_assert_eq!(pass_a, expected_a);

        let assignment = sink.inner.into_ordered(m).unwrap();
        if m > 0 {
            let rf = replication_factor_from_assignment(&s, &assignment, k).unwrap().unwrap();
            prop_assert!((rf - run.report.rf).abs() < 1e-12);
            let slack = cap as f64 / (m as f64 / k as f64);
            prop_assert!(run.report.alpha_observed <= slack + 1e-12);
        }

        // a vertex whose edges were all pre-partitioned to their cluster's
        // partition, without redirection, is covered exactly once
        let mut clean = vec![true; run.degrees.len()];
        for (&(a, b), &p) in pairs.iter().zip(&assignment) {
            let target = prepartition_target(Edge::new(a, b), &run.clustering, &run.placement);
            if target != Some(p) {
                clean[a as usize] = false;
                clean[b as usize] = false;
            }
        }
        for (v, &is_clean) in clean.iter().enumerate() {
            if is_clean && run.degrees[v as u32] > 0 {
                prop_assert_eq!(run.state.matrix.row_weight(v as u32), 1);
            }
        }

        // cluster placement is consistent with the clustering volumes
        let mut vol_p = vec![0u64; k];
        for (c, &vol) in run.clustering.volumes().iter().enumerate() {
            match run.placement.partition_of(c as u32) {
                Some(p) => vol_p[p as usize] += vol,
                None => prop_assert_eq!(vol, 0),
            }
        }
        prop_assert_eq!(vol_p.as_slice(), run.placement.partition_volumes());
    }
}

#[test]
fn file_output_is_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.bin");
    let cfg = GeneratorConfig::new(5000, 2.3, 11);
    let stream = generate_power_law(&cfg, &g).unwrap();
    let config = PartitionerConfig::new(16);
    let mut digests = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("a{run}.bin"));
        let mut w = AssignmentFileWriter::create_in(&out, stream.edge_count(), dir.path()).unwrap();
        twops::run_2ps(&stream, &config, &mut w).unwrap();
        w.finish().unwrap();
        let bytes = std::fs::read(&out).unwrap();
        assert_eq!(bytes.len() as u64, 4 * stream.edge_count());
        let mut h = DefaultHasher::new();
        bytes.hash(&mut h);
        digests.push(h.finish());
    }
    assert_eq!(digests[0], digests[1]);
}

#[test]
fn file_and_memory_sinks_agree() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.bin");
    let stream = generate_power_law(&GeneratorConfig::new(3000, 2.6, 5), &g).unwrap();
    let config = PartitionerConfig::new(8);
    let mut mem = VecSink::new();
    twops::run_2ps(&stream, &config, &mut mem).unwrap();
    let out = dir.path().join("a.bin");
    let mut w = AssignmentFileWriter::create_in(&out, stream.edge_count(), dir.path()).unwrap();
    twops::run_2ps(&stream, &config, &mut w).unwrap();
    w.finish().unwrap();
    assert_eq!(
        mem.into_ordered(stream.edge_count()).unwrap(),
        read_u32_file(&out).unwrap()
    );
}

#[test]
fn generator_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = GeneratorConfig::new(20_000, 2.1, 99);
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    generate_power_law(&cfg, &a).unwrap();
    generate_power_law(&cfg, &b).unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

/// Least-squares slope of log(count) against log(degree).
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let cov: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    cov / var
}

#[test]
fn generated_degree_tail_follows_the_exponent() {
    let cfg = GeneratorConfig::new(100_000, 4.0, 42);
    let edges = generate_edges(&cfg).unwrap();
    let d =
        compute_degrees(&EdgeStream::from_edges(edges).with_vertex_count(cfg.n_vertices)).unwrap();
    let mut histogram = std::collections::BTreeMap::<u64, u64>::new();
    for &x in d.as_slice() {
        *histogram.entry(x).or_default() += 1;
    }
    let points: Vec<(f64, f64)> = histogram
        .iter()
        .filter(|(&deg, &count)| deg >= 2 && count >= 10)
        .map(|(&deg, &count)| ((deg as f64).ln(), (count as f64).ln()))
        .collect();
    let slope = log_log_slope(&points);
    assert!(
        (slope + 4.0).abs() <= 0.3,
        "slope {slope} over {} points",
        points.len()
    );
}

#[test]
fn restreamed_file_hashes_match() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.bin");
    write_edges(&g, common::uniform_edges(1000, 20_000, 3)).unwrap();
    let s = twops::open_stream(&g).unwrap();
    let digest = || {
        let mut h = DefaultHasher::new();
        s.for_each(|i, e| {
            (i, e).hash(&mut h);
            Ok(())
        })
        .unwrap();
        h.finish()
    };
    assert_eq!(digest(), digest());
}

#[test]
fn random_clustering_has_near_zero_modularity() {
    use rand::Rng;
    let mut total = 0.0;
    let seeds = 10;
    for seed in 0..seeds {
        let pairs: Vec<(u32, u32)> = common::uniform_edges(2000, 10_000, seed)
            .map(|e| (e.first, e.second))
            .collect();
        let s = EdgeStream::from_pairs(&pairs).with_vertex_count(2000);
        let d = compute_degrees(&s).unwrap();
        let mut r = common::rng(1000 + seed);
        let v2c: Vec<u32> = (0..2000).map(|_| r.random_range(0..20)).collect();
        total += modularity(&s, &v2c, &d).unwrap().unwrap();
    }
    assert!((total / seeds as f64).abs() < 0.1);
}

#[test]
fn two_phase_uses_five_passes() {
    let pairs: Vec<(u32, u32)> = common::uniform_edges(200, 1000, 8)
        .map(|e| (e.first, e.second))
        .collect();
    let s = EdgeStream::from_pairs(&pairs);
    let report = twops::run_2ps(&s, &PartitionerConfig::new(4), NullSink::default()).unwrap();
    assert_eq!(report.stream_passes, 5);
    assert_eq!(s.completed_passes(), 5);
}

#[test]
fn disjoint_triangles_reach_the_optimum() {
    let pairs = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
    let edges: Vec<Edge> = pairs.iter().map(|&p| p.into()).collect();
    let optimum = brute_force_min_rf(&edges, 2, 1.05).unwrap();
    assert_eq!(optimum, 1.0);
    let report = twops::run_2ps(
        &EdgeStream::from_pairs(&pairs),
        &PartitionerConfig::new(2),
        NullSink::default(),
    )
    .unwrap();
    assert_eq!(report.rf, optimum);
}

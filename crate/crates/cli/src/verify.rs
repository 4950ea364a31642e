use std::collections::{BTreeSet, HashSet};

use anyhow::{bail, ensure, Result};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triweb::clique_reduce::{detect_4clique_via_6sum, CliqueConfig};
use triweb::detect_reduce::{detect_via_3sum, detect_via_3xor, sum_witness_solver, xor_witness_solver, DetectConfig};
use triweb::gen::{gen_graph, gen_planted_instance, InstanceKind};
use triweb::list_reduce::{
    balanced_partition, list_triangles, oracle_detector, stage1_high_degree, stage2_tripartite, ListingParams,
    PartitionChoice,
};
use triweb::prand::{bucket_load_stats, build_design, DesignStrategy, XorHashKeys};
use triweb::solvers::{
    detect_4clique_bruteforce, detect_triangle, list_all_triangles, solve_3xor_quadratic, solve_3xor_wht,
    solve_6sum_z3, solve_c3xor_bruteforce, three_xor_indexed,
};
use triweb::xor_reduce::{
    solve_3xor_via_c3xor, solve_c3xor_via_3xor, solve_c3xor_via_listing, ListingOutcome, ViaC3xorParams,
};
use triweb::{BitString, BitVectorSet, C3xorArray, Graph, Instance, Triangle};

use crate::common::{run_trials, Outcome};

pub const SUITES: &[&str] = &[
    "detect-equivalence",
    "list-equivalence",
    "baran-load",
    "design",
    "wht",
    "c3xor-via-3xor",
    "3xor-via-c3xor",
    "c3xor-via-listing",
    "4clique",
    "partition",
];

pub struct VerifyOptions {
    pub trials: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub c: Option<f64>,
    pub buckets: Option<usize>,
    pub draws: Option<usize>,
}

/// Pass count, total, and extra `metric value` rows.
pub struct SuiteReport {
    pub passed: usize,
    pub total: usize,
    pub metrics: Vec<(String, String)>,
}

impl SuiteReport {
    fn counted(results: &[bool]) -> SuiteReport {
        SuiteReport {
            passed: results.iter().filter(|&&ok| ok).count(),
            total: results.len(),
            metrics: Vec::new(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        Outcome::from_bool(self.passed == self.total)
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("{}/{} agree", self.passed, self.total)];
        if !self.metrics.is_empty() {
            out.push("metric\tvalue".to_string());
            out.extend(self.metrics.iter().map(|(k, v)| format!("{k}\t{v}")));
        }
        out
    }
}

fn rng_for(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, density: usize) -> Result<Graph> {
    let n = rng.gen_range(3..=max_n.max(3));
    let m = rng.gen_range(0..=(n * (n - 1) / 2).min(density * n));
    let planted = if 3 <= m && rng.gen_bool(0.5) {
        rng.gen_range(1..=(m / 3).min(3))
    } else {
        0
    };
    Ok(gen_graph(n, m, planted, rng.gen())?)
}

fn valid_triangle(g: &Graph, t: &Option<Triangle>) -> bool {
    t.as_ref().map_or(true, |t| g.contains_triangle(t))
}

pub fn run(suite: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let seed = opts.seed;
    let trials = |default: usize| opts.trials.unwrap_or(default);
    match suite {
        "detect-equivalence" => {
            let results = run_trials(trials(200), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let g = random_graph(&mut rng, opts.n.unwrap_or(40), 3)?;
                let truth = detect_triangle(&g).is_some();
                let det = DetectConfig::default();
                let rand = DetectConfig::randomized(rng.gen());
                let a = detect_via_3sum::<BigInt>(&g, &mut sum_witness_solver, &det)?;
                let b = detect_via_3xor(&g, &mut xor_witness_solver, &det)?;
                let c = detect_via_3xor(&g, &mut xor_witness_solver, &rand)?;
                let d = detect_via_3sum::<i64>(&g, &mut sum_witness_solver, &rand)?;
                Ok([a, b, c, d]
                    .iter()
                    .all(|x| x.contains_triangle == truth && valid_triangle(&g, &x.triangle)))
            })?;
            Ok(SuiteReport::counted(&results))
        }
        "list-equivalence" => {
            let results = run_trials(trials(50), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let g = random_graph(&mut rng, opts.n.unwrap_or(60), 4)?;
                let all: BTreeSet<Triangle> = list_all_triangles(&g, usize::MAX).into_iter().collect();
                let z = all.len();
                let m = g.edge_count().max(1);
                let params = ListingParams {
                    seed: rng.gen(),
                    ..Default::default()
                };
                for t in [1, z.div_ceil(2).max(1), z.max(1), m] {
                    let got = list_triangles(&g, t, &mut oracle_detector, &params)?.triangles;
                    let distinct: BTreeSet<Triangle> = got.iter().copied().collect();
                    if got.len() != t.min(z) || distinct.len() != got.len() || !distinct.is_subset(&all) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            Ok(SuiteReport::counted(&results))
        }
        "baran-load" | "hash-load" => {
            let n = opts.n.unwrap_or(4096);
            let buckets = opts.buckets.unwrap_or(64);
            let draws = opts.draws.unwrap_or(200);
            ensure!(
                buckets.is_power_of_two() && buckets >= 2,
                "--buckets must be a power of two"
            );
            let r = buckets.trailing_zeros() as usize;
            let k = (n / buckets).max(1) as f64;
            let width = 2 * (usize::BITS - n.leading_zeros()) as usize + 8;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = HashSet::new();
            let mut set = Vec::with_capacity(n);
            while set.len() < n {
                let v = BitString::random(width, &mut rng);
                if seen.insert(v.clone()) {
                    set.push(v);
                }
            }
            let mut total = 0usize;
            let mut histogram_ok = true;
            for _ in 0..draws {
                let stats = bucket_load_stats(&XorHashKeys::random(width, r, &mut rng), &set, k)?;
                total += stats.overloaded;
                histogram_ok &= stats
                    .histogram()
                    .iter()
                    .map(|(load, count)| load * count)
                    .sum::<usize>()
                    == n;
            }
            let mean = total as f64 / draws as f64;
            let bound = 1.5 * n as f64 / k;
            Ok(SuiteReport {
                passed: usize::from(mean <= bound) + usize::from(histogram_ok),
                total: 2,
                metrics: vec![
                    ("mean_overloaded".into(), format!("{mean:.2}")),
                    ("bound".into(), format!("{bound:.2}")),
                ],
            })
        }
        "design" => {
            let m = opts.m.unwrap_or(1024);
            let c = opts.c.unwrap_or(11.0);
            let mut report = SuiteReport {
                passed: 0,
                total: 0,
                metrics: Vec::new(),
            };
            for strategy in [DesignStrategy::Polynomial, DesignStrategy::RandomizedVerified] {
                let f = build_design(m, c, strategy, seed)?;
                let worst = f.max_intersection();
                report.total += 1;
                if worst <= f.intersection_bound() && f.len() == m {
                    report.passed += 1;
                }
                let tag = format!("{strategy:?}").to_lowercase();
                report.metrics.extend([
                    (format!("{tag}.universe"), f.universe().to_string()),
                    (format!("{tag}.set_size"), f.set_size().to_string()),
                    (format!("{tag}.bound"), f.intersection_bound().to_string()),
                    (format!("{tag}.max_intersection"), worst.to_string()),
                ]);
            }
            Ok(report)
        }
        "wht" => {
            let results = run_trials(trials(300), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let width = rng.gen_range(3..=8);
                let n = rng.gen_range(3..=32usize.min(1 << width));
                let set = distinct(n, width, &mut rng);
                let truth = solve_3xor_quadratic(&set).is_some();
                let got = solve_3xor_wht(&set, width, 24)?;
                Ok(got.witness.is_some() == truth && (got.distinct_ordered_triples > 0) == truth)
            })?;
            Ok(SuiteReport::counted(&results))
        }
        "c3xor-via-3xor" => {
            let results = run_trials(trials(300), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let a = random_array(opts.n.unwrap_or(64), 7, &mut rng)?;
                let got = solve_c3xor_via_3xor(&a, &mut |s| Ok(three_xor_indexed(s)))?;
                Ok(got.is_some() == solve_c3xor_bruteforce(&a).is_some())
            })?;
            Ok(SuiteReport::counted(&results))
        }
        "3xor-via-c3xor" => {
            let results = run_trials(trials(100), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let n = opts.n.unwrap_or(48);
                let set = BitVectorSet::new(9, distinct(n, 9, &mut rng))?;
                let truth = three_xor_indexed(set.vectors()).is_some();
                let report = solve_3xor_via_c3xor(
                    &set,
                    &mut |a| Ok(solve_c3xor_bruteforce(a)),
                    ViaC3xorParams {
                        seed: rng.gen(),
                        ..Default::default()
                    },
                )?;
                Ok(report.witness.is_some() == truth)
            })?;
            Ok(SuiteReport::counted(&results))
        }
        "c3xor-via-listing" => {
            let results = run_trials(trials(100), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let n = opts.n.unwrap_or(64);
                let Instance::C3xor(a) = gen_planted_instance(InstanceKind::C3xor, n, i % 2 == 0, rng.gen())?.instance
                else {
                    bail!("generator returned the wrong kind")
                };
                let truth = solve_c3xor_bruteforce(&a).is_some();
                let r = solve_c3xor_via_listing(&a, &mut |g, cap| Ok(list_all_triangles(g, cap)), 7, rng.gen())?;
                Ok(matches!(r.outcome, ListingOutcome::Found(_)) == truth)
            })?;
            Ok(SuiteReport::counted(&results))
        }
        "4clique" => {
            let results = run_trials(trials(100), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let g = random_graph(&mut rng, opts.n.unwrap_or(24), 3)?;
                let got = detect_4clique_via_6sum(&g, &mut |v| Ok(solve_6sum_z3(v)), &CliqueConfig::default())?;
                Ok(got.is_some() == detect_4clique_bruteforce(&g).is_some())
            })?;
            Ok(SuiteReport::counted(&results))
        }
        "partition" => {
            let params = ListingParams::default();
            let results = run_trials(trials(20), opts.jobs, |i| {
                let mut rng = rng_for(seed, i);
                let n = opts.n.unwrap_or(400);
                let m = opts.m.unwrap_or(2000);
                let g = gen_graph(n, m, 0, rng.gen())?;
                let s1 = stage1_high_degree(&g, params.delta, usize::MAX);
                let h = stage2_tripartite(&s1.residual);
                if h.graph().edge_count() < 2 {
                    return Ok(true);
                }
                let p = balanced_partition(&h, &params)?;
                Ok(matches!(p.choice, PartitionChoice::Seed(_)))
            })?;
            Ok(SuiteReport::counted(&results))
        }
        other => bail!("unknown suite {other:?}; known: {}", SUITES.join(", ")),
    }
}

fn distinct(n: usize, width: usize, rng: &mut ChaCha8Rng) -> Vec<BitString> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = BitString::random(width, rng);
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

fn random_array(n: usize, width: usize, rng: &mut ChaCha8Rng) -> Result<C3xorArray> {
    ensure!(n.is_power_of_two(), "array length must be a power of two");
    let cells = (0..n)
        .map(|_| (!rng.gen_bool(0.2)).then(|| BitString::random(width, rng)))
        .collect();
    Ok(C3xorArray::new(width, cells)?)
}

use std::collections::HashSet;
use std::time::Instant;

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triweb::gen::{default_z3_len, gen_graph};
use triweb::list_reduce::{
    oracle_detector, stage1_high_degree, stage2_tripartite, stage3_recurse, ListingParams, ListingStats,
};
use triweb::solvers::{
    detect_triangle, list_all_triangles, solve_3sum_quadratic, solve_3xor_quadratic, solve_3xor_wht, solve_6sum_z3,
};
use triweb::stats::{loglog_slope, median};
use triweb::{BitString, IntegerSet, Z3Vector};

pub const PROBLEMS: &[&str] = &[
    "3sum.quad",
    "3xor.quad",
    "3xor.wht",
    "tri.detect",
    "tri.listall",
    "tri-list-via-detect",
    "6sum.mitm",
];

pub struct BenchOptions {
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Triangles to list in `tri-list-via-detect`; `None` means `m`.
    pub t: Option<usize>,
}

/// Median seconds per stage at one size.
pub struct BenchRow {
    pub size: usize,
    pub stages: Vec<(String, f64)>,
}

pub struct BenchReport {
    pub problem: String,
    pub reps: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn stages(&self) -> Vec<String> {
        self.rows
            .first()
            .map(|r| r.stages.iter().map(|s| s.0.clone()).collect())
            .unwrap_or_default()
    }

    pub fn slope(&self, stage: &str) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter_map(|r| r.stages.iter().find(|s| s.0 == stage).map(|s| (r.size as f64, s.1)))
            .collect();
        loglog_slope(&pts)
    }

    pub fn tsv(&self) -> Vec<String> {
        let mut out = vec!["problem\tstage\tsize\treps\tmedian_s".to_string()];
        for r in &self.rows {
            for (stage, secs) in &r.stages {
                out.push(format!(
                    "{}\t{stage}\t{}\t{}\t{secs:.6}",
                    self.problem, r.size, self.reps
                ));
            }
        }
        for stage in self.stages() {
            let slope = self.slope(&stage).map_or("nan".to_string(), |s| format!("{s:.3}"));
            out.push(format!("{}\t{stage}\tslope\t{}\t{slope}", self.problem, self.reps));
        }
        out
    }

    pub fn table(&self) -> Vec<String> {
        let stages = self.stages();
        let mut out = vec![format!(
            "{:>10}{}",
            "size",
            stages.iter().map(|s| format!("{s:>14}")).collect::<String>()
        )];
        for r in &self.rows {
            out.push(format!(
                "{:>10}{}",
                r.size,
                r.stages.iter().map(|s| format!("{:>14.6}", s.1)).collect::<String>()
            ));
        }
        out.push(format!(
            "{:>10}{}",
            "slope",
            stages
                .iter()
                .map(|s| format!("{:>14}", self.slope(s).map_or("-".to_string(), |x| format!("{x:.3}"))))
                .collect::<String>()
        ));
        out
    }
}

fn timed(f: impl FnOnce()) -> f64 {
    let start = Instant::now();
    f();
    start.elapsed().as_secs_f64()
}

fn distinct_vectors(n: usize, width: usize, rng: &mut ChaCha8Rng) -> Vec<BitString> {
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

/// Graph sizes are edge counts, with average degree 8.
fn bench_graph(m: usize, seed: u64) -> Result<triweb::Graph> {
    let n = (m / 4).max(5);
    Ok(gen_graph(n, m.min(n * (n - 1) / 2), 0, seed)?)
}

/// One run at size `size`: seconds per stage.
fn run_once(problem: &str, size: usize, opts: &BenchOptions, rep: usize) -> Result<Vec<(String, f64)>> {
    let seed = opts.seed ^ (size as u64).rotate_left(20) ^ rep as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = |secs: f64| vec![("total".to_string(), secs)];
    Ok(match problem {
        "3sum.quad" => {
            // All positive, so no early exit.
            let bound = (size as i64).saturating_pow(3);
            let mut seen = HashSet::new();
            let mut values = Vec::with_capacity(size);
            while values.len() < size {
                let v = rng.gen_range(1..=bound);
                if seen.insert(v) {
                    values.push(v);
                }
            }
            let set = IntegerSet::with_exponent(values, 3)?;
            total(timed(|| {
                std::hint::black_box(solve_3sum_quadratic(&set));
            }))
        }
        "3xor.quad" | "3xor.wht" => {
            let width = if problem == "3xor.wht" {
                20
            } else {
                3 * (usize::BITS - size.leading_zeros()) as usize + 8
            };
            let v = distinct_vectors(size.min(1 << width.min(30)), width, &mut rng);
            if problem == "3xor.quad" {
                total(timed(|| {
                    std::hint::black_box(solve_3xor_quadratic(&v));
                }))
            } else {
                let mut result = Ok(());
                let secs = timed(|| result = solve_3xor_wht(&v, width, 24).map(|_| ()));
                result?;
                total(secs)
            }
        }
        "tri.detect" => {
            let g = bench_graph(size, seed)?;
            total(timed(|| {
                std::hint::black_box(detect_triangle(&g));
            }))
        }
        "tri.listall" => {
            let g = bench_graph(size, seed)?;
            total(timed(|| {
                std::hint::black_box(list_all_triangles(&g, usize::MAX));
            }))
        }
        "tri-list-via-detect" => {
            let g = bench_graph(size, seed)?;
            let t = opts.t.unwrap_or(g.edge_count()).max(1);
            let params = ListingParams {
                seed,
                ..Default::default()
            };
            let mut s1 = None;
            let a = timed(|| s1 = Some(stage1_high_degree(&g, params.delta, t)));
            let s1 = s1.expect("stage 1 ran");
            let mut h = None;
            let b = timed(|| h = Some(stage2_tripartite(&s1.residual)));
            let h = h.expect("stage 2 ran");
            let rest = t.saturating_sub(s1.triangles.len());
            let mut stats = ListingStats::default();
            let mut result = Ok(Vec::new());
            let c = timed(|| {
                if rest > 0 {
                    result = stage3_recurse(&h, 6 * rest, &mut oracle_detector, &params, &mut stats);
                }
            });
            result?;
            vec![
                ("stage1".to_string(), a),
                ("stage2".to_string(), b),
                ("stage3".to_string(), c),
                ("total".to_string(), a + b + c),
            ]
        }
        "6sum.mitm" => {
            let t = default_z3_len(size);
            let v: Vec<Z3Vector> = (0..size)
                .map(|_| {
                    let d: Vec<u8> = (0..t).map(|_| rng.gen_range(0..3)).collect();
                    Z3Vector::from_digits(&d).expect("digits below 3")
                })
                .collect();
            total(timed(|| {
                std::hint::black_box(solve_6sum_z3(&v));
            }))
        }
        other => bail!("unknown benchmark {other:?}; known: {}", PROBLEMS.join(", ")),
    })
}

pub fn run(problem: &str, opts: &BenchOptions) -> Result<BenchReport> {
    if opts.sizes.is_empty() {
        bail!("no sizes given");
    }
    let mut rows = Vec::new();
    for &size in &opts.sizes {
        let mut runs: Vec<Vec<(String, f64)>> = Vec::new();
        for rep in 0..opts.reps.max(1) {
            runs.push(run_once(problem, size, opts, rep)?);
        }
        let stages = runs[0]
            .iter()
            .enumerate()
            .map(|(k, (name, _))| {
                let samples: Vec<f64> = runs.iter().map(|r| r[k].1).collect();
                (name.clone(), median(&samples).expect("at least one rep"))
            })
            .collect();
        rows.push(BenchRow { size, stages });
    }
    Ok(BenchReport {
        problem: problem.to_string(),
        reps: opts.reps.max(1),
        rows,
    })
}

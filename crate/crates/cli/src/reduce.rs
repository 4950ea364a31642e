use std::path::Path;

use anyhow::{bail, Result};
use num_bigint::BigInt;
use triweb::clique_reduce::{detect_4clique_via_6sum, CliqueConfig};
use triweb::detect_reduce::{
    detect_via_3sum, detect_via_3xor, sum_witness_solver, xor_witness_solver, Answer, DetectConfig, Detection, Mode,
};
use triweb::list_reduce::{list_triangles, oracle_detector, ListingParams};
use triweb::solvers::{
    list_all_triangles, solve_6sum_z3, solve_c3xor_bruteforce, three_sum_indexed, three_xor_indexed,
};
use triweb::xor_reduce::{
    solve_3xor_via_c3xor, solve_3xor_with_length_reduction, solve_c3sum_via_3sum, solve_c3xor_via_3xor,
    solve_c3xor_via_listing, ListingOutcome, ViaC3xorParams,
};
use triweb::{Graph, Triangle};

use crate::common::{join, load_array, load_graph, load_plain_ints, load_vectors, triangle_labels, Outcome, Trace};

pub const PIPELINES: &[&str] = &[
    "tri-detect-via-3xor[:det|:rand]",
    "tri-detect-via-3sum[:det|:rand]",
    "tri-list-via-detect",
    "tri-list-via-detect-via-3sum[:det|:rand]",
    "tri-list-via-detect-via-3xor[:det|:rand]",
    "3xor-via-length-reduction",
    "3xor-via-c3xor",
    "3xor-via-c3xor-via-listing",
    "c3xor-via-3xor",
    "c3xor-via-listing",
    "c3sum-via-3sum",
    "4clique-via-6sum",
];

pub struct ReduceOptions {
    pub seed: u64,
    /// Triangles to list; all of them when unset.
    pub t: Option<usize>,
    pub rounds: u32,
    pub retries: u32,
    pub c: f64,
    pub alpha: f64,
}

fn detection_answer(d: Detection) -> Answer<Triangle> {
    match d.triangle {
        Some(t) => Answer::Found(t),
        None if d.contains_triangle => Answer::Yes,
        None => Answer::No,
    }
}

fn detect_config(mode: Mode, opts: &ReduceOptions, call: u64) -> DetectConfig {
    let base = match mode {
        Mode::Deterministic => DetectConfig::default(),
        Mode::Randomized => DetectConfig::randomized(opts.seed.wrapping_add(call)),
    };
    DetectConfig {
        rounds: opts.rounds,
        c: opts.c,
        ..base
    }
}

fn detect_3sum(g: &Graph, config: &DetectConfig) -> triweb::Result<Detection> {
    detect_via_3sum::<BigInt>(g, &mut sum_witness_solver, config)
}

fn detect_3xor(g: &Graph, config: &DetectConfig) -> triweb::Result<Detection> {
    detect_via_3xor(g, &mut xor_witness_solver, config)
}

fn brute_lister(g: &Graph, cap: usize) -> triweb::Result<Vec<Triangle>> {
    Ok(list_all_triangles(g, cap))
}

pub fn run(spec: &str, input: &Path, opts: &ReduceOptions) -> Result<(Outcome, Vec<String>, Trace)> {
    let (name, mode) = match spec.split_once(':') {
        Some((n, m)) => (n, Some(m.parse::<Mode>()?)),
        None => (spec, None),
    };
    let mode = mode.unwrap_or(Mode::Deterministic);
    let mut trace = Trace::default();
    let yes = |rest: String| (Outcome::Yes, vec![format!("YES {rest}").trim_end().to_string()]);
    let no = || (Outcome::No, vec!["NO".to_string()]);

    let (outcome, lines) = match name {
        "tri-detect-via-3xor" | "tri-detect-via-3sum" => {
            let g = load_graph(input)?;
            let config = detect_config(mode, opts, 0);
            let d = trace.time(name, g.edge_count(), || {
                if name.ends_with("3xor") {
                    detect_3xor(&g, &config)
                } else {
                    detect_3sum(&g, &config)
                }
            })?;
            match (d.contains_triangle, d.triangle) {
                (true, Some(t)) => yes(triangle_labels(&g, &t)),
                (true, None) => yes(String::new()),
                (false, _) => no(),
            }
        }
        "tri-list-via-detect" | "tri-list-via-detect-via-3sum" | "tri-list-via-detect-via-3xor" => {
            let g = load_graph(input)?;
            let t = opts.t.unwrap_or(g.edge_count().max(1));
            let params = ListingParams {
                seed: opts.seed,
                ..Default::default()
            };
            let mut calls = 0u64;
            let mut detector = |h: &Graph| -> triweb::Result<Answer<Triangle>> {
                calls += 1;
                let config = detect_config(mode, opts, calls);
                match name {
                    "tri-list-via-detect" => oracle_detector(h),
                    "tri-list-via-detect-via-3sum" => detect_3sum(h, &config).map(detection_answer),
                    _ => detect_3xor(h, &config).map(detection_answer),
                }
            };
            let listing = trace.time("list", g.edge_count(), || list_triangles(&g, t, &mut detector, &params))?;
            let s = &listing.stats;
            log::info!(
                "stage 1 found {}, tripartite graph has {} edges, {} detector calls",
                s.stage1_triangles,
                s.tripartite_edges,
                s.detector_calls
            );
            for row in &s.trace {
                log::debug!("{row}");
            }
            if listing.triangles.is_empty() {
                no()
            } else {
                let mut lines = vec![format!("YES {}", listing.triangles.len())];
                lines.extend(listing.triangles.iter().map(|t| triangle_labels(&g, t)));
                (Outcome::Yes, lines)
            }
        }
        "3xor-via-length-reduction" => {
            let s = load_vectors(input)?;
            let (w, rounds) = trace.time(name, s.len(), || {
                solve_3xor_with_length_reduction(&s, &mut |v| Ok(three_xor_indexed(v)), opts.seed, opts.rounds)
            })?;
            log::info!("{rounds} hash draws");
            match w {
                Some(w) => yes(join(w.indices())),
                None => no(),
            }
        }
        "3xor-via-c3xor" | "3xor-via-c3xor-via-listing" => {
            let s = load_vectors(input)?;
            let params = ViaC3xorParams {
                alpha: opts.alpha,
                seed: opts.seed,
                ..Default::default()
            };
            let listing = name.ends_with("listing");
            let mut inner_calls = 0u64;
            let retries = opts.retries;
            let seed = opts.seed;
            let report = trace.time(name, s.len(), || {
                solve_3xor_via_c3xor(
                    &s,
                    &mut |a| {
                        inner_calls += 1;
                        if !listing {
                            return Ok(solve_c3xor_bruteforce(a));
                        }
                        let r = solve_c3xor_via_listing(a, &mut brute_lister, retries, seed.wrapping_add(inner_calls))?;
                        Ok(match r.outcome {
                            ListingOutcome::Found(w) => Some(w),
                            _ => None,
                        })
                    },
                    params,
                )
            })?;
            log::info!(
                "{} buckets, tau {}, {} overloaded elements, {} arrays",
                report.buckets,
                report.tau,
                report.overloaded,
                report.arrays
            );
            match report.witness {
                Some(w) => yes(join(w.indices())),
                None => no(),
            }
        }
        "c3xor-via-3xor" => {
            let a = load_array(input)?;
            let w = trace.time(name, a.len(), || {
                solve_c3xor_via_3xor(&a, &mut |s| Ok(three_xor_indexed(s)))
            })?;
            match w {
                Some(w) => yes(format!("{} {}", w.i, w.j)),
                None => no(),
            }
        }
        "c3xor-via-listing" => {
            let a = load_array(input)?;
            let r = trace.time(name, a.len(), || {
                solve_c3xor_via_listing(&a, &mut brute_lister, opts.retries, opts.seed)
            })?;
            log::info!("{} rounds, listed {:?} of {} edges", r.rounds, r.listed, r.edges);
            match r.outcome {
                ListingOutcome::Found(w) => yes(format!("{} {}", w.i, w.j)),
                ListingOutcome::NotFound => no(),
                ListingOutcome::ProbableNo { rounds } => {
                    log::warn!("every one of {rounds} rounds hit the listing cap; answering no");
                    no()
                }
            }
        }
        "c3sum-via-3sum" => {
            let a = load_plain_ints(input)?;
            let w = trace.time(name, a.len(), || {
                solve_c3sum_via_3sum(&a, &mut |v| Ok(three_sum_indexed(v)))
            })?;
            match w {
                Some((i, j)) => yes(format!("{i} {j}")),
                None => no(),
            }
        }
        "4clique-via-6sum" => {
            let g = load_graph(input)?;
            let config = CliqueConfig {
                seed: opts.seed,
                ..Default::default()
            };
            let q = trace.time(name, g.edge_count(), || {
                detect_4clique_via_6sum(&g, &mut |v| Ok(solve_6sum_z3(v)), &config)
            })?;
            match q {
                Some(q) => {
                    let mut l = q.map(|v| g.label(v));
                    l.sort_unstable();
                    yes(join(l))
                }
                None => no(),
            }
        }
        other => bail!("unknown pipeline {other:?}; known: {}", PIPELINES.join(", ")),
    };
    Ok((outcome, lines, trace))
}

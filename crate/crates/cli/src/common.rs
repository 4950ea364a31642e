use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use triweb::io::{read_instance, Format};
use triweb::{BitVectorSet, C3xorArray, Graph, Instance, IntegerSet, Triangle, Z3VectorSet};

/// What a command reports through its exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
}

impl Outcome {
    pub fn from_bool(yes: bool) -> Outcome {
        if yes {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

pub fn load(path: &Path, format: Format) -> Result<Instance> {
    read_instance(path, format).with_context(|| format!("reading {} as {}", path.display(), format.name()))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    match load(path, Format::Edges)? {
        Instance::Graph(g) => Ok(g),
        _ => unreachable!(),
    }
}

pub fn load_ints(path: &Path) -> Result<IntegerSet> {
    match load(path, Format::Ints)? {
        Instance::ThreeSum(s) => Ok(s),
        _ => unreachable!(),
    }
}

pub fn load_vectors(path: &Path) -> Result<BitVectorSet> {
    match load(path, Format::HexVecs)? {
        Instance::ThreeXor(s) => Ok(s),
        _ => unreachable!(),
    }
}

pub fn load_array(path: &Path) -> Result<C3xorArray> {
    match load(path, Format::C3xor)? {
        Instance::C3xor(a) => Ok(a),
        _ => unreachable!(),
    }
}

pub fn load_z3(path: &Path) -> Result<Z3VectorSet> {
    match load(path, Format::Z3Vecs)? {
        Instance::SixSumZ3(s) => Ok(s),
        _ => unreachable!(),
    }
}

/// Plain integers, one per line, for convolution 3SUM arrays.
pub fn load_plain_ints(path: &Path) -> Result<Vec<i64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(
            line.parse()
                .with_context(|| format!("line {}: bad integer {line:?}", no + 1))?,
        );
    }
    Ok(out)
}

/// Node labels of a triangle, ascending.
pub fn triangle_labels(g: &Graph, t: &Triangle) -> String {
    let mut l = t.nodes().map(|v| g.label(v));
    l.sort_unstable();
    join(l)
}

pub fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Per-stage timing rows of a pipeline run.
#[derive(Default)]
pub struct Trace {
    rows: Vec<(String, usize, f64)>,
}

impl Trace {
    pub fn time<T>(&mut self, stage: &str, size: usize, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.rows.push((stage.to_string(), size, start.elapsed().as_secs_f64()));
        out
    }

    pub fn print(&self) {
        println!("stage\tsize\tseconds");
        for (stage, size, secs) in &self.rows {
            println!("{stage}\t{size}\t{secs:.6}");
        }
    }
}

/// Run `f(0..total)` on up to `jobs` threads. Results come back in trial
/// order, so the output does not depend on `jobs`.
pub fn run_trials<T: Send>(total: usize, jobs: usize, f: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let jobs = jobs.clamp(1, total.max(1));
    let next = AtomicUsize::new(0);
    let mut results: Vec<(usize, Result<T>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= total {
                            break local;
                        }
                        local.push((i, f(i)));
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("trial thread panicked"))
            .collect()
    });
    results.sort_by_key(|r| r.0);
    results.into_iter().map(|(_, r)| r).collect()
}

/// Parse `1k,2k,4096,1m` style lists.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            let s = s.trim().to_ascii_lowercase();
            let (digits, mult) = match s.strip_suffix('k') {
                Some(d) => (d, 1_000),
                None => match s.strip_suffix('m') {
                    Some(d) => (d, 1_000_000),
                    None => (s.as_str(), 1),
                },
            };
            let v: usize = digits.parse().with_context(|| format!("bad size {s:?}"))?;
            if v == 0 {
                bail!("sizes must be positive");
            }
            Ok(v * mult)
        })
        .collect()
}

//! `triweb`: generate instances, run solvers and reductions, check them
//! against oracles, and time them.
//!
//! Exit codes: 0 for yes or pass, 1 for no or fail, 2 for errors.

mod bench;
mod common;
mod reduce;
mod solve;
mod verify;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use triweb::gen::{gen_graph, gen_planted_instance, InstanceKind};
use triweb::io::to_text;
use triweb::Instance;

use common::{parse_sizes, Outcome};

#[derive(Parser)]
#[command(
    name = "triweb",
    version,
    about = "Reductions between 3SUM, 3XOR, triangles and 4-cliques"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "TRIWEB_SEED", default_value_t = 0)]
    seed: u64,

    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Gen(GenArgs),
    /// Run a baseline solver on an instance file.
    Solve(SolveArgs),
    /// Run a reduction pipeline on an instance file.
    Reduce(ReduceArgs),
    /// Run an oracle-equivalence or invariant suite.
    Verify(VerifyArgs),
    /// Time a solver or pipeline over a range of sizes.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// graph, 3sum, 3xor, c3xor or 6sum_z3.
    kind: String,
    #[arg(long)]
    n: usize,
    /// Edge count, for graphs.
    #[arg(long)]
    m: Option<usize>,
    /// Triangles to plant, for graphs.
    #[arg(long, default_value_t = 0)]
    plant: usize,
    /// Plant a solution (other kinds); without it the instance has none.
    #[arg(long)]
    planted: bool,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// One of: 3sum.quad 3xor.quad 3xor.wht c3xor.brute tri.detect tri.listall 4clique.brute 6sum.mitm
    solver: String,
    input: PathBuf,
    /// Stop `tri.listall` after this many triangles.
    #[arg(long)]
    cap: Option<usize>,
    /// Largest vector width `3xor.wht` accepts.
    #[arg(long, default_value_t = triweb::solvers::DEFAULT_WHT_WIDTH_CAP)]
    wht_cap: usize,
}

#[derive(Args)]
struct ReduceArgs {
    /// Pipeline name, e.g. tri-detect-via-3xor:det or 4clique-via-6sum.
    pipeline: String,
    input: PathBuf,
    /// Triangles to list.
    #[arg(long)]
    t: Option<usize>,
    /// Labelings tried by randomized detection.
    #[arg(long, default_value_t = 20)]
    rounds: u32,
    /// Key draws tried by the listing-based convolution solver.
    #[arg(long, default_value_t = 7)]
    retries: u32,
    /// Design parameter for deterministic detection.
    #[arg(long, default_value_t = 11.0)]
    c: f64,
    /// Hash to (1 - alpha) lg n bits in 3xor-via-c3xor.
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    /// Skip the per-stage timing table.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    c: Option<f64>,
    /// Bucket count for the hashing suite.
    #[arg(long = "R", alias = "buckets")]
    buckets: Option<usize>,
    #[arg(long)]
    draws: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    problem: String,
    /// Comma-separated sizes; k and m suffixes allowed.
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Triangles to list, or `m` for all edges' worth.
    #[arg(long)]
    t: Option<String>,
    /// Print tab-separated rows instead of the aligned table.
    #[arg(long)]
    tsv: bool,
}

fn emit(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for l in lines {
        let _ = writeln!(out, "{l}");
    }
}

fn gen(args: GenArgs, seed: u64) -> Result<Outcome> {
    let instance = if args.kind == "graph" {
        let Some(m) = args.m else { bail!("graphs need --m") };
        Instance::Graph(gen_graph(args.n, m, args.plant, seed)?)
    } else {
        let kind: InstanceKind = args.kind.parse()?;
        gen_planted_instance(kind, args.n, args.planted, seed)?.instance
    };
    let text = to_text(&instance);
    match args.output {
        Some(path) => std::fs::write(&path, text)?,
        None => print!("{text}"),
    }
    Ok(Outcome::Yes)
}

fn run(cli: Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match cli.command {
        Command::Gen(args) => gen(args, seed),
        Command::Solve(args) => {
            let opts = solve::SolveOptions {
                cap: args.cap.unwrap_or(usize::MAX),
                wht_cap: args.wht_cap,
            };
            let (outcome, lines) = solve::run(&args.solver, &args.input, &opts)?;
            emit(&lines);
            Ok(outcome)
        }
        Command::Reduce(args) => {
            let opts = reduce::ReduceOptions {
                seed,
                t: args.t,
                rounds: args.rounds,
                retries: args.retries,
                c: args.c,
                alpha: args.alpha,
            };
            let (outcome, lines, trace) = reduce::run(&args.pipeline, &args.input, &opts)?;
            emit(&lines);
            if !args.quiet {
                trace.print();
            }
            Ok(outcome)
        }
        Command::Verify(args) => {
            let opts = verify::VerifyOptions {
                trials: args.trials,
                seed,
                jobs: args.jobs,
                n: args.n,
                m: args.m,
                c: args.c,
                buckets: args.buckets,
                draws: args.draws,
            };
            let report = verify::run(&args.suite, &opts)?;
            emit(&report.lines());
            Ok(report.outcome())
        }
        Command::Bench(args) => {
            let t = match args.t.as_deref() {
                None | Some("m") => None,
                Some(x) => Some(x.parse()?),
            };
            let opts = bench::BenchOptions {
                sizes: parse_sizes(&args.sizes)?,
                reps: args.reps,
                seed,
                t,
            };
            let report = bench::run(&args.problem, &opts)?;
            emit(&if args.tsv { report.tsv() } else { report.table() });
            Ok(Outcome::Yes)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();
    match run(cli) {
        Ok(Outcome::Yes) => ExitCode::from(0),
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! `kspack` command-line front end.

mod algorithm;
mod bench;
mod error;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kspack::instance::{
    gen_projective_plane, gen_random, parse_graph, parse_instance, serialize_instance,
};
use kspack::relaxation::{
    export_theta3_sdp, integrality_gap_capped, GapVariant, DEFAULT_CLIQUE_CAP,
};
use kspack::{Budget, ConflictGraph, Instance};
use serde::Serialize;

use algorithm::Algorithm;
use error::{read, write, CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "kspack",
    version,
    about = "k-set packing solvers, LP gaps and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file
    #[command(subcommand)]
    Generate(Generate),
    /// Run one algorithm on an instance and report the packing as JSON
    Solve(SolveArgs),
    /// Report the LP value, the exact value and their ratio as JSON
    Gap(GapArgs),
    /// Run a benchmark config and write CSV
    Bench(BenchArgs),
    /// Write the theta relaxation of the conflict graph in SDPA sparse format
    ExportSdp(ExportArgs),
}

#[derive(Subcommand)]
enum Generate {
    /// Distinct uniform random k-subsets
    Random {
        #[arg(long)]
        universe: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight range `lo:hi`; integral ends give integer weights
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lines of the projective plane of prime order q
    Projective {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Vertices become sets and edges become shared elements
    FromGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// exact | greedy | local:<t> | loglocal:<eps> | wishful | squareimp | power:<alpha>:<t>
    #[arg(short, long)]
    algorithm: String,
    /// Report path; stdout when absent
    #[arg(long)]
    report: Option<PathBuf>,
    /// Operation budget for the local searches
    #[arg(long, default_value_t = Budget::DEFAULT_LIMIT)]
    budget: u64,
    /// Largest instance the exact solver accepts
    #[arg(long, default_value_t = kspack::exact::DEFAULT_CAP)]
    oracle_cap: usize,
}

#[derive(Args)]
struct GapArgs {
    instance: PathBuf,
    /// standard | intersecting
    #[arg(long, default_value = "standard")]
    variant: String,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = kspack::exact::DEFAULT_CAP)]
    oracle_cap: usize,
    #[arg(long, default_value_t = DEFAULT_CLIQUE_CAP)]
    clique_cap: usize,
}

#[derive(Args)]
struct BenchArgs {
    config: PathBuf,
    /// CSV path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    instance: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct SolveReport {
    algorithm: String,
    value: String,
    members: Vec<usize>,
    size: usize,
    iterations: usize,
    budget_spent: u64,
    budget_limit: u64,
}

#[derive(Serialize)]
struct GapReport {
    variant: String,
    lp_value: String,
    ilp_value: String,
    gap: String,
}

fn load(path: &Path) -> CliResult<Instance> {
    Ok(parse_instance(&read(path)?)?)
}

fn emit_json<T: Serialize>(value: &T, path: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn store(instance: &Instance, out: &Path) -> CliResult<()> {
    write(out, &serialize_instance(instance))?;
    println!(
        "N={} n={} k={}",
        instance.universe_size(),
        instance.num_sets(),
        instance.k()
    );
    Ok(())
}

fn generate(cmd: Generate) -> CliResult<()> {
    match cmd {
        Generate::Random {
            universe,
            n,
            k,
            seed,
            weights,
            out,
        } => {
            let range = weights
                .as_deref()
                .map(bench::parse_weight_range)
                .transpose()?;
            store(&gen_random(universe, n, k, range.as_ref(), seed)?, &out)
        }
        Generate::Projective { q, out } => store(&gen_projective_plane(q)?, &out),
        Generate::FromGraph { graph, out } => {
            store(&parse_graph(&read(&graph)?)?.to_instance()?, &out)
        }
    }
}

fn solve(args: SolveArgs) -> CliResult<()> {
    let algorithm: Algorithm = args.algorithm.parse()?;
    let instance = load(&args.instance)?;
    let mut budget = Budget::new(args.budget);
    let sol = algorithm::run(&algorithm, &instance, &mut budget, args.oracle_cap)?;
    let report = SolveReport {
        algorithm: algorithm.to_string(),
        value: sol.value.to_string(),
        size: sol.members.len(),
        members: sol.members,
        iterations: sol.iterations,
        budget_spent: budget.spent(),
        budget_limit: budget.limit(),
    };
    emit_json(&report, args.report.as_deref())
}

fn gap(args: GapArgs) -> CliResult<()> {
    let variant: GapVariant = args.variant.parse()?;
    let instance = load(&args.instance)?;
    let r = integrality_gap_capped(&instance, variant, args.oracle_cap, args.clique_cap)?;
    let report = GapReport {
        variant: args.variant,
        lp_value: r.lp_value.to_string(),
        ilp_value: r.ilp_value.to_string(),
        gap: r.gap.to_string(),
    };
    emit_json(&report, args.report.as_deref())
}

fn run_bench(args: BenchArgs) -> CliResult<()> {
    match &args.out {
        Some(path) => {
            let mut buf = Vec::new();
            let result = bench::run_bench(&args.config, &mut buf);
            std::fs::write(path, &buf).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            result
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let result = bench::run_bench(&args.config, &mut lock);
            let _ = lock.flush();
            result
        }
    }
}

fn export_sdp(args: ExportArgs) -> CliResult<()> {
    let instance = load(&args.instance)?;
    write(
        &args.out,
        &export_theta3_sdp(&ConflictGraph::from_instance(&instance)),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(cmd) => generate(cmd),
        Command::Solve(args) => solve(args),
        Command::Gap(args) => gap(args),
        Command::Bench(args) => run_bench(args),
        Command::ExportSdp(args) => export_sdp(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! `cibench`: community detection runs, synthetic graph generation,
//! algorithm-comparison sweeps and an embedded-fixture selftest.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use ci_bench::edgeio::{read_graph, write_edgelist, write_ground_truth};
use ci_bench::fixtures;
use ci_bench::report::{render_csv, write_atomic};
use ci_bench::runner::{
    run_algorithm, run_bench, Algorithm, BenchSpec, Family, RunOptions, SizeRange,
};
use ci_core::{gen_ba, gen_planted, planted_params, BaConfig, PlantedConfig};

#[derive(Parser)]
#[command(
    name = "cibench",
    version,
    about = "Connect-intensity community detection toolkit"
)]
struct Cli {
    /// Suppress the human-readable summary lines.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect communities in an edge-list file.
    Detect(DetectArgs),
    /// Generate a synthetic graph.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Sweep generated graphs across sizes, algorithms and seeds into a CSV.
    Bench(BenchArgs),
    /// Replay the embedded golden fixtures.
    Selftest,
}

#[derive(Args)]
struct DetectArgs {
    /// Algorithm: ci, ciia or louvain.
    #[arg(long)]
    algo: String,
    /// Edge-list input path.
    #[arg(long)]
    input: PathBuf,
    /// Louvain shuffle seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reweighting round cap (counting the unweighted round).
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    max_iters: u64,
    /// Write the JSON report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Preferential-attachment graph.
    Ba(GenBaArgs),
    /// Planted-partition graph with equal groups.
    Planted(GenPlantedArgs),
}

#[derive(Args)]
struct GenBaArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m_attach: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output path.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct GenPlantedArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    groups: u32,
    #[arg(long)]
    avg_degree: f64,
    /// Intra/inter connection probability ratio.
    #[arg(long)]
    ratio: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output path.
    #[arg(long)]
    output: PathBuf,
    /// Ground-truth output path (default: `<output>.truth`).
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Graph family: ba or planted.
    #[arg(long)]
    family: String,
    /// Inclusive node-count range, start:end:step.
    #[arg(long)]
    sizes: String,
    /// Comma-separated algorithms.
    #[arg(long, default_value = "ci,ciia,louvain")]
    algos: String,
    /// Seeds per size (graph seed and Louvain seed).
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long, default_value_t = 1)]
    m_attach: u32,
    #[arg(long, default_value_t = 10)]
    groups: u32,
    #[arg(long, default_value_t = 6.0)]
    avg_degree: f64,
    #[arg(long, default_value_t = 100.0)]
    ratio: f64,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    max_iters: u64,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Detect(args) => cmd_detect(args, cli.quiet),
        Command::Gen(args) => cmd_gen(args, cli.quiet),
        Command::Bench(args) => cmd_bench(args, cli.quiet),
        Command::Selftest => Ok(cmd_selftest(cli.quiet)),
    }
}

fn cmd_detect(args: DetectArgs, quiet: bool) -> anyhow::Result<ExitCode> {
    let algo = Algorithm::parse(&args.algo)?;
    let graph = read_graph(&args.input)?;
    let opts = RunOptions {
        seed: args.seed,
        max_rounds: args.max_iters as usize,
    };
    let input_desc = args.input.display().to_string();
    let report = run_algorithm(&graph, algo, &opts, &input_desc)?;
    if let Some(path) = &args.output {
        write_atomic(path, &report.to_json())
            .with_context(|| format!("writing report to {}", path.display()))?;
    }
    if !quiet {
        println!(
            "algo={} input={} n={} m={} modularity={:.6} communities={} time_ms={:.3}",
            report.algorithm,
            report.input,
            report.n,
            report.m,
            report.modularity,
            report.community_count,
            report.time_ms
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(cmd: GenCommand, quiet: bool) -> anyhow::Result<ExitCode> {
    match cmd {
        GenCommand::Ba(args) => {
            let g = gen_ba(&BaConfig {
                n: args.n,
                m_attach: args.m_attach,
                seed: args.seed,
            })
            .map_err(|e| anyhow::anyhow!("{e}"))?;
            write_edgelist(&args.output, &g)?;
            if !quiet {
                println!(
                    "generated ba graph: n={} m={} -> {}",
                    g.node_count(),
                    g.edge_count(),
                    args.output.display()
                );
            }
        }
        GenCommand::Planted(args) => {
            let (p_in, p_out) = planted_params(args.n, args.groups, args.avg_degree, args.ratio)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            let sizes = vec![args.n / args.groups; args.groups as usize];
            let (g, truth) = gen_planted(&PlantedConfig {
                sizes,
                p_in,
                p_out,
                seed: args.seed,
            })
            .map_err(|e| anyhow::anyhow!("{e}"))?;
            write_edgelist(&args.output, &g)?;
            let truth_path = args
                .truth
                .unwrap_or_else(|| PathBuf::from(format!("{}.truth", args.output.display())));
            write_ground_truth(&truth_path, &g, &truth)?;
            if !quiet {
                println!(
                    "generated planted graph: n={} m={} groups={} p_in={:.6} p_out={:.8} -> {} (truth: {})",
                    g.node_count(),
                    g.edge_count(),
                    args.groups,
                    p_in,
                    p_out,
                    args.output.display(),
                    truth_path.display()
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs, quiet: bool) -> anyhow::Result<ExitCode> {
    let algos = args
        .algos
        .split(',')
        .map(|s| Algorithm::parse(s.trim()))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if algos.is_empty() {
        anyhow::bail!("--algos must name at least one algorithm");
    }
    let spec = BenchSpec {
        family: Family::parse(&args.family)?,
        sizes: SizeRange::parse(&args.sizes)?,
        algos,
        seeds: args.seeds.max(1),
        m_attach: args.m_attach,
        groups: args.groups,
        avg_degree: args.avg_degree,
        ratio: args.ratio,
        max_rounds: args.max_iters as usize,
    };
    let rows = run_bench(&spec)?;
    let count = rows.len();
    let csv = render_csv(rows);
    match &args.output {
        Some(path) => {
            write_atomic(path, &csv)
                .with_context(|| format!("writing CSV to {}", path.display()))?;
            if !quiet {
                println!("wrote {count} rows -> {}", path.display());
            }
        }
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(quiet: bool) -> ExitCode {
    let checks = fixtures::run_selftest();
    let mut mismatches = 0usize;
    for check in &checks {
        if !check.passed() {
            mismatches += 1;
            println!(
                "FAIL {}: expected {}, actual {} (tolerance {:e})",
                check.name, check.expected, check.actual, check.tolerance
            );
        }
    }
    if !quiet {
        println!(
            "{}/{} fixture checks passed, {} mismatch(es)",
            checks.len() - mismatches,
            checks.len(),
            mismatches
        );
    }
    if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! `tww`: build reduction instances, check contraction sequences, and run the
//! exact oracles. Every command prints one JSON report on stdout.
//!
//! Exit codes: 0 pass (or skipped on oracle budget), 1 a check failed,
//! 2 bad usage or unreadable input.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use tww_core::Dialect;

use commands::Outputs;
use report::RunReport;

/// Default oracle budget in node expansions.
const DEFAULT_BUDGET: u64 = 5_000_000;
const BUDGET_ENV: &str = "TWW_ORACLE_BUDGET";

#[derive(Parser)]
#[command(name = "tww", version, about = "Twin-width reductions, sequence verifier and exact oracles")]
struct Cli {
    /// Oracle budget in node expansions (default: $TWW_ORACLE_BUDGET, else 5000000)
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a reduction instance and its contraction sequence
    #[command(subcommand)]
    Reduce(Reduce),
    /// Replay a merge script on a trigraph and check its width
    VerifySequence {
        graph: PathBuf,
        sequence: PathBuf,
        #[arg(long)]
        max_width: usize,
    },
    /// Exact twin-width of a small trigraph
    TwwExact {
        graph: PathBuf,
        /// Write an optimal sequence here
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Exact chromatic number of a graph
    Chromatic {
        graph: PathBuf,
        /// Write an optimal coloring here
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Decide a 3-SAT formula
    Sat {
        cnf: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Decide a NAE-3-SAT formula
    Nae {
        cnf: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Run the full reduction pipeline and cross-check every step
    Roundtrip(RoundtripArgs),
    /// Write a random formula in which every variable occurs
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        /// Distinct variables per clause (NAE-3-SAT)
        #[arg(long)]
        nae: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Reduce {
    /// 3-SAT to coloring with 2n colors (width-3 sequence)
    Mincol(ReduceArgs),
    /// NAE-3-SAT to 3-coloring (width-4 sequence); --k adds k-3 universal vertices
    #[command(name = "3col")]
    ThreeCol {
        #[command(flatten)]
        args: ReduceArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Args)]
struct ReduceArgs {
    cnf: PathBuf,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    sequence: Option<PathBuf>,
    #[arg(long)]
    roles: Option<PathBuf>,
}

impl ReduceArgs {
    fn outputs(&self) -> Outputs<'_> {
        Outputs { graph: self.graph.as_ref(), sequence: self.sequence.as_ref(), roles: self.roles.as_ref() }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("reduction").required(true).args(["mincol", "threecol"])))]
struct RoundtripArgs {
    #[arg(long)]
    mincol: bool,
    #[arg(long = "3col")]
    threecol: bool,
    cnf: PathBuf,
}

fn budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().with_context(|| format!("{BUDGET_ENV}={s:?} is not a node count")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<()> {
    match &cli.command {
        Command::Reduce(Reduce::Mincol(a)) => commands::reduce_mincol(report, &a.cnf, &a.outputs()),
        Command::Reduce(Reduce::ThreeCol { args, k }) => commands::reduce_3col(report, &args.cnf, *k, &args.outputs()),
        Command::VerifySequence { graph, sequence, max_width } => {
            commands::verify_sequence(report, graph, sequence, *max_width)
        }
        Command::TwwExact { graph, witness } => commands::tww_exact(report, graph, witness.as_ref()),
        Command::Chromatic { graph, coloring } => commands::chromatic(report, graph, coloring.as_ref()),
        Command::Sat { cnf, assignment } => commands::solve(report, cnf, Dialect::ThreeSat, assignment.as_ref()),
        Command::Nae { cnf, assignment } => commands::solve(report, cnf, Dialect::NaeThreeSat, assignment.as_ref()),
        Command::Roundtrip(a) if a.mincol => commands::roundtrip_mincol(report, &a.cnf),
        Command::Roundtrip(a) => commands::roundtrip_3col(report, &a.cnf),
        Command::Gen { seed, vars, clauses, nae, out } => {
            let dialect = if *nae { Dialect::NaeThreeSat } else { Dialect::ThreeSat };
            commands::generate(report, *seed, *vars, *clauses, dialect, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match budget(cli.budget) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let command = std::iter::once("tww".to_string()).chain(std::env::args().skip(1)).collect();
    let mut report = RunReport::new(command, budget);
    let start = Instant::now();
    if let Err(e) = run(&cli, &mut report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    // A closed stdout (e.g. piped into `head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(report.exit_code() as u8)
}

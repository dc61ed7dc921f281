//! `dccasp`: analyze, solve, enumerate and bench ground normal programs.
//!
//! Exit status: 0 on success, 1 when a query has no partial answer set,
//! 2 on usage or parse errors, 3 when a resource limit is hit.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dccasp::Mode;

#[derive(Debug, Parser)]
#[command(
    name = "dccasp",
    version,
    about = "Goal-directed answer set solving with dynamic consistency checking"
)]
struct Cli {
    /// Output format. `csv` is only accepted by `bench`.
    #[arg(long, global = true, value_enum, env = "DCCASP_FORMAT", default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report OLON rules, sub-checks and splitting sets.
    Analyze(Files),
    /// Run a query and print partial answer sets.
    Solve(SolveArgs),
    /// List every answer set by exhaustive search.
    Enumerate(EnumerateArgs),
    /// Generate a program family and time both modes.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct Files {
    /// Program files, concatenated in order.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    files: Files,

    /// Query such as `?- a, not b.`; overrides a query found in the files.
    #[arg(short, long)]
    query: Option<String>,

    #[arg(long, value_enum, default_value_t = ModeArg::Dcc)]
    mode: ModeArg,

    /// Shorthand for `--mode full`.
    #[arg(long, conflicts_with = "mode")]
    full: bool,

    #[arg(short = 'n', long, default_value_t = 1)]
    max_answers: usize,

    /// Give up after this many resolution steps (exit 3).
    #[arg(long)]
    step_limit: Option<u64>,

    /// Print resolution events to stderr.
    #[arg(long)]
    trace: bool,

    /// Print only the positive literals of each answer.
    #[arg(long)]
    positives_only: bool,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    files: Files,

    /// Refuse programs with more head atoms than this (exit 3).
    #[arg(long, default_value_t = dccasp::oracle::DEFAULT_ATOM_LIMIT)]
    atom_limit: usize,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Family spec, e.g. `concat(pigeonhole(3,3),schur_like(2,4))`.
    family: String,

    /// `name=atom` pairs; defaults to each component's solve atom.
    #[arg(short, long = "query")]
    queries: Vec<String>,

    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ModeArg::Full, ModeArg::Dcc])]
    modes: Vec<ModeArg>,

    #[arg(short, long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    repetitions: u64,

    #[arg(long)]
    step_limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Full,
    Dcc,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Dcc => Mode::Dcc,
        }
    }
}

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Limit(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    if format == Format::Csv && !matches!(cli.command, Command::Bench(_)) {
        eprintln!("error: --format csv is only supported by bench");
        return ExitCode::from(2);
    }
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Analyze(files) => commands::analyze(&files.paths, format, &mut out),
        Command::Solve(args) => commands::solve(
            &args.files.paths,
            &commands::SolveOptions {
                query: args.query,
                mode: if args.full { Mode::Full } else { args.mode.into() },
                max_answers: args.max_answers,
                step_limit: args.step_limit,
                trace: args.trace,
                positives_only: args.positives_only,
            },
            format,
            &mut out,
        ),
        Command::Enumerate(args) => commands::enumerate(&args.files.paths, args.atom_limit, format, &mut out),
        Command::Bench(args) => commands::bench(
            &args.family,
            &args.queries,
            args.modes.into_iter().map(Mode::from).collect(),
            args.repetitions as usize,
            args.step_limit,
            format,
            &mut out,
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

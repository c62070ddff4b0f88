use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltaspec_cli::{certify, discretize, reproduce, solve, CliError, RunOptions, Table};

/// Negative eigenvalues of −Δ + μ by point-measure approximation, with
/// certified enclosure windows.
#[derive(Debug, Parser)]
#[command(name = "deltaspec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Bisection tolerance in λ (overrides the problem file).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Number of λ-grid points of the scan (overrides the problem file).
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Allow long runs such as the square well at N = 10⁶.
    #[arg(long, global = true)]
    allow_long: bool,
    /// Write runtime_ms = 0 so repeated runs produce identical files.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Worker threads for the scan; 0 picks the number of cores.
    #[arg(long, global = true, env = "DELTASPEC_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Args)]
struct Io {
    /// Problem file (JSON).
    #[arg(short, long)]
    input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    SquareWell,
    Cantor,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the discretized problem; CSV n,lambda,bracket_lo,bracket_hi,residual,runtime_ms.
    Solve(Io),
    /// Write the discretized measure as CSV x,weight.
    Discretize(Io),
    /// Certify enclosure windows for the target against an approximation; JSON.
    Certify {
        #[command(flatten)]
        io: Io,
        /// Approximating problem file; its measure is discretized.
        #[arg(short, long)]
        approx: PathBuf,
    },
    /// Regenerate a reference table from built-in problems.
    Reproduce {
        which: Which,
        /// Comma-separated N values; the full table when omitted.
        #[arg(short, long, value_delimiter = ',')]
        n: Vec<u32>,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads)
        .build_global()
        .map_err(|e| CliError::Validation(format!("cannot start thread pool: {e}")))?;
    let opts = RunOptions {
        tol: cli.global.tol,
        grid: cli.global.grid,
        allow_long: cli.global.allow_long,
        no_timing: cli.global.no_timing,
    };
    match cli.command {
        Command::Solve(io) => emit(&solve(&io.input, &opts)?, io.output.as_deref()),
        Command::Discretize(io) => emit(&discretize(&io.input)?, io.output.as_deref()),
        Command::Certify { io, approx } => {
            emit(&certify(&io.input, &approx, &opts)?, io.output.as_deref())
        }
        Command::Reproduce { which, n, output } => {
            let table = match which {
                Which::SquareWell => Table::SquareWell,
                Which::Cantor => Table::Cantor,
            };
            emit(&reproduce(table, &n, &opts)?, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("deltaspec: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

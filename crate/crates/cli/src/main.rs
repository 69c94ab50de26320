//! `mlorenz`: geodesic coding, Lorenz braids and volume bounds from the
//! command line.

mod commands;
mod number;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "mlorenz",
    version,
    about = "Geodesic coding, Lorenz braids and volume bounds"
)]
struct Cli {
    /// Significant digits for real numbers in text output.
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coding data of a word or code: matrix, trace, length, fixed point, continued fraction.
    Code {
        /// Word such as `X^4Y^3XY^2`, or code such as `[4,3,1,2]`.
        input: String,
        /// Generator scale, 1 (modular surface) or 2 (thrice-punctured sphere).
        #[arg(long, default_value_t = 1)]
        scale: u64,
        /// Number of cutting-sequence runs to print.
        #[arg(long, default_value_t = 8)]
        runs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Lorenz braid of a primitive word.
    Braid {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a volume bound.
    Bounds(BoundsArgs),
    /// Generate a word family, optionally checking its trace recurrences.
    Family(FamilyArgs),
    /// Draw the Lorenz braid of a word as SVG.
    Render {
        word: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// One of thm-seq, thm-ub, coro-nub, coro-2, pib2, thm1, tps.
    formula: String,
    #[arg(long)]
    n: Option<u64>,
    /// Geodesic length; computed from `--word` when absent.
    #[arg(long)]
    ell: Option<f64>,
    #[arg(long = "C")]
    c: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    dsigma: Option<u64>,
    #[arg(long)]
    genus: Option<u64>,
    #[arg(long)]
    punctures: Option<u64>,
    #[arg(long)]
    word: Option<String>,
    /// Generator scale used when the length comes from `--word`.
    #[arg(long, default_value_t = 1)]
    scale: u64,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// One of staircase, eta, ub, tps, fig8.
    id: String,
    #[arg(long)]
    n: Option<u64>,
    /// Comma-separated X exponents (staircase, fig8).
    #[arg(long, value_delimiter = ',')]
    k: Vec<u64>,
    /// Slope for tps; comma-separated Y exponents for fig8.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u64>,
    #[arg(long)]
    r: Option<u64>,
    /// Run the trace-recurrence checks for the family.
    #[arg(long)]
    check: bool,
    /// One row per n = 1..=N: n, word, period, length, lower, upper.
    #[arg(long)]
    table: bool,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Code {
            input,
            scale,
            runs,
            json,
        } => commands::code(&input, scale, runs, json, cli.digits),
        Command::Braid { word, json } => commands::braid(&word, json, cli.digits),
        Command::Bounds(args) => commands::bounds(&args, cli.digits),
        Command::Family(args) => commands::family(&args, cli.digits),
        Command::Render { word, out } => commands::render(&word, out.as_deref()),
    };
    match result {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mlorenz: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

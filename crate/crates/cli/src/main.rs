mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{Failure, Outcome};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "tightcurve", version, about = "Tight closure decisions for ideals on smooth plane curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-degree closure table for an ideal.
    Analyze(RunArgs),
    /// Decide a single element.
    Decide(RunArgs),
    /// Dimensions of the graded syzygy pieces.
    Syzygies(RunArgs),
    /// Frobenius-power membership of an element.
    Frobtest(RunArgs),
    /// Fermat curves and ideals (x^a,y^a,z^a) over a grid of primes.
    Scan(ScanArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    /// Curve equation, e.g. "x^4+y^4-z^4".
    #[arg(long)]
    pub curve: String,
    /// Comma-separated generators, e.g. "x^2,y^2,z^2".
    #[arg(long)]
    pub ideal: String,
    #[arg(long)]
    pub element: Option<String>,
    /// Inclusive degree window "a..b"; defaults to 0..Σd.
    #[arg(long)]
    pub degrees: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub emax: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Exit with status 3 when the outcome is mostly Unknown.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Comma-separated primes.
    #[arg(long, default_value = "5,7,11")]
    pub primes: String,
    /// Comma-separated curve degrees.
    #[arg(long, default_value = "3,4,5")]
    pub deltas: String,
    /// Comma-separated exponents a.
    #[arg(long, default_value = "2,3")]
    pub powers: String,
    #[arg(long)]
    pub degrees: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub emax: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON-lines output file; stdout when absent.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Analyze(a) => report::analyze(a),
        Command::Decide(a) => report::decide(a),
        Command::Syzygies(a) => report::syzygies(a),
        Command::Frobtest(a) => report::frobtest(a),
        Command::Scan(a) => report::scan(a),
    };
    match result {
        Ok(Outcome { text, unknown_dominant, strict }) => {
            print!("{text}");
            if strict && unknown_dominant {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

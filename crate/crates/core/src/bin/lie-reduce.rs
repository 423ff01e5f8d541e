use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lie_reduce::expr::Format;
use lie_reduce::fixtures::{FixtureSet, FIXTURES_ENV};
use lie_reduce::suites::{self, Command, Options, SuiteError};

/// Verification suites for the generalized Kuramoto-Sivashinsky class.
///
/// Logarithms of t are taken on t > 0 (and z > 0 for z = t), where every
/// closed-form check is carried out.
#[derive(Parser)]
#[command(name = "lie-reduce", version)]
struct Cli {
    /// Fixture directory [default: $LIE_REDUCE_FIXTURES, else the bundled fixtures]
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Plain)]
    format: OutFormat,
    /// Restrict to one worked example
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=4))]
    case: Option<u8>,
    /// Element to classify: Z3, Z^(8):a=1,b=0 or a combination like "Z1 + Z5 + Z6"
    #[arg(long, global = true)]
    element: Option<String>,
    /// Override the numeric tolerances stored with the fixtures
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Plain,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verify {
    Symbolic,
    Numeric,
}

#[derive(Subcommand)]
enum Cmd {
    /// Commutator and adjoint tables
    Tables {
        /// Compare every entry with the fixtures
        #[arg(long)]
        compare: bool,
    },
    /// Equivalence generators, their flows and class preservation
    VerifyGroup,
    /// Symmetries admitted by every member of the class
    Principal,
    /// Preliminary classification of optimal-system elements
    Classify,
    /// Similarity reductions to ODEs
    Reduce {
        #[arg(long, value_enum, default_value_t = Verify::Symbolic)]
        verify: Verify,
        /// Write numeric trajectories as CSV into this directory
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Closed-form solutions of the reduced ODEs
    Solve,
    /// Randomized property suites and optimal-system spot checks
    Check,
    /// Every suite
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lie-reduce: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, SuiteError> {
    let dir = cli.fixtures.clone().unwrap_or_else(FixtureSet::default_dir);
    let fx = FixtureSet::load(&dir).inspect_err(|_| {
        if cli.fixtures.is_none() && std::env::var_os(FIXTURES_ENV).is_some() {
            eprintln!("lie-reduce: fixtures taken from ${FIXTURES_ENV}");
        }
    })?;
    let mut opts = Options {
        case: cli.case,
        element: cli.element,
        tol: cli.tol,
        seed: cli.seed,
        ..Options::default()
    };
    let cmd = match cli.command {
        Cmd::Tables { compare } => {
            opts.compare = compare;
            Command::Tables
        }
        Cmd::VerifyGroup => Command::VerifyGroup,
        Cmd::Principal => Command::Principal,
        Cmd::Classify => Command::Classify,
        Cmd::Reduce { verify, csv } => {
            opts.verify_numeric = verify == Verify::Numeric;
            opts.csv_dir = csv;
            Command::Reduce
        }
        Cmd::Solve => Command::Solve,
        Cmd::Check => Command::Check,
        Cmd::All => Command::All,
    };
    let report = suites::run(cmd, &fx, &opts)?;
    let format = match cli.format {
        OutFormat::Plain => Format::Plain,
        OutFormat::Json => Format::Json,
        OutFormat::Latex => Format::Latex,
    };
    print!("{}", report.emit(format));
    Ok(ExitCode::from(report.exit_code() as u8))
}

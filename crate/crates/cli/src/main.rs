use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ropelength::fixtures;
use ropelength::oracles::{OracleConfig, DEFAULT_SEED};
use ropelength::quadrisecant::DEFAULT_TOL;
use ropelength_cli::oracle_check::{DEFAULT_GRID, DEFAULT_QUADRUPLES};
use ropelength_cli::render::{render_analysis, render_constants, render_oracle_check};
use ropelength_cli::{
    cmd_analyze, cmd_constants, cmd_oracle_check, format_knot, read_knot_file, AnalyzeOptions, CliError, Result,
};

#[derive(Parser)]
#[command(name = "ropelength", version, about = "Ropelength, thickness and quadrisecant analysis of polygonal knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Thickness, ropelength, quadrisecants and lower-bound certificates.
    Analyze(AnalyzeArgs),
    /// Every bound constant with its closed form and recomputation.
    Constants {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare analytic bounds and the transversal solver with brute-force oracles.
    OracleCheck {
        /// Subdivisions per axis of the (r, s, theta) grid.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random segment quadruples for the transversal cross-check.
        #[arg(long, default_value_t = DEFAULT_QUADRUPLES)]
        quadruples: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a bundled knot as a vertex file.
    Fixture {
        /// One of: trefoil, figure-eight, convex-20gon, square, dented-unknot.
        name: String,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Vertex file with one `x y z` line per vertex.
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    file: Option<PathBuf>,
    /// Analyze a bundled knot instead of a file.
    #[arg(long)]
    fixture: Option<String>,
    /// Quadrisecant tolerance, relative to the bounding-box diagonal.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Also emit bounds that hold when the quadrisecants are essential.
    #[arg(long)]
    assume_essential: bool,
    /// Exit with status 3 if the ropelength is too small for a nontrivial knot.
    #[arg(long)]
    expect_nontrivial: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include the unit-thickness vertices in the output.
    #[arg(long)]
    normalize: bool,
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(report).map_err(|e| CliError::Parse(e.to_string()))?;
            println!("{json}");
        }
        Format::Text => print!("{}", text(report)),
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<()> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Parse(format!("--tol must be positive and finite, got {}", args.tol)));
    }
    let (knot, source, warnings) = match (&args.file, &args.fixture) {
        (_, Some(name)) => {
            let knot = fixtures::by_name(name).ok_or_else(|| CliError::UnknownFixture(name.clone()))?;
            (knot, format!("fixture:{name}"), Vec::new())
        }
        (Some(path), None) => {
            let file = read_knot_file(path)?;
            (file.knot, path.display().to_string(), file.warnings)
        }
        (None, None) => unreachable!("clap requires a file or a fixture"),
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let opts = AnalyzeOptions {
        tol: args.tol,
        assume_essential: args.assume_essential,
        expect_nontrivial: args.expect_nontrivial,
        normalize: args.normalize,
        seed: args.seed,
    };
    let report = cmd_analyze(&knot, &source, warnings, &opts)?;
    emit(args.format, &report, render_analysis)?;
    match report.expectation_error() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze(args) => analyze(args).map(|()| true),
        Command::Constants { format } => {
            let report = cmd_constants();
            emit(format, &report, render_constants)?;
            Ok(report.passed)
        }
        Command::OracleCheck {
            grid,
            seed,
            quadruples,
            format,
        } => {
            if grid == 0 {
                return Err(CliError::Parse("--grid must be at least 1".to_string()));
            }
            let cfg = OracleConfig {
                seed,
                ..OracleConfig::default()
            };
            let report = cmd_oracle_check(grid, quadruples, &cfg);
            emit(format, &report, render_oracle_check)?;
            Ok(report.passed)
        }
        Command::Fixture { name } => {
            let knot = fixtures::by_name(&name).ok_or_else(|| CliError::UnknownFixture(name.clone()))?;
            print!("{}", format_knot(&knot, &format!("fixture {name}")));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        // a check command ran but reported failures
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

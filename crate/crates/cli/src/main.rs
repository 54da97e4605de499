use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gammalcm::certify::{self, AxisRange, GridSpec, DEFAULT_K_MAX};
use gammalcm_cli::report::{self, Report, ReportEntry};
use gammalcm_cli::suites::{self, Suite, SuiteOptions};

/// Numeric verification of gamma-function inequalities and logarithmic
/// complete monotonicity of h_{α,y}.
#[derive(Parser, Debug)]
#[command(name = "gammalcm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and emit a report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a grid of (alpha, y) points.
    Scan {
        /// alpha range as start:end:step
        #[arg(long, allow_hyphen_values = true)]
        alpha: AxisRange,
        /// y range as start:end:step
        #[arg(long, allow_hyphen_values = true)]
        y: AxisRange,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Highest derivative order certified
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    kmax: usize,
    /// Grid points per certificate
    #[arg(long)]
    grid_points: Option<usize>,
    /// Right end of the certification grid
    #[arg(long)]
    x_max: Option<f64>,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Common {
    fn grid(&self) -> GridSpec {
        let mut g = GridSpec::default();
        if let Some(n) = self.grid_points {
            g.points = n;
        }
        if let Some(x) = self.x_max {
            g.x_max = x;
        }
        g
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Verify { suite, common } => {
            let opts = SuiteOptions { grid: common.grid(), k_max: common.kmax };
            let results = suites::run(suite, &opts).map_err(|e| e.to_string())?;
            let report = Report::new(suite.name(), results);
            let body = match common.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
            };
            emit(&common.out, &body)?;
            Ok(report.exit_code())
        }
        Command::Scan { alpha, y, common } => {
            let alphas = alpha.values().map_err(|e| e.to_string())?;
            let ys = y.values().map_err(|e| e.to_string())?;
            let cells = certify::scan_alpha_y(&alphas, &ys, common.kmax, &common.grid()).map_err(|e| e.to_string())?;
            let report = Report::new("scan", cells.iter().copied().map(ReportEntry::cell).collect());
            match common.format {
                Format::Json => emit(&common.out, &(report.to_json() + "\n"))?,
                Format::Csv => {
                    emit(&common.out, &report::scan_csv(&cells))?;
                    eprintln!("{}", report.to_json());
                }
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line driver.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 invalid scenario,
//! 3 verification failure.

pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::model::{db_to_linear, ErrorBounds, Mode};
use crate::region::{frontier, sweep_region, RegionError};
pub use config::{ConfigError, ScenarioFile};

#[derive(Debug, Parser)]
#[command(
    name = "fdwiretap",
    version,
    about = "Secrecy rate region of a full-duplex wiretap channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the rate-target grid and write one CSV row per cell.
    Region(Common),
    /// Print the maximum sum secrecy rate and its allocation.
    Sumrate(Common),
    /// Print or write the Pareto frontier of the secrecy rate region.
    Frontier(Common),
    /// Cross-check the solvers against the brute-force oracles.
    Verify(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Scenario file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "perfect", value_parser = parse_mode)]
    mode: Mode,
    /// Uniform CSI error bound, overriding the file.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
    /// Target grid as KxL.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    /// Bisection stopping width.
    #[arg(long)]
    zeta: Option<f64>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Power budgets in dB as P1,P2.
    #[arg(long = "power-db", value_parser = parse_pair, allow_hyphen_values = true)]
    power_db: Option<(f64, f64)>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (k, l) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected KxL, got '{s}'"))?;
    let k = k.trim().parse().map_err(|_| format!("bad K in '{s}'"))?;
    let l = l.trim().parse().map_err(|_| format!("bad L in '{s}'"))?;
    Ok((k, l))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected P1,P2, got '{s}'"))?;
    let a = a.trim().parse().map_err(|_| format!("bad P1 in '{s}'"))?;
    let b = b.trim().parse().map_err(|_| format!("bad P2 in '{s}'"))?;
    Ok((a, b))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {path}: {source}")]
    ReadConfig { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Scenario { path: PathBuf, source: ConfigError },
    #[error("cannot write output {path}: {source}")]
    WriteOutput { path: PathBuf, source: std::io::Error },
    #[error("solver failure: {0}")]
    Solver(#[from] RegionError),
    #[error("verification failed: {0} check(s) did not pass")]
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ReadConfig { .. } | CliError::WriteOutput { .. } | CliError::Solver(_) => 1,
            CliError::Scenario { .. } => 2,
            CliError::Verification(_) => 3,
        }
    }
}

/// Loads the scenario file and applies command-line overrides.
fn load(common: &Common) -> Result<ScenarioFile, CliError> {
    let text = std::fs::read_to_string(&common.config).map_err(|source| CliError::ReadConfig {
        path: common.config.clone(),
        source,
    })?;
    let invalid = |source: ConfigError| CliError::Scenario {
        path: common.config.clone(),
        source,
    };
    let mut file = ScenarioFile::parse(&text).map_err(invalid)?;
    if let Some(eps) = common.eps {
        file.scenario.errors = ErrorBounds::uniform(eps);
    }
    if let Some((p1, p2)) = common.power_db {
        file.scenario.p1 = db_to_linear(p1);
        file.scenario.p2 = db_to_linear(p2);
    }
    if let Some((k, l)) = common.grid {
        file.config.grid_k = k;
        file.config.grid_l = l;
    }
    if let Some(z) = common.zeta {
        file.config.zeta = z;
    }
    file.scenario = file.scenario.validate().map_err(|e| invalid(e.into()))?;
    file.config = file.config.validate().map_err(|e| invalid(e.into()))?;
    Ok(file)
}

fn write_to(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::WriteOutput {
        path: path.to_path_buf(),
        source,
    })
}

/// `region.csv` -> `region.frontier.csv`.
pub fn frontier_path(out: &Path) -> PathBuf {
    let stem = match out.extension() {
        Some(ext) if ext == "csv" => out.with_extension(""),
        _ => out.to_path_buf(),
    };
    let mut name = stem.into_os_string();
    name.push(".frontier.csv");
    PathBuf::from(name)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_to(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Region(c) => {
            let f = load(&c)?;
            let result = sweep_region(&f.scenario, c.mode, &f.config)?;
            let csv = output::region_csv(&result);
            emit(c.out.as_deref(), &csv)?;
            if let Some(out) = &c.out {
                write_to(&frontier_path(out), &output::frontier_csv(&frontier(&result)))?;
            }
        }
        Command::Sumrate(c) => {
            let f = load(&c)?;
            let result = sweep_region(&f.scenario, c.mode, &f.config)?;
            let text = match result.best_point() {
                Some(p) => format!(
                    "mode: {}\nmax_sum_secrecy: {}\ncell: k={} l={}\nr1_achieved: {}\nr2_achieved: {}\nre_min: {}\nallocation: p1s={} p1n={} p2s={} p2n={}\n",
                    c.mode,
                    output::sig9(p.sum_secrecy),
                    p.k,
                    p.l,
                    output::sig9(p.r1_achieved),
                    output::sig9(p.r2_achieved),
                    output::sig9(p.re_min),
                    output::sig9(p.alloc.p1s),
                    output::sig9(p.alloc.p1n),
                    output::sig9(p.alloc.p2s),
                    output::sig9(p.alloc.p2n),
                ),
                None => format!("mode: {}\nmax_sum_secrecy: 0\ncell: none feasible\n", c.mode),
            };
            emit(c.out.as_deref(), &text)?;
        }
        Command::Frontier(c) => {
            let f = load(&c)?;
            let result = sweep_region(&f.scenario, c.mode, &f.config)?;
            emit(c.out.as_deref(), &output::frontier_csv(&frontier(&result)))?;
        }
        Command::Verify(c) => {
            let f = load(&c)?;
            let report = verify::run_checks(&f.scenario, &f.config)?;
            emit(c.out.as_deref(), &report.to_string())?;
            let failed = report.failures();
            if failed > 0 {
                return Err(CliError::Verification(failed));
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the subcommand, returning
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

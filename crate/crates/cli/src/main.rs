//! `sl2cohom`: dimension queries, parameter sweeps, cross-verification and
//! cocycle-basis export.
//!
//! Exit codes: 0 success, 1 method disagreement, 2 usage, 3 I/O.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2cohom::sweep::{self, OraclePolicy, SweepConfig, VerifyReport};
use sl2cohom::{
    brute_force_h2, closed_form_result, cocycle_basis, default_alpha_max, dim_h2_via_system, summary_result,
    CohomError, CohomResult, Method, Perturbation, Rational, Weights,
};

#[derive(Parser)]
#[command(
    name = "sl2cohom",
    version,
    about = "Second sl(2)-cohomology of n-ary differential operators on densities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute dim H² for one weight vector with the requested methods
    Dim(DimArgs),
    /// Sweep singular grids and nonresonant rows up to --k-max
    Table(SweepArgs),
    /// Sweep and compare the system rank against the oracle
    Verify(VerifyArgs),
    /// Export a cocycle basis as JSON
    Basis(WeightArgs),
}

#[derive(Args)]
struct WeightArgs {
    /// Number of arguments; checked against --lambdas when given
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated exact rationals, e.g. 0,-1/2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    lambdas: Vec<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Rational,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DimArgs {
    #[command(flatten)]
    weights: WeightArgs,
    #[arg(long, value_delimiter = ',', default_value = "system,closed")]
    methods: Vec<Method>,
    /// Oracle truncation (default k + 3)
    #[arg(long)]
    alpha_max: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k_max: u64,
    /// Oracle truncation (default k + 3)
    #[arg(long)]
    alpha_max: Option<u32>,
    /// Oracle participation; auto runs it for n ≤ 2, k ≤ 4
    #[arg(long, value_enum, default_value_t = OracleFlag::Auto)]
    oracle: OracleFlag,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Add 1 to the first entry of every system matrix
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleFlag {
    Auto,
    On,
    Off,
}

impl From<OracleFlag> for OraclePolicy {
    fn from(flag: OracleFlag) -> Self {
        match flag {
            OracleFlag::Auto => OraclePolicy::Auto,
            OracleFlag::On => OraclePolicy::Always,
            OracleFlag::Off => OraclePolicy::Never,
        }
    }
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<CohomError> for Failure {
    fn from(e: CohomError) -> Self {
        match e {
            CohomError::Io(_) | CohomError::Csv(_) | CohomError::Json(_) => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

impl WeightArgs {
    fn weights(&self) -> Result<Weights, Failure> {
        if let Some(n) = self.n {
            if n != self.lambdas.len() {
                return Err(Failure::Usage(format!(
                    "--n {n} but {} lambdas given",
                    self.lambdas.len()
                )));
            }
        }
        Ok(Weights::new(self.lambdas.clone(), self.mu.clone()))
    }
}

impl SweepArgs {
    fn config(&self, perturbation: Option<Perturbation>) -> SweepConfig {
        SweepConfig {
            n: self.n,
            k_max: self.k_max,
            oracle: self.oracle.into(),
            alpha_max: self.alpha_max,
            perturbation,
        }
    }
}

fn cmd_dim(args: &DimArgs) -> Result<u8, Failure> {
    let w = args.weights.weights()?;
    let mut results: Vec<CohomResult> = Vec::new();
    for method in &args.methods {
        results.push(match method {
            Method::System => dim_h2_via_system(&w),
            Method::Closed => closed_form_result(&w),
            Method::Summary => summary_result(&w),
            Method::Oracle => brute_force_h2(&w, args.alpha_max.unwrap_or_else(|| default_alpha_max(&w)))?,
        });
    }
    let mut out = open_output(&args.weights.out)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &results).map_err(CohomError::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut out);
            writer
                .write_record(["method", "dim", "case", "alpha_max", "stable", "note"])
                .map_err(CohomError::from)?;
            for r in &results {
                writer
                    .write_record([
                        r.method.to_string(),
                        r.dim.map(|d| d.to_string()).unwrap_or_else(|| "unsupported".into()),
                        r.case.clone(),
                        r.alpha_max.map(|a| a.to_string()).unwrap_or_default(),
                        r.stable.to_string(),
                        r.note.clone().unwrap_or_default(),
                    ])
                    .map_err(CohomError::from)?;
            }
            writer.flush()?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_table(args: &SweepArgs) -> Result<u8, Failure> {
    let rows = sweep::run_sweep(&args.config(None))?;
    let mut out = open_output(&args.out)?;
    match args.format {
        Format::Csv => sweep::write_csv(&rows, &mut out)?,
        Format::Json => sweep::write_json(&rows, &mut out)?,
    }
    out.flush()?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let perturbation = args.inject_fault.then(Perturbation::default);
    let report: VerifyReport = sweep::verify(&args.sweep.config(perturbation))?;
    let mut out = open_output(&args.sweep.out)?;
    match args.sweep.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(CohomError::from)?;
            writeln!(out)?;
        }
        Format::Csv => report.write_text(&mut out)?,
    }
    out.flush()?;
    Ok(report.exit_code() as u8)
}

fn cmd_basis(args: &WeightArgs) -> Result<u8, Failure> {
    let w = args.weights()?;
    let basis = if w.delta_natural().is_some() {
        cocycle_basis(&w)?
    } else {
        eprintln!("H²=0, empty basis");
        Vec::new()
    };
    let mut out = open_output(&args.out)?;
    serde_json::to_writer_pretty(&mut out, &basis).map_err(CohomError::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(0)
}

fn configure_threads() {
    if let Some(n) = std::env::var("COHOM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = match &cli.command {
        Command::Dim(a) => cmd_dim(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Basis(a) => cmd_basis(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

//! Command-line front end.
//!
//! Exit status: `0` success, `2` data error (unreadable or malformed dataset),
//! `64` usage error (bad flags, parameters or spec file), `70` solver failure,
//! `74` output could not be written.

pub mod dataset;
pub mod spec_file;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::estimators::{aumann_mean, dtheta_median, fsbp, objective};
use crate::interval::{Interval, Sample, ThetaConfig};
use crate::simulation::{breakdown_experiment, consistency_experiment, ExperimentResult};

pub use dataset::{parse_dataset, write_dataset, DatasetFormat};
pub use spec_file::parse_spec;

pub const TOOL: &str = "interval-robust";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SEED_ENV: &str = "INTERVAL_ROBUST_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Robust location estimates for interval-valued data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct SolverArgs {
    /// Weight of the spread component in d_theta
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Relative step tolerance of the median solver
    #[arg(long, default_value_t = ThetaConfig::DEFAULT_TOL, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long, default_value_t = ThetaConfig::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Aumann mean and d_theta-median of a dataset
    Estimate {
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo consistency experiment from a spec file
    Simulate {
        spec: PathBuf,
        /// Directory receiving rows.csv and summary.json
        #[arg(long)]
        output: PathBuf,
        /// Overrides the spec seed and INTERVAL_ROBUST_SEED
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Drift of median and mean when the last k observations are replaced by [M, M]
    Breakdown {
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Comma-separated ascending magnitudes M
        #[arg(long, value_delimiter = ',', required = true)]
        magnitudes: Vec<f64>,
        /// Comma-separated numbers of replaced observations
        #[arg(long = "k", value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Solver(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Solver(_) => EXIT_SOFTWARE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Solver(m) | CliError::Io(m) => m,
        }
    }
}

// Errors raised while interpreting a dataset are data errors; parameter
// problems are usage errors.
fn from_data_stage(e: Error) -> CliError {
    match e {
        Error::InvalidParameter(m) => CliError::Usage(m),
        Error::NumericFailure { .. } => CliError::Solver(e.to_string()),
        other => CliError::Data(other.to_string()),
    }
}

fn from_spec_stage(e: Error) -> CliError {
    match e {
        Error::NumericFailure { .. } => CliError::Solver(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status. `seed_env` is the value of `INTERVAL_ROBUST_SEED`, if set.
pub fn run<W: Write, E: Write>(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    seed_env: Option<String>,
    out: &mut W,
    err: &mut E,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, seed_env, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch<W: Write, E: Write>(
    command: Command,
    seed_env: Option<String>,
    out: &mut W,
    err: &mut E,
) -> Result<(), CliError> {
    match command {
        Command::Estimate {
            input,
            solver,
            format,
            output,
        } => {
            let cfg = solver_config(&solver)?;
            let sample = read_dataset(&input)?;
            let doc = estimate_document(&sample, &cfg, format, err)?;
            emit(&doc, output.as_deref(), out)
        }
        Command::Simulate { spec, output, seed } => {
            let text =
                fs::read_to_string(&spec).map_err(|e| CliError::Usage(format!("{}: {e}", spec.display())))?;
            let mut spec = parse_spec(&text).map_err(from_spec_stage)?;
            if let Some(raw) = seed_env {
                spec.seed = raw.trim().parse().map_err(|_| {
                    CliError::Usage(format!("{SEED_ENV}=`{raw}` is not an unsigned 64-bit integer"))
                })?;
            }
            if let Some(seed) = seed {
                spec.seed = seed;
            }
            let result = consistency_experiment(&spec).map_err(from_spec_stage)?;
            write_simulation(&result, &output)?;
            writeln!(
                out,
                "truth {} ({})\nrows {}\nsummary {}",
                result.truth,
                result.truth_provenance,
                output.join("rows.csv").display(),
                output.join("summary.json").display()
            )
            .map_err(|e| CliError::Io(e.to_string()))
        }
        Command::Breakdown {
            input,
            solver,
            magnitudes,
            k,
            format,
            output,
        } => {
            let cfg = solver_config(&solver)?;
            let sample = read_dataset(&input)?;
            let doc = breakdown_document(&sample, &cfg, &magnitudes, &k, format)?;
            emit(&doc, output.as_deref(), out)
        }
    }
}

fn solver_config(args: &SolverArgs) -> Result<ThetaConfig, CliError> {
    ThetaConfig::new(args.theta, args.tol, args.max_iter).map_err(|e| CliError::Usage(e.to_string()))
}

fn read_dataset(path: &Path) -> Result<Sample, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    parse_dataset(&text)
        .map(|(_, sample)| sample)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn emit<W: Write>(doc: &str, output: Option<&Path>, out: &mut W) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, doc).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => out
            .write_all(doc.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Shortest round-trip rendering, identical to the JSON number form.
pub fn real(x: f64) -> String {
    serde_json::to_string(&x).expect("finite reals serialize")
}

#[derive(Serialize)]
struct IntervalDoc {
    inf: f64,
    sup: f64,
    mid: f64,
    spr: f64,
}

impl From<&Interval> for IntervalDoc {
    fn from(k: &Interval) -> Self {
        IntervalDoc {
            inf: k.inf(),
            sup: k.sup(),
            mid: k.mid(),
            spr: k.spr(),
        }
    }
}

fn header_lines(cfg: &ThetaConfig, seed: Option<u64>) -> String {
    let seed = seed.map_or("none".to_string(), |s| s.to_string());
    format!(
        "# tool={TOOL} version={VERSION}\n# theta={} tol={} max_iter={} seed={seed}\n",
        real(cfg.theta.get()),
        real(cfg.tol),
        cfg.max_iter
    )
}

/// Renders the `estimate` report. Warnings about non-unique or unconverged
/// medians go to `diag`.
pub fn estimate_document<E: Write>(
    sample: &Sample,
    cfg: &ThetaConfig,
    format: OutputFormat,
    diag: &mut E,
) -> Result<String, CliError> {
    let mean = aumann_mean(sample);
    let mean_objective = objective(sample, &mean, cfg.theta);
    let median = dtheta_median(sample, cfg).map_err(from_data_stage)?;
    if !median.unique {
        let _ = writeln!(
            diag,
            "warning: the (mid, spr) points are collinear; the d_theta-median may not be unique"
        );
    }
    if !median.converged {
        let _ = writeln!(
            diag,
            "warning: median solver stopped after {} iterations without meeting tol",
            median.iterations
        );
    }
    Ok(match format {
        OutputFormat::Json => {
            let doc = json!({
                "tool": TOOL,
                "version": VERSION,
                "command": "estimate",
                "theta": cfg.theta.get(),
                "tol": cfg.tol,
                "max_iter": cfg.max_iter,
                "seed": null,
                "n": sample.len(),
                "mean": {
                    "interval": IntervalDoc::from(&mean),
                    "objective": mean_objective,
                },
                "median": {
                    "interval": IntervalDoc::from(&median.estimate),
                    "objective": median.objective,
                    "iterations": median.iterations,
                    "converged": median.converged,
                    "unique": median.unique,
                    "final_step": median.final_step,
                },
            });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
        OutputFormat::Csv => {
            let mut s = header_lines(cfg, None);
            s.push_str("estimator,inf,sup,mid,spr,objective,iterations,converged,unique,final_step\n");
            s.push_str(&format!(
                "mean,{},{},{},{},{},,,,\n",
                real(mean.inf()),
                real(mean.sup()),
                real(mean.mid()),
                real(mean.spr()),
                real(mean_objective)
            ));
            let k = &median.estimate;
            s.push_str(&format!(
                "median,{},{},{},{},{},{},{},{},{}\n",
                real(k.inf()),
                real(k.sup()),
                real(k.mid()),
                real(k.spr()),
                real(median.objective),
                median.iterations,
                median.converged,
                median.unique,
                real(median.final_step)
            ));
            s
        }
    })
}

/// `fsbp(n)` as `"<decimal> (<num>/<den>)"`, e.g. `0.6 (3/5)`.
pub fn fsbp_label(n: usize) -> Result<String, CliError> {
    let r = fsbp(n as u64).map_err(|e| CliError::Data(e.to_string()))?;
    let decimal = *r.numer() as f64 / *r.denom() as f64;
    Ok(format!("{decimal} ({}/{})", r.numer(), r.denom()))
}

/// Renders the `breakdown` drift table.
pub fn breakdown_document(
    sample: &Sample,
    cfg: &ThetaConfig,
    magnitudes: &[f64],
    ks: &[usize],
    format: OutputFormat,
) -> Result<String, CliError> {
    let n = sample.len();
    if let Some(&bad) = ks.iter().find(|&&k| k > n) {
        return Err(CliError::Usage(format!("k={bad} exceeds the sample size n={n}")));
    }
    let mut rows = Vec::new();
    for &k in ks {
        rows.extend(breakdown_experiment(sample, cfg, magnitudes, k).map_err(from_data_stage)?);
    }
    let label = fsbp_label(n)?;
    Ok(match format {
        OutputFormat::Json => {
            let doc = json!({
                "tool": TOOL,
                "version": VERSION,
                "command": "breakdown",
                "theta": cfg.theta.get(),
                "tol": cfg.tol,
                "max_iter": cfg.max_iter,
                "seed": null,
                "n": n,
                "fsbp": label,
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
        OutputFormat::Csv => {
            let mut s = header_lines(cfg, None);
            s.push_str(&format!("# n={n} fsbp={label}\n"));
            s.push_str("k,magnitude,median_drift,mean_drift\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    r.k,
                    real(r.magnitude),
                    real(r.median_drift),
                    real(r.mean_drift)
                ));
            }
            s
        }
    })
}

/// Per-replication rows as CSV.
pub fn simulation_rows_csv(result: &ExperimentResult) -> String {
    let spec = &result.spec;
    let cfg = spec.solver().expect("validated spec");
    let mut s = header_lines(&cfg, Some(spec.seed));
    s.push_str("n,replication,error\n");
    for r in &result.rows {
        s.push_str(&format!("{},{},{}\n", r.n, r.replication, real(r.error)));
    }
    s
}

/// Run metadata, truth and per-n summaries as JSON.
pub fn simulation_summary_json(result: &ExperimentResult) -> String {
    let spec = &result.spec;
    let doc = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": "simulate",
        "theta": spec.theta.get(),
        "tol": spec.tol,
        "max_iter": spec.max_iter,
        "seed": spec.seed,
        "mid_law": spec.distribution.mid_law.to_string(),
        "spr_law": spec.distribution.spr_law.to_string(),
        "contamination": spec.distribution.contamination,
        "sample_sizes": spec.sample_sizes,
        "replications": spec.replications,
        "truth": IntervalDoc::from(&result.truth),
        "truth_provenance": result.truth_provenance.to_string(),
        "summaries": result.summaries,
    });
    serde_json::to_string_pretty(&doc).expect("summary serializes") + "\n"
}

fn write_simulation(result: &ExperimentResult, dir: &Path) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("rows.csv"), simulation_rows_csv(result)).map_err(io)?;
    fs::write(dir.join("summary.json"), simulation_summary_json(result)).map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<&str> = std::iter::once(TOOL).chain(args.iter().copied()).collect();
        let code = run(argv, None, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn fsbp_labels() {
        assert_eq!(fsbp_label(5).unwrap(), "0.6 (3/5)");
        assert_eq!(fsbp_label(4).unwrap(), "0.5 (1/2)");
        assert_eq!(fsbp_label(1).unwrap(), "1 (1/1)");
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        assert_eq!(run_args(&["estimate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["estimate", "x.csv", "--theta", "abc"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["estimate", "x.csv", "--theta", "-1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["estimate", "x.csv", "--tol", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_succeeds() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("estimate"));
    }

    #[test]
    fn missing_dataset_is_a_data_error() {
        assert_eq!(run_args(&["estimate", "/nonexistent/data.csv"]).0, EXIT_DATA);
    }

    #[test]
    fn real_rendering() {
        assert_eq!(real(1e-10), "1e-10");
        assert_eq!(real(0.6), "0.6");
        assert_eq!(real(2.0), "2.0");
    }
}

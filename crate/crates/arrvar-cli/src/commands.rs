//! Subcommand implementations. Each returns the text to print and the exit
//! status, so the binary and the tests share one code path.

use std::path::{Path, PathBuf};

use arrvar::catalog::{fano_sweep, verify_catalog, GridOptions};
use arrvar::geometry::mori_chambers;
use arrvar::graded::Grading;
use arrvar::lattice::GroupElement;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::document::load_document;
use crate::error::{CliError, EXIT_FAILURE, EXIT_HEURISTIC, EXIT_OK};
use crate::report::{
    analysis_report, ClassOut, catalog_summary, chambers_report, faces_report, render_analysis, render_catalog, render_chambers,
    render_faces,
};

#[derive(Debug, Parser)]
#[command(name = "arrvar", version, about = "Geometry of explicit T-varieties and general arrangement varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full geometric report on a spec document.
    Analyze(AnalyzeArgs),
    /// Verify the bundled classification catalog over a parameter grid.
    VerifyCatalog(GridArgs),
    /// Mori chamber decomposition of Eff(X) for free rank two.
    Chambers(InputArgs),
    /// Dimension of a homogeneous component of the Cox ring.
    Hilbert(HilbertArgs),
    /// Relevant faces of the positive orthant with their classification.
    Faces(InputArgs),
    /// Catalog instances that are Fano or truly almost Fano.
    FanoSweep(GridArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    pub input: PathBuf,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
    /// Exit with status 3 when a verdict rests on the finite-field oracle.
    #[arg(long)]
    pub strict: bool,
    /// Also write the JSON report to this file.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    pub input: PathBuf,
    /// Free coordinates of the degree, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub degree: Vec<i64>,
    /// Torsion coordinates of the degree, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub torsion: Vec<i64>,
    /// Cross-check against the linear-algebra oracle, enumerating at most
    /// this many monomials.
    #[arg(long)]
    pub check: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args, Clone)]
pub struct GridArgs {
    /// Restrict to these rows (repeatable).
    #[arg(long = "row")]
    pub rows: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub max_param: i64,
    #[arg(long, default_value_t = 3)]
    pub max_m: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also report Fano status and Gorenstein index.
    #[arg(long)]
    pub fano: bool,
    #[arg(long)]
    pub json: bool,
}

/// Output of a subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::VerifyCatalog(g) => verify(g, false),
        Command::FanoSweep(g) => verify(g, true),
        Command::Chambers(a) => chambers(a),
        Command::Hilbert(a) => hilbert(a),
        Command::Faces(a) => faces(a),
    }
}

pub fn analyze(args: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let model = load_document(&args.input)?.model()?;
    let report = analysis_report(&model)?;
    let json = json_text(&report)?;
    if let Some(path) = &args.output {
        write_file(path, &json)?;
    }
    let stdout = if args.json { json } else { render_analysis(&report) };
    let code = if args.strict && report.heuristic { EXIT_HEURISTIC } else { EXIT_OK };
    Ok(Outcome { stdout, code })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError>
where
    T: Send,
{
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn verify(args: &GridArgs, sweep: bool) -> Result<Outcome, CliError> {
    let opts = GridOptions { max_param: args.max_param, max_m: args.max_m, fano: args.fano || sweep };
    let rows = args.rows.clone();
    let reports = with_jobs(args.jobs, || if sweep { fano_sweep(&rows, &opts) } else { verify_catalog(&rows, &opts) })??;
    let summary = catalog_summary(reports);
    let stdout = if args.json { json_text(&summary)? } else { render_catalog(&summary, opts.fano) };
    let code = if summary.failures > 0 { EXIT_FAILURE } else { EXIT_OK };
    Ok(Outcome { stdout, code })
}

pub fn chambers(args: &InputArgs) -> Result<Outcome, CliError> {
    let model = load_document(&args.input)?.model()?;
    let report = chambers_report(&mori_chambers(&model)?);
    let stdout = if args.json { json_text(&report)? } else { render_chambers(&report) };
    Ok(Outcome { stdout, code: EXIT_OK })
}

pub fn faces(args: &InputArgs) -> Result<Outcome, CliError> {
    let model = load_document(&args.input)?.model()?;
    let report = faces_report(&model);
    let stdout = if args.json { json_text(&report)? } else { render_faces(&report) };
    Ok(Outcome { stdout, code: EXIT_OK })
}

/// Counts are written as decimal strings since they may exceed `i64`.
#[derive(Debug, Serialize)]
struct HilbertReport {
    degree: ClassOut,
    monomials: String,
    dim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim_by_rank: Option<String>,
}

pub fn hilbert(args: &HilbertArgs) -> Result<Outcome, CliError> {
    let model = load_document(&args.input)?.model()?;
    let grading = Grading::from_model(&model)?;
    let w = GroupElement::from_i64(&args.degree, &args.torsion);
    model.group().check(&w)?;
    let w = model.group().reduce(w);
    let monomials = grading.count_monomials(&w)?;
    let dim = grading.graded_dim(&w)?;
    let dim_by_rank = args.check.map(|limit| grading.graded_dim_by_rank(&w, limit)).transpose()?;
    let code = if dim_by_rank.is_some_and(|d| d != dim) { EXIT_FAILURE } else { EXIT_OK };
    let stdout = if args.json {
        json_text(&HilbertReport {
            degree: (&w).into(),
            monomials: monomials.to_string(),
            dim: dim.to_string(),
            dim_by_rank: dim_by_rank.map(|d| d.to_string()),
        })?
    } else {
        let mut s = format!("dim R_{w} = {dim} ({monomials} monomials)\n");
        if let Some(d) = dim_by_rank {
            s.push_str(&format!("rank oracle: {d} ({})\n", if d == dim { "agrees" } else { "DISAGREES" }));
        }
        s
    };
    Ok(Outcome { stdout, code })
}

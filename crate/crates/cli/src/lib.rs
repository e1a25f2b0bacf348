//! Command-line front end: argument handling, input loading and artifact
//! writing. Each subcommand fills a [`Report`]; the exit status is 0 when
//! every check passes, 1 when some check fails (the report is still
//! written) and 2 for unusable input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use quadp3::groebner::DEFAULT_BUDGET;
use quadp3::multipoly::{MonomialOrder, VarSet};
use quadp3::ncalg::{QuadAlgebra, A_ALPHA};
use quadp3::scalars::{check_generic, RatFunc, Rational};

mod commands;
pub mod report;

pub use report::{CheckRecord, Report, Status};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "QUADP3_THREADS";

#[derive(Debug, Parser)]
#[command(name = "quadp3", version, about = "Point schemes and line schemes of quadratic algebras on four generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// The 15 point-scheme minors, their zero locus and the automorphism sigma.
    PointScheme,
    /// The 46 line-scheme polynomials, P first.
    LineScheme,
    /// Components, intersections, incidence, Jacobian and birational checks.
    Verify,
    /// Reduced Gröbner basis and Hilbert data of a polynomial list.
    Groebner,
    /// Dimensions of J_2 ∩ K_p at the intersection points.
    IdealDim(IdealDimArgs),
    /// Every check above together with the Hilbert dimension/degree checks.
    All,
}

#[derive(Debug, Clone, Args)]
pub struct IdealDimArgs {
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub delta: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub epsilon: String,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Presentation file (polynomial list for `groebner`); defaults to the
    /// bundled A(alpha) presentation.
    #[arg(global = true)]
    pub input: Option<PathBuf>,
    /// `symbolic` to work over Q(alpha), or a rational value such as `3`
    /// or `-1/2`.
    #[arg(long, global = true, default_value = "symbolic", allow_hyphen_values = true)]
    pub alpha: String,
    /// Monomial order for `groebner`: grevlex, grlex or lex.
    #[arg(long, global = true, default_value = "grevlex")]
    pub order: String,
    /// Maximum number of S-polynomial reductions per Gröbner run.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Accept values of alpha with alpha (1 - alpha^2) = 0.
    #[arg(long, global = true)]
    pub allow_degenerate: bool,
    /// Reference list to compare against instead of the bundled one.
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
    /// Directory receiving the JSON report and text artifacts.
    #[arg(long, short, global = true, default_value = "quadp3-out")]
    pub output: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("NonGenericError: alpha = {0} violates alpha (1 - alpha^2) != 0; pass --allow-degenerate to continue")]
    NonGeneric(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Debug)]
pub enum AlphaMode {
    Symbolic,
    Value(Rational),
}

impl AlphaMode {
    /// Values used for checks that need a rational specialization.
    pub fn check_values(&self) -> Vec<Rational> {
        match self {
            AlphaMode::Symbolic => vec![Rational::from(3), Rational::from(5)],
            AlphaMode::Value(v) => vec![v.clone()],
        }
    }

    fn label(&self) -> String {
        match self {
            AlphaMode::Symbolic => "symbolic".into(),
            AlphaMode::Value(v) => v.to_string(),
        }
    }
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub alpha: AlphaMode,
    pub order: MonomialOrder,
    pub budget: usize,
    pub allow_degenerate: bool,
    pub golden: Option<PathBuf>,
    pub output: PathBuf,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let c = &cli.common;
        let alpha = match c.alpha.trim() {
            "symbolic" => AlphaMode::Symbolic,
            text => {
                let v: Rational = text.parse().map_err(|_| CliError::Argument(format!("--alpha {text}")))?;
                if !c.allow_degenerate && check_generic(&v).is_err() {
                    return Err(CliError::NonGeneric(v.to_string()));
                }
                AlphaMode::Value(v)
            }
        };
        let order = c.order.parse().map_err(CliError::Argument)?;
        if c.budget == 0 {
            return Err(CliError::Argument("--budget must be positive".into()));
        }
        Ok(RunConfig {
            command: cli.command.clone(),
            input: c.input.clone(),
            alpha,
            order,
            budget: c.budget,
            allow_degenerate: c.allow_degenerate,
            golden: c.golden.clone(),
            output: c.output.clone(),
        })
    }

    fn describe(&self) -> serde_json::Value {
        json!({
            "alpha": self.alpha.label(),
            "order": self.order.to_string(),
            "budget": self.budget,
            "allow_degenerate": self.allow_degenerate,
            "golden": self.golden.as_ref().map(|p| p.display().to_string()),
        })
    }
}

/// A file written by a run.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

pub struct Outcome {
    pub report: Report,
    pub artifacts: Vec<Artifact>,
    pub written: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.passed {
            0
        } else {
            1
        }
    }
}

pub(crate) fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

/// The presentation to work on, with its display name and raw bytes.
pub(crate) fn load_algebra(input: Option<&Path>) -> Result<(String, String, QuadAlgebra<RatFunc>), CliError> {
    match input {
        None => Ok(("bundled:a_alpha".into(), A_ALPHA.to_string(), QuadAlgebra::a_alpha())),
        Some(p) => {
            let text = read_input(p)?;
            let alg = QuadAlgebra::parse(&text)
                .map_err(|e| CliError::Parse { path: p.display().to_string(), message: e.to_string() })?;
            Ok((p.display().to_string(), text, alg))
        }
    }
}

/// Parse a polynomial list whose first line is `vars: v1 v2 ...`.
pub(crate) fn parse_poly_file(path: &Path, text: &str) -> Result<(std::sync::Arc<VarSet>, String), CliError> {
    let err = |message: String| CliError::Parse { path: path.display().to_string(), message };
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim());
    let header = lines.find(|l| !l.is_empty()).ok_or_else(|| err("empty file".into()))?;
    let names = header.strip_prefix("vars:").ok_or_else(|| err("first line must be `vars: ...`".into()))?;
    let names: Vec<&str> = names.split_whitespace().collect();
    let vars = VarSet::new(&names).map_err(|e| err(e.to_string()))?;
    let body: Vec<&str> = lines.collect();
    Ok((vars, body.join("\n")))
}

/// Run a subcommand and write its artifacts into the output directory.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (report, artifacts) = commands::dispatch(cfg)?;
    let dir = &cfg.output;
    let werr = |path: &Path, source| CliError::Write { path: path.display().to_string(), source };
    fs::create_dir_all(dir).map_err(|e| werr(dir, e))?;
    let mut written = Vec::new();
    let json_path = dir.join(format!("{}.json", report.subcommand));
    fs::write(&json_path, report.to_json() + "\n").map_err(|e| werr(&json_path, e))?;
    written.push(json_path);
    for a in &artifacts {
        let path = dir.join(&a.name);
        fs::write(&path, &a.contents).map_err(|e| werr(&path, e))?;
        written.push(path);
    }
    Ok(Outcome { report, artifacts, written })
}

/// Configure the global thread pool from [`THREADS_ENV`].
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| CliError::Argument(format!("{THREADS_ENV}={v}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Argument(e.to_string()))?;
    }
    Ok(())
}

//! `srk`: table management, code generation, simulation, Monte Carlo runs
//! and convergence studies from the command line.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 numerical failure
//! (a trajectory blew up), 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use srk_core::codegen::{generate_bundle, Dialect, DEFAULT_MAX_NOISE_DIM};
use srk_core::convergence::{
    builtin_problem, builtin_problems, estimate_strong_order, estimate_weak_order, save_report, EstimateOptions,
    ReportMeta, StrongNorm, TestProblem,
};
use srk_core::montecarlo::{run_trials, McConfig};
use srk_core::schemes::{integrate, save_trajectory_csv, stepper_by_name, GaussianNoise, NoiseKind, Stepper, WeakNoise};
use srk_core::tables::{bundled, bundled_table, parse_table, render_table_math, validate, CoefficientTable};
use srk_core::wiener::TimeGrid;
use srk_generated::GeneratedStepper;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("validation failed")]
    Validation,
    #[error(transparent)]
    Core(#[from] srk_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Validation => 1,
            CliError::Core(e) if e.is_numerical() => 2,
            CliError::Core(e) if e.is_io() => 3,
            CliError::Core(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "srk", version, about = "Stochastic Runge-Kutta toolkit for Ito SDEs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List, validate or render coefficient tables.
    #[command(subcommand)]
    Tables(TablesCmd),
    /// Generate specialised stepper source for tables.
    Gen(GenArgs),
    /// Integrate one trajectory of a built-in problem.
    Simulate(SimulateArgs),
    /// Monte Carlo mean trajectory of a built-in problem.
    Mc(McArgs),
    /// Estimate a strong or weak convergence order.
    Converge(ConvergeArgs),
}

#[derive(Debug, Subcommand)]
pub enum TablesCmd {
    /// Bundled tables with kind, stage count and orders.
    List,
    /// Validation report for a table file or bundled name.
    Validate { table: String },
    /// LaTeX tableau for a table file or bundled name.
    Render { table: String },
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Table file or bundled name; repeatable. Defaults to every bundled table.
    #[arg(long = "table")]
    pub tables: Vec<String>,
    /// Noise dimension `k` or range `a..b`.
    #[arg(long, default_value = "1..6")]
    pub m: String,
    /// Built-in dialect name or a directory holding a dialect.
    #[arg(long, default_value = "rust")]
    pub dialect: String,
    /// Largest noise dimension accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_NOISE_DIM)]
    pub max_m: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Interpreted,
    Generated,
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    /// `EM` or a bundled table name.
    #[arg(long, alias = "table", default_value = "EM")]
    pub method: String,
    /// Use the checked-in generated stepper instead of the interpreter.
    #[arg(long, value_enum, default_value_t = Backend::Interpreted)]
    pub backend: Backend,
    /// Built-in problem: gbm, gbm-det, ou, bm, diag-gbm or zero.
    #[arg(long, default_value = "gbm")]
    pub problem: String,
    /// Seed for all randomness; drawn from entropy and recorded when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Step size (must divide T).
    #[arg(long, conflicts_with = "steps")]
    pub h: Option<f64>,
    /// Number of steps.
    #[arg(long)]
    pub steps: Option<usize>,
    /// End time.
    #[arg(long = "T", alias = "t-end", default_value_t = 1.0)]
    pub t_end: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Strong,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Terminal,
    Sup,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[command(flatten)]
    pub method: MethodArgs,
    /// `2^-a..2^-b` or a comma-separated list of step sizes.
    #[arg(long, default_value = "2^-4..2^-10")]
    pub hs: String,
    /// Paths (strong) or trials per step size (weak).
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Functional for weak mode: identity, square or sum.
    #[arg(long, default_value = "identity")]
    pub functional: String,
    /// Leave the two largest step sizes out of the fit.
    #[arg(long)]
    pub drop_coarsest: bool,
    #[arg(long, value_enum, default_value_t = NormArg::Terminal)]
    pub norm: NormArg,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::Validation) {
                let _ = writeln!(stderr, "error: {e}");
                let mut source = std::error::Error::source(&e);
                while let Some(s) = source {
                    let _ = writeln!(stderr, "  caused by: {s}");
                    source = s.source();
                }
            }
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Tables(t) => tables(t, out),
        Command::Gen(a) => gen(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Mc(a) => mc(a, out),
        Command::Converge(a) => converge(a, out),
    }
}

fn say(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(text)
        .map_err(|e| srk_core::Error::Io { path: "<stdout>".into(), source: e }.into())
}

/// A file path if one exists, else a bundled table name.
pub fn load_table(arg: &str) -> Result<CoefficientTable> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| srk_core::Error::Io { path: path.into(), source: e })?;
        return parse_table(&text).map_err(|e| usage(format!("{arg}: {e}")));
    }
    if arg.ends_with(".json") || arg.contains(std::path::MAIN_SEPARATOR) {
        let e = std::io::Error::new(std::io::ErrorKind::NotFound, "no such file");
        return Err(srk_core::Error::Io { path: path.into(), source: e }.into());
    }
    bundled_table(arg).map_err(|e| usage(format!("`{arg}` is neither a file nor a bundled table ({e})")))
}

fn tables(cmd: TablesCmd, out: &mut dyn Write) -> Result<()> {
    match cmd {
        TablesCmd::List => {
            say(out, format_args!("{:<8} {:<14} {:>6} {:>4} {:>4}\n", "name", "kind", "stages", "p_d", "p_s"))?;
            for t in bundled() {
                say(
                    out,
                    format_args!(
                        "{:<8} {:<14} {:>6} {:>4} {:>4}\n",
                        t.name,
                        t.kind.as_str(),
                        t.stages,
                        t.det_order.to_order_string(),
                        t.stoch_order.to_order_string()
                    ),
                )?;
            }
            Ok(())
        }
        TablesCmd::Validate { table } => {
            let t = load_table(&table)?;
            let report = validate(&t);
            say(out, format_args!("{report}\n"))?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Validation)
            }
        }
        TablesCmd::Render { table } => {
            let t = load_table(&table)?;
            say(out, format_args!("{}", render_table_math(&t)))
        }
    }
}

/// `k`, `a..b` or `a..=b`.
pub fn parse_m_range(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad noise dimension `{s}` in `{text}`")))
    };
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let k = num(text)?;
            (k, k)
        }
    };
    if a == 0 || b < a {
        return Err(usage(format!("empty or invalid noise dimension range `{text}`")));
    }
    Ok(a..=b)
}

/// `2^-a..2^-b` or a comma-separated list of positive step sizes.
pub fn parse_hs(text: &str) -> Result<Vec<f64>> {
    let bad = || usage(format!("cannot read step sizes `{text}`"));
    if let Some((a, b)) = text.split_once("..") {
        let exp = |s: &str| -> Result<i32> {
            s.trim().strip_prefix("2^-").and_then(|e| e.parse().ok()).ok_or_else(bad)
        };
        let (a, b) = (exp(a)?, exp(b)?);
        let (lo, hi) = (a.min(b), a.max(b));
        return Ok((lo..=hi).map(|k| 0.5f64.powi(k)).collect());
    }
    let hs: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if hs.iter().any(|h| !(*h > 0.0)) {
        return Err(bad());
    }
    Ok(hs)
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<()> {
    let tables: Vec<CoefficientTable> = if a.tables.is_empty() {
        bundled()
    } else {
        a.tables.iter().map(|t| load_table(t)).collect::<Result<_>>()?
    };
    let range = parse_m_range(&a.m)?;
    if *range.end() > a.max_m {
        return Err(usage(format!("noise dimension {} exceeds --max-m {}", range.end(), a.max_m)));
    }
    let dialect = Dialect::resolve(&a.dialect)?;
    let manifest = generate_bundle(&tables, range, &dialect, &a.out)?;
    for f in &manifest.functions {
        say(out, format_args!("{}  {}\n", f.sha256, a.out.join(&f.path).display()))?;
    }
    say(out, format_args!("{} functions, manifest {}\n", manifest.functions.len(), a.out.join(srk_core::codegen::MANIFEST_FILE).display()))
}

fn seed_of(arg: Option<u64>) -> (u64, &'static str) {
    match arg {
        Some(s) => (s, "flag"),
        None => (rand::rng().random(), "entropy"),
    }
}

fn build_stepper(m: &MethodArgs, noise_dim: usize) -> Result<Box<dyn Stepper>> {
    match m.backend {
        Backend::Interpreted => stepper_by_name(&m.method).map_err(|e| usage(e.to_string())),
        Backend::Generated => GeneratedStepper::for_table(&m.method, noise_dim)
            .map(|s| Box::new(s) as Box<dyn Stepper>)
            .ok_or_else(|| usage(format!("no generated stepper for `{}` at m = {noise_dim}", m.method))),
    }
}

fn problem(name: &str) -> Result<TestProblem> {
    builtin_problem(name).map_err(|_| {
        let known: Vec<_> = builtin_problems().into_iter().map(|p| p.name).collect();
        usage(format!("unknown problem `{name}` (known: {})", known.join(", ")))
    })
}

fn grid(g: &GridArgs) -> Result<TimeGrid> {
    match (g.h, g.steps) {
        (Some(h), None) => Ok(TimeGrid::with_step(0.0, g.t_end, h)?),
        (None, Some(n)) => Ok(TimeGrid::new(0.0, g.t_end, n)?),
        _ => Err(usage("give exactly one of --h and --steps")),
    }
}

fn create_out(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| srk_core::Error::Io { path: dir.into(), source: e })?;
    Ok(())
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json serialises") + "\n";
    std::fs::write(path, text).map_err(|e| srk_core::Error::Io { path: path.into(), source: e })?;
    Ok(())
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let p = problem(&a.method.problem)?;
    let stepper = build_stepper(&a.method, p.noise_dim())?;
    let grid = grid(&a.grid)?;
    let (seed, seed_source) = seed_of(a.method.seed);
    let rng = srk_core::montecarlo::trial_stream(seed, 0, 0);
    let traj = match stepper.noise_kind() {
        NoiseKind::Strong(_) => integrate(&*stepper, &*p.sys, &p.x0, &grid, &mut GaussianNoise::new(rng))?,
        NoiseKind::Weak => integrate(&*stepper, &*p.sys, &p.x0, &grid, &mut WeakNoise::new(rng))?,
    };
    create_out(&a.method.out)?;
    let csv = a.method.out.join("trajectory.csv");
    save_trajectory_csv(&csv, &grid, &traj)?;
    write_json(
        &a.method.out.join("metadata.json"),
        &json!({
            "command": "simulate",
            "method": stepper.name(),
            "backend": format!("{:?}", a.method.backend).to_lowercase(),
            "problem": p.name,
            "seed": seed,
            "seed_source": seed_source,
            "h": grid.h(),
            "steps": grid.steps(),
            "t_end": grid.t_end(),
        }),
    )?;
    say(out, format_args!("wrote {}\n", csv.display()))
}

fn mc(a: McArgs, out: &mut dyn Write) -> Result<()> {
    let p = problem(&a.method.problem)?;
    let stepper = build_stepper(&a.method, p.noise_dim())?;
    let grid = grid(&a.grid)?;
    let (seed, seed_source) = seed_of(a.method.seed);
    let cfg = McConfig::new(&*stepper, grid, &p.x0, a.trials, seed)
        .workers(a.workers)
        .with_variance();
    let result = run_trials(&*p.sys, &cfg)?;
    create_out(&a.method.out)?;
    let csv = a.method.out.join("mean.csv");
    result.save_csv(&csv)?;
    let mut meta = serde_json::to_value(result.metadata(&cfg)).expect("metadata serialises");
    meta["problem"] = json!(p.name);
    meta["seed_source"] = json!(seed_source);
    write_json(&a.method.out.join("metadata.json"), &meta)?;
    let last = grid.steps();
    let se = result.stats.std_error().map(|s| s.row(last).to_vec());
    say(
        out,
        format_args!(
            "accepted {} rejected {}; mean at T = {:?} (standard error {:?})\nwrote {}\n",
            result.accepted(),
            result.rejected,
            result.mean().row(last).to_vec(),
            se.unwrap_or_default(),
            csv.display()
        ),
    )
}

fn converge(a: ConvergeArgs, out: &mut dyn Write) -> Result<()> {
    let p = problem(&a.method.problem)?;
    let stepper = build_stepper(&a.method, p.noise_dim())?;
    let hs = parse_hs(&a.hs)?;
    let (seed, _) = seed_of(a.method.seed);
    let mut opts = EstimateOptions::new(seed);
    opts.workers = a.workers;
    opts.drop_coarsest = a.drop_coarsest;
    opts.norm = match a.norm {
        NormArg::Terminal => StrongNorm::Terminal,
        NormArg::Sup => StrongNorm::Sup,
    };
    let (est, functional) = match a.mode {
        Mode::Strong => (estimate_strong_order(&*stepper, &p, &hs, a.trials, &opts)?, None),
        Mode::Weak => (
            estimate_weak_order(&*stepper, &p, &a.functional, &hs, a.trials, &opts)?,
            Some(a.functional.clone()),
        ),
    };
    create_out(&a.method.out)?;
    let meta = ReportMeta {
        mode: format!("{:?}", a.mode).to_lowercase(),
        method: stepper.name().to_string(),
        problem: p.name.clone(),
        functional,
        seed,
        samples: a.trials,
    };
    let path = a.method.out.join("report.csv");
    save_report(&path, &meta, &est)?;
    let mut flags = Vec::new();
    if est.degenerate {
        flags.push("degenerate");
    }
    if !est.reliable {
        flags.push("unreliable");
    }
    say(
        out,
        format_args!(
            "{} order of {} on {}: slope {:.3} (residual {:.3}){}\nwrote {}\n",
            meta.mode,
            meta.method,
            meta.problem,
            est.slope,
            est.residual,
            if flags.is_empty() { String::new() } else { format!(" [{}]", flags.join(", ")) },
            path.display()
        ),
    )
}

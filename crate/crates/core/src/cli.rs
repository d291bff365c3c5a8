//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a numeric step failed (rows computed so
//! far are still written and the failure is recorded in the metadata), 2 on
//! flag errors (nothing is written).

use crate::harness::{self, stats, TGrid};
use crate::menchoff::{self, ArraySpec, Kernel, Source, TrajectoryReport};
use crate::report::{Cell, Report};
use crate::special::{self, OmegaParam, SPoint, MIN_TARGET_ABS_ERR};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub const THREADS_ENV: &str = "LINDELOEF_THREADS";

#[derive(Parser, Debug)]
#[command(name = "lindeloef", version, about = "Hurwitz zeta growth experiments on the critical line")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// RNG seed: an unsigned integer, or `random` to seed from the clock
    #[arg(long, global = true, default_value = "0")]
    pub seed: String,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    /// Output path, `-` for standard output
    #[arg(long, global = true, default_value = "-")]
    pub out: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Absolute error target for every zeta evaluation
    #[arg(long = "abs-err", global = true, default_value = "1e-10")]
    pub abs_err: f64,
    /// Add wall-clock time to the JSON metadata (breaks byte-identical reruns)
    #[arg(long, global = true)]
    pub record_timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelArg {
    Hurwitz,
    Power,
    Harmonic,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Hurwitz => Kernel::HurwitzPhase,
            KernelArg::Power => Kernel::PowerNoise,
            KernelArg::Harmonic => Kernel::DeterministicHarmonic,
        }
    }
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate zeta(sigma + it, omega) with an error bound
    Eval(EvalArgs),
    /// zeta(s,1/2) = (2^s-1) zeta(s) and zeta(s,w) = w^-s + zeta(s,w+1) on a grid
    IdentityCheck(IdentityArgs),
    /// Truncated functional-equation residual against its error budget
    FunceqCheck(FunceqArgs),
    /// Fuzz the dyadic maximal inequality and chain telescoping
    RmCheck(RmArgs),
    /// Monte Carlo maximal second moments against the block bound
    Lemma4Check(Lemma4Args),
    /// Diagonal-sum trajectories |S_n| / phi(n)
    Qlil(QlilArgs),
    /// Mean square of zeta_1(1/2 + it, omega) over omega in (0, 1)
    Meanvalue(MeanValueArgs),
    /// Measure of omega with |zeta(1/2 + it, omega)| >= C sqrt(log t)
    Tailmeasure(TailArgs),
    /// |zeta(1/2 + it, omega)| / (log t)^(3/2 + eps) on a geometric t-grid
    Scan(ScanArgs),
    /// |zeta_1(1/2 + it, x)| / (log t)^2 across x at fixed t
    Section(SectionArgs),
    /// Growth exponent of |zeta(sigma + it, omega)| from dyadic block maxima
    Mu(MuArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EvalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FunceqArgs {
    /// Heights, linear on [5, 50]
    #[arg(long, default_value_t = 10)]
    pub t_points: usize,
    /// Omegas, linear on [0.1, 0.9]
    #[arg(long, default_value_t = 9)]
    pub omega_points: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RmArgs {
    /// Largest dyadic depth
    #[arg(long, default_value_t = 6)]
    pub n: u32,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Lemma4Args {
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 0.5, 1.0], allow_negative_numbers = true)]
    pub alphas: Vec<f64>,
    #[arg(long, default_value_t = 7)]
    pub m_max: u32,
    #[arg(long, default_value_t = 10_000)]
    pub reps: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct QlilArgs {
    #[arg(long, value_enum, default_value_t = KernelArg::Hurwitz)]
    pub kernel: KernelArg,
    /// Variance decay exponent (PowerNoise only; the other kernels use 1/2)
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 65_536)]
    pub n_max: u64,
    /// Ensemble size; above 1 a leading `member` column is added
    #[arg(long, default_value_t = 1)]
    pub members: u64,
    /// Fixed omega for a single Hurwitz trajectory
    #[arg(long, conflicts_with = "members")]
    pub omega: Option<f64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MeanValueArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![100.0, 1000.0, 10000.0])]
    pub t: Vec<f64>,
    /// Gauss-Legendre panels (0 = max(256, ceil t))
    #[arg(long, default_value_t = 0)]
    pub panels: usize,
    /// Largest admissible t
    #[arg(long, default_value_t = harness::MEAN_VALUE_T_CAP)]
    pub t_cap: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TailArgs {
    #[arg(long, default_value_t = 1000.0)]
    pub t: f64,
    #[arg(long = "c", value_delimiter = ',', default_values_t = vec![2.0, 4.0, 8.0])]
    pub c_list: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ScanArgs {
    /// Single omega; without it an ensemble of --omega-count seeded omegas is scanned
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub omega_count: usize,
    #[arg(long, default_value_t = 10.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1e4)]
    pub t_max: f64,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Accept omega anywhere in (0, 1] and t_max up to 1e8
    #[arg(long)]
    pub allow_any_omega: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SectionArgs {
    #[arg(long, default_value_t = 1e6)]
    pub t: f64,
    #[arg(long, default_value_t = 512)]
    pub points: usize,
    #[arg(long, default_value_t = 0.05)]
    pub x_min: f64,
    #[arg(long, default_value_t = 0.95)]
    pub x_max: f64,
    /// Largest admissible t
    #[arg(long, default_value_t = harness::SECTION_T_CAP)]
    pub t_cap: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MuArgs {
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.3)]
    pub omega: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1e4)]
    pub t_max: f64,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
}

/// Result of executing a subcommand: the report (possibly partial) and the
/// first numeric failure, if any.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, failure: None }
    }

    fn failed(report: Report, err: impl ToString) -> Self {
        Outcome { report, failure: Some(err.to_string()) }
    }
}

fn parse_seed(raw: &str) -> Result<u64, String> {
    if raw == "random" {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map_err(|e| e.to_string())?;
        return Ok(now.as_nanos() as u64);
    }
    raw.parse::<u64>().map_err(|_| format!("invalid --seed '{raw}': expected an unsigned integer or 'random'"))
}

/// Parses `argv` (program name first), runs the subcommand and writes the
/// report. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let seed = match parse_seed(&cli.global.seed) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let abs_err = cli.global.abs_err;
    if !(MIN_TARGET_ABS_ERR..=1e-2).contains(&abs_err) {
        eprintln!("error: --abs-err {abs_err:e} outside [1e-13, 1e-2]");
        return 2;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return 2;
        }
    };

    let started = Instant::now();
    let mut outcome = pool.install(|| execute(&cli.command, seed, abs_err));
    let elapsed = started.elapsed().as_secs_f64();

    let meta = &mut outcome.report.meta;
    meta.insert("tool".into(), Value::from("lindeloef"));
    meta.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
    meta.insert("config".into(), config_echo(&cli, abs_err));
    meta.insert("seed".into(), Value::from(seed));
    if cli.global.record_timing {
        meta.insert("wall_time_s".into(), Value::from(elapsed));
    }
    meta.insert("status".into(), Value::from(if outcome.failure.is_some() { "partial" } else { "complete" }));
    if let Some(f) = &outcome.failure {
        meta.insert("failure".into(), Value::from(f.as_str()));
    }

    if let Err(e) = emit(&outcome.report, &cli.global.out, cli.global.format) {
        eprintln!("error: {e}");
        return 1;
    }
    match outcome.failure {
        Some(f) => {
            eprintln!("numeric failure: {f}");
            1
        }
        None => 0,
    }
}

/// Every setting that influences the numbers. Thread count and output
/// destination are left out so reruns compare byte for byte.
fn config_echo(cli: &Cli, abs_err: f64) -> Value {
    let mut cfg = match serde_json::to_value(&cli.command) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    cfg.insert("abs_err".into(), Value::from(abs_err));
    cfg.insert("format".into(), serde_json::to_value(cli.global.format).unwrap_or(Value::Null));
    Value::Object(cfg)
}

/// Writes `report` as CSV or JSON to `out` (`-` is standard output).
pub fn emit(report: &Report, out: &str, format: Format) -> io::Result<()> {
    let write = |w: &mut dyn Write| match format {
        Format::Csv => report.write_csv(w),
        Format::Json => report.write_json(w),
    };
    if out == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        write(&mut lock)?;
        lock.flush()
    } else {
        let path = Path::new(out);
        let file = File::create(path)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        write(&mut w).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        w.flush()
    }
}

fn f(v: f64) -> Cell {
    Cell::Float(v)
}

/// Runs one subcommand on the ambient thread pool.
pub fn execute(cmd: &Command, seed: u64, abs_err: f64) -> Outcome {
    match cmd {
        Command::Eval(a) => run_eval(a, abs_err),
        Command::IdentityCheck(a) => run_identity(a, abs_err),
        Command::FunceqCheck(a) => run_funceq(a),
        Command::RmCheck(a) => run_rm(a, seed),
        Command::Lemma4Check(a) => run_lemma4(a, seed),
        Command::Qlil(a) => run_qlil(a, seed),
        Command::Meanvalue(a) => run_meanvalue(a, abs_err),
        Command::Tailmeasure(a) => run_tail(a, seed, abs_err),
        Command::Scan(a) => run_scan(a, seed, abs_err),
        Command::Section(a) => run_section(a, abs_err),
        Command::Mu(a) => run_mu(a, abs_err),
    }
}

fn run_eval(a: &EvalArgs, abs_err: f64) -> Outcome {
    let mut rep = Report::new(&["sigma", "t", "omega", "re", "im", "abs", "err_bound", "terms", "method"]);
    let r = SPoint::new(a.sigma, a.t)
        .and_then(|s| Ok((s, OmegaParam::new(a.omega)?)))
        .and_then(|(s, w)| special::hurwitz_zeta(s, w, abs_err));
    match r {
        Ok(r) => {
            rep.push(vec![
                f(a.sigma),
                f(a.t),
                f(a.omega),
                f(r.value.re),
                f(r.value.im),
                f(r.value.norm()),
                f(r.abs_err_bound),
                r.terms_used.into(),
                r.method.as_str().into(),
            ]);
            Outcome::ok(rep)
        }
        Err(e) => Outcome::failed(rep, e),
    }
}

const IDENTITY_TOLERANCE: f64 = 1e-9;

fn run_identity(a: &IdentityArgs, abs_err: f64) -> Outcome {
    let mut rep = Report::new(&["sigma", "t", "omega", "duplication_rel_err", "shift_rel_err"]);
    let rows = match harness::identity_suite(a.points, abs_err) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(rep, e),
    };
    let mut worst = 0.0f64;
    for r in &rows {
        worst = worst.max(r.duplication_rel_err).max(r.shift_rel_err);
        rep.push(vec![f(r.sigma), f(r.t), f(r.omega), f(r.duplication_rel_err), f(r.shift_rel_err)]);
    }
    rep.summarize("points", rows.len());
    rep.summarize_f64("max_rel_err", worst);
    rep.summarize_f64("tolerance", IDENTITY_TOLERANCE);
    rep.summarize("pass", worst <= IDENTITY_TOLERANCE);
    Outcome::ok(rep)
}

fn run_funceq(a: &FunceqArgs) -> Outcome {
    let mut rep = Report::new(&[
        "sigma", "t", "omega", "k_terms", "residual", "budget_total", "eval_err", "within_budget",
    ]);
    let rows = match harness::funceq_suite(a.t_points, a.omega_points) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(rep, e),
    };
    for r in &rows {
        rep.push(vec![
            f(r.sigma),
            f(r.t),
            f(r.omega),
            r.k_terms.into(),
            f(r.residual),
            f(r.budget_total),
            f(r.eval_err),
            r.within_budget.into(),
        ]);
    }
    rep.summarize("points", rows.len());
    rep.summarize("violations", rows.iter().filter(|r| !r.within_budget).count());
    if let Some(last) = rows.last() {
        rep.summarize_f64("residual_sigma2_t5", last.residual);
    }
    Outcome::ok(rep)
}

fn run_rm(a: &RmArgs, seed: u64) -> Outcome {
    let mut rep = Report::new(&["depth", "trials", "violations", "telescoping_failures", "max_ratio"]);
    let rows = match harness::rm_fuzz(a.trials, a.n, seed) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(rep, e),
    };
    for r in &rows {
        rep.push(vec![
            r.depth.into(),
            r.trials.into(),
            r.violations.into(),
            r.telescoping_failures.into(),
            f(r.max_ratio),
        ]);
    }
    rep.summarize("trials", a.trials);
    rep.summarize("violations", rows.iter().map(|r| r.violations).sum::<u64>());
    rep.summarize("telescoping_failures", rows.iter().map(|r| r.telescoping_failures).sum::<u64>());
    Outcome::ok(rep)
}

fn run_lemma4(a: &Lemma4Args, seed: u64) -> Outcome {
    let mut rep = Report::new(&["alpha", "m", "empirical", "bound", "holds"]);
    let rows = match harness::lemma4_sweep(&a.alphas, a.m_max, a.reps, seed) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(rep, e),
    };
    for r in &rows {
        rep.push(vec![f(r.alpha), r.m.into(), f(r.empirical), f(r.bound), r.holds().into()]);
    }
    rep.summarize("violations", rows.iter().filter(|r| !r.holds()).count());
    Outcome::ok(rep)
}

fn trajectory_rows(rep: &mut Report, traj: &TrajectoryReport, member: Option<u64>) {
    for ((&n, &r), &d) in traj.n_grid.iter().zip(&traj.ratios).zip(&traj.is_dyadic) {
        let mut row = Vec::with_capacity(4);
        if let Some(m) = member {
            row.push(m.into());
        }
        row.extend([n.into(), f(r), d.into()]);
        rep.push(row);
    }
}

fn run_qlil(a: &QlilArgs, seed: u64) -> Outcome {
    let ensemble = a.omega.is_none() && a.members > 1;
    let mut rep = if ensemble {
        Report::new(&["member", "n", "ratio", "is_dyadic"])
    } else {
        Report::new(&["n", "ratio", "is_dyadic"])
    };
    let spec = match ArraySpec::new(a.kernel.into(), a.alpha, a.epsilon, seed) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(rep, e),
    };
    let trajectories = if ensemble {
        menchoff::qlil_ensemble(&spec, a.n_max, a.members)
    } else {
        let source = a.omega.map(Source::Omega).unwrap_or(Source::Member(0));
        menchoff::qlil_trajectory(&spec, a.n_max, source).map(|t| vec![t])
    };
    let trajectories = match trajectories {
        Ok(t) => t,
        Err(e) => return Outcome::failed(rep, e),
    };
    for (i, traj) in trajectories.iter().enumerate() {
        trajectory_rows(&mut rep, traj, ensemble.then_some(i as u64));
    }
    let summary = harness::qlil_summary(&trajectories);
    rep.summarize("members", summary.members);
    rep.summarize_f64("median_last_block_max", summary.median_last_block_max);
    rep.summarize_f64("median_global_max", summary.median_global_max);
    rep.summarize("members_decaying", summary.members_decaying);
    if let [traj] = trajectories.as_slice() {
        if let Some(w) = traj.omega {
            rep.summarize_f64("omega", w);
        }
        rep.summarize("diag_k", traj.diag_k.clone());
        rep.summarize("diag_s", floats(&traj.diag_s));
        rep.summarize("diag_y", floats(&traj.diag_y));
    } else {
        let omegas: Vec<f64> = trajectories.iter().filter_map(|t| t.omega).collect();
        if !omegas.is_empty() {
            rep.summarize("omegas", floats(&omegas));
        }
    }
    Outcome::ok(rep)
}

fn floats(xs: &[f64]) -> Value {
    Value::Array(
        xs.iter()
            .map(|x| serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null))
            .collect(),
    )
}

fn run_meanvalue(a: &MeanValueArgs, abs_err: f64) -> Outcome {
    let mut rep = Report::new(&["t", "integral", "log_t", "ratio", "quad_err"]);
    let mut done = Vec::new();
    let mut failure = None;
    for &t in &a.t {
        let panels = if a.panels == 0 { harness::default_panels(t) } else { a.panels };
        match harness::mean_value_integral_with_cap(t, panels, abs_err, a.t_cap) {
            Ok(row) => {
                rep.push(vec![f(row.t), f(row.integral), f(row.log_t), f(row.ratio), f(row.quad_err_bound)]);
                done.push(row);
            }
            Err(e) => {
                failure.get_or_insert_with(|| format!("t = {t}: {e}"));
            }
        }
    }
    if done.len() >= 2 {
        let xs: Vec<f64> = done.iter().map(|r| r.log_t).collect();
        let ys: Vec<f64> = done.iter().map(|r| r.integral).collect();
        rep.summarize_f64("slope_integral_vs_log_t", stats::least_squares_slope(&xs, &ys));
    }
    Outcome { report: rep, failure }
}

fn run_tail(a: &TailArgs, seed: u64, abs_err: f64) -> Outcome {
    let mut rep = Report::new(&["C", "threshold", "measure_hat", "std_err"]);
    let rows = match harness::chebyshev_tail_measure(a.t, &a.c_list, a.samples, seed, abs_err) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(rep, e),
    };
    let mut worst = 0.0f64;
    for r in &rows {
        worst = worst.max(r.c * r.c * r.measure_hat);
        rep.push(vec![f(r.c), f(r.threshold), f(r.measure_hat), f(r.std_err)]);
    }
    let mut by_c = rows.clone();
    by_c.sort_by(|x, y| x.c.total_cmp(&y.c));
    rep.summarize_f64("max_c2_measure", worst);
    rep.summarize("nonincreasing_in_c", by_c.windows(2).all(|w| w[1].measure_hat <= w[0].measure_hat));
    Outcome::ok(rep)
}

fn run_scan(a: &ScanArgs, seed: u64, abs_err: f64) -> Outcome {
    let ensemble = a.omega.is_none();
    let mut rep = if ensemble {
        Report::new(&["omega", "t", "abs", "ratio"])
    } else {
        Report::new(&["t", "abs", "ratio"])
    };
    let grid = match TGrid::geometric(a.t_min, a.t_max, a.points) {
        Ok(g) => g,
        Err(e) => return Outcome::failed(rep, e),
    };
    let (window, cap) = if a.allow_any_omega {
        ((f64::MIN_POSITIVE, 1.0), 1e8)
    } else {
        (harness::OMEGA_WINDOW, harness::SCAN_T_CAP)
    };
    let omegas = match a.omega {
        Some(w) => vec![w],
        None => harness::seeded_omegas(a.omega_count, seed, harness::OMEGA_WINDOW),
    };
    let mut failure = None;
    let mut globals = Vec::new();
    let mut tails = Vec::new();
    for &w in &omegas {
        let scan = match harness::growth_scan_in(w, &grid, a.epsilon, abs_err, window, cap) {
            Ok(s) => s,
            Err(e) => return Outcome::failed(rep, e),
        };
        for row in &scan.rows {
            let mut cells = Vec::with_capacity(4);
            if ensemble {
                cells.push(f(w));
            }
            cells.extend([f(row.t), f(row.abs), f(row.ratio)]);
            rep.push(cells);
        }
        if let Some((t, msg)) = scan.failures.first() {
            failure.get_or_insert_with(|| format!("omega = {w}, t = {t}: {msg}"));
        }
        globals.push(scan.global_max_ratio);
        tails.push(scan.tail_max_ratio);
    }
    rep.summarize("omegas", floats(&omegas));
    rep.summarize("global_max_ratio", floats(&globals));
    rep.summarize("tail_max_ratio", floats(&tails));
    rep.summarize("members_tail_below_global", tails.iter().zip(&globals).filter(|(t, g)| t < g).count());
    Outcome { report: rep, failure }
}

fn run_section(a: &SectionArgs, abs_err: f64) -> Outcome {
    let mut rep = Report::new(&["x", "y"]);
    if a.points < 2 || !(a.x_max > a.x_min) {
        return Outcome::failed(rep, "section needs >= 2 points and x_max > x_min");
    }
    let xs: Vec<f64> = (0..a.points)
        .map(|i| a.x_min + (a.x_max - a.x_min) * i as f64 / (a.points - 1) as f64)
        .collect();
    let sec = match harness::section_profile_with_cap(a.t, &xs, abs_err, a.t_cap) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(rep, e),
    };
    for r in &sec.rows {
        rep.push(vec![f(r.x), f(r.y)]);
    }
    let ys: Vec<f64> = sec.rows.iter().map(|r| r.y).filter(|y| y.is_finite()).collect();
    rep.summarize_f64("lag1_autocorrelation", stats::lag1_autocorrelation(&ys));
    let failure = sec.failures.first().map(|(x, msg)| format!("x = {x}: {msg}"));
    Outcome { report: rep, failure }
}

fn run_mu(a: &MuArgs, abs_err: f64) -> Outcome {
    let mut rep = Report::new(&["sigma", "omega", "mu_hat", "blocks"]);
    let est = TGrid::geometric(a.t_min, a.t_max, a.points)
        .and_then(|g| harness::mu_exponent_estimate(a.sigma, a.omega, &g, abs_err));
    match est {
        Ok(m) => {
            rep.push(vec![f(m.sigma), f(m.omega), f(m.mu_hat), m.blocks.into()]);
            Outcome::ok(rep)
        }
        Err(e) => Outcome::failed(rep, e),
    }
}

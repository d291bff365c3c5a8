//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use lindeloef::cli;
use lindeloef::harness::{self, stats};
use lindeloef::special::{ln_gamma_abs_asymptotic, log_gamma, SPoint};
use serde_json::Value;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn failed(err: impl std::fmt::Display) -> Outcome {
    check(false, format!("error: {err}"))
}

/// Runs `body`, adds the runtime limit to the verdict and prints the line.
/// `spent` is time already used producing inputs for `body`.
fn criterion(id: u32, name: &str, limit_s: Option<f64>, spent: f64, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = body();
    let secs = spent + start.elapsed().as_secs_f64();
    let in_time = limit_s.is_none_or(|l| secs < l);
    let pass = out.pass && in_time;
    let limit = limit_s.map_or(String::new(), |l| format!(", limit {l} s"));
    let timing = if in_time { "" } else { " TIME LIMIT EXCEEDED" };
    println!(
        "[{}] C{id} {name}: {} ({secs:.1} s{limit}){timing}",
        if pass { "PASS" } else { "FAIL" },
        out.detail
    );
    pass
}

fn c1_identities() -> Outcome {
    match harness::identity_suite(200, 1e-10) {
        Ok(rows) => {
            let worst = rows
                .iter()
                .map(|r| r.duplication_rel_err.max(r.shift_rel_err))
                .fold(0.0f64, f64::max);
            check(rows.len() == 200 && worst <= 1e-9, format!("{} points, max rel err {worst:.3e} <= 1e-9", rows.len()))
        }
        Err(e) => failed(e),
    }
}

fn c2_gamma_asymptotic() -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    for t in [10.0, 1e2, 1e3, 1e4] {
        for sigma in [0.0, 0.5, 1.0, 2.0] {
            let exact = match SPoint::new(sigma, t).and_then(log_gamma) {
                Ok(v) => v.re,
                Err(e) => return failed(e),
            };
            let approx = match ln_gamma_abs_asymptotic(sigma, t) {
                Ok(v) => v,
                Err(e) => return failed(e),
            };
            let dev = ((exact - approx).exp() - 1.0).abs();
            ok &= dev <= 1.0 / t;
            worst = worst.max(dev * t);
        }
    }
    check(ok, format!("max t * |ratio - 1| = {worst:.3}"))
}

fn c3_functional_equation() -> Outcome {
    let rows = match harness::funceq_suite(10, 9) {
        Ok(r) => r,
        Err(e) => return failed(e),
    };
    let Some((extra, grid)) = rows.split_last() else {
        return check(false, "no rows");
    };
    let violations = grid.iter().filter(|r| !(r.residual <= r.budget_total)).count();
    let worst = grid.iter().map(|r| r.residual / r.budget_total).fold(0.0f64, f64::max);
    let extra_ok = extra.sigma == 2.0 && extra.k_terms == 100_000 && extra.residual < 1e-4;
    check(
        grid.len() == 90 && violations == 0 && extra_ok,
        format!(
            "{} grid points, {violations} over budget (max residual/budget {worst:.3e}); s=2+5i residual {:.3e} < 1e-4",
            grid.len(),
            extra.residual
        ),
    )
}

fn c4_rm_fuzz() -> Outcome {
    match harness::rm_fuzz(100_000, 6, 0) {
        Ok(rows) => {
            let trials: u64 = rows.iter().map(|r| r.trials).sum();
            let violations: u64 = rows.iter().map(|r| r.violations).sum();
            let tele: u64 = rows.iter().map(|r| r.telescoping_failures).sum();
            check(
                trials == 100_000 && violations == 0 && tele == 0,
                format!("{trials} arrays, {violations} violations, {tele} telescoping failures"),
            )
        }
        Err(e) => failed(e),
    }
}

fn c5_lemma4() -> Outcome {
    match harness::lemma4_sweep(&[0.0, 0.5, 1.0], 7, 10_000, 0) {
        Ok(rows) => {
            let bad = rows.iter().filter(|r| !r.holds()).count();
            let worst = rows.iter().map(|r| r.empirical / r.bound).fold(0.0f64, f64::max);
            check(rows.len() == 24 && bad == 0, format!("{} cells, {bad} above bound, max empirical/bound {worst:.4}", rows.len()))
        }
        Err(e) => failed(e),
    }
}

fn c6_mean_value() -> Outcome {
    let mut rows = Vec::new();
    for t in [1e2, 1e3, 1e4] {
        match harness::mean_value_integral(t, harness::default_panels(t), 1e-10) {
            Ok(r) => rows.push(r),
            Err(e) => return failed(e),
        }
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.log_t).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.integral).collect();
    let slope = stats::least_squares_slope(&xs, &ys);
    let ratios_ok = rows.iter().all(|r| (0.3..=3.0).contains(&r.ratio));
    let quad_ok = rows.iter().all(|r| r.quad_err_bound < 0.01 * r.integral);
    let ratios: Vec<String> = rows.iter().map(|r| format!("{:.4}", r.ratio)).collect();
    check(
        ratios_ok && quad_ok && (0.5..=1.5).contains(&slope),
        format!("ratios [{}], slope {slope:.4}, quad errors below 1%: {quad_ok}", ratios.join(", ")),
    )
}

/// One CLI invocation whose output is compared across thread counts.
struct Run {
    name: &'static str,
    args: Vec<&'static str>,
}

fn cli_runs() -> Vec<Run> {
    vec![
        Run { name: "tail", args: vec!["tailmeasure", "--t", "1000", "--c", "2,4,8", "--samples", "10000"] },
        Run { name: "scan", args: vec!["scan", "--omega-count", "20", "--t-min", "10", "--t-max", "1e4", "--points", "400", "--epsilon", "0.1"] },
        Run { name: "qlil", args: vec!["qlil", "--kernel", "hurwitz", "--members", "100", "--n-max", "65536"] },
        Run { name: "harmonic", args: vec!["qlil", "--kernel", "harmonic", "--n-max", "65536"] },
        Run { name: "section", args: vec!["section", "--t", "1e6", "--points", "512", "--x-min", "0.05", "--x-max", "0.95"] },
    ]
}

fn output_path(dir: &Path, name: &str, threads: u32) -> PathBuf {
    dir.join(format!("{name}-t{threads}.json"))
}

fn invoke(run: &Run, dir: &Path, threads: u32) -> Result<Value, String> {
    let path = output_path(dir, run.name, threads);
    let threads = threads.to_string();
    let path_str = path.to_string_lossy().into_owned();
    let mut argv = vec!["lindeloef"];
    argv.extend(run.args.iter().copied());
    argv.extend(["--seed", "0", "--format", "json", "--threads", &threads, "--out", &path_str]);
    let code = cli::run(argv);
    if code != 0 {
        return Err(format!("{} exited with {code}", run.name));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn column(doc: &Value, key: &str) -> Vec<Value> {
    doc["rows"].as_array().map(|rows| rows.iter().map(|r| r[key].clone()).collect()).unwrap_or_default()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().map(|a| a.iter().filter_map(Value::as_f64).collect()).unwrap_or_default()
}

fn c7_chebyshev(doc: &Value) -> Outcome {
    let cs: Vec<f64> = column(doc, "C").iter().filter_map(Value::as_f64).collect();
    let ms: Vec<f64> = column(doc, "measure_hat").iter().filter_map(Value::as_f64).collect();
    if cs != [2.0, 4.0, 8.0] || ms.len() != 3 {
        return check(false, "unexpected rows");
    }
    let scaled: Vec<f64> = cs.iter().zip(&ms).map(|(c, m)| c * c * m).collect();
    let bounded = scaled.iter().all(|&x| x <= 5.0);
    let monotone = ms.windows(2).all(|w| w[1] <= w[0]);
    check(bounded && monotone, format!("measures {ms:?}, C^2 * measure {scaled:?}, nonincreasing: {monotone}"))
}

fn c8_scan(doc: &Value) -> Outcome {
    let global = floats(&doc["summary"]["global_max_ratio"]);
    let tail = floats(&doc["summary"]["tail_max_ratio"]);
    if global.len() != 20 || tail.len() != 20 {
        return check(false, "expected 20 omegas");
    }
    let worst = global.iter().copied().fold(0.0f64, f64::max);
    let decaying = tail.iter().zip(&global).filter(|(t, g)| t < g).count();
    check(
        worst <= 3.0 && decaying >= 18,
        format!("max global ratio {worst:.4} <= 3, tail below global for {decaying}/20"),
    )
}

fn c9_qlil(ensemble: &Value, harmonic: &Value) -> Outcome {
    let last = ensemble["summary"]["median_last_block_max"].as_f64().unwrap_or(f64::NAN);
    let global = ensemble["summary"]["median_global_max"].as_f64().unwrap_or(f64::NAN);
    let members = ensemble["summary"]["members"].as_u64().unwrap_or(0);
    let at = |n: u64| {
        harmonic["rows"]
            .as_array()
            .and_then(|rows| rows.iter().find(|r| r["n"].as_u64() == Some(n)))
            .and_then(|r| r["ratio"].as_f64())
            .unwrap_or(f64::NAN)
    };
    let (r8, r16) = (at(1 << 8), at(1 << 16));
    check(
        members == 100 && last < global && r16 > r8,
        format!("median last-block max {last:.4} < median global max {global:.4}; harmonic r(2^16) {r16:.3} > r(2^8) {r8:.3}"),
    )
}

fn c10_section(doc: &Value, csv_ok: bool) -> Outcome {
    let ys: Vec<f64> = column(doc, "y").iter().filter_map(Value::as_f64).collect();
    let complete = doc["meta"]["status"] == "complete" && ys.len() == 512;
    let lag1 = stats::lag1_autocorrelation(&ys);
    check(
        complete && csv_ok && lag1.abs() <= 0.3,
        format!("{} finite values, well-formed CSV: {csv_ok}, lag-1 autocorrelation {lag1:.4}", ys.len()),
    )
}

/// Re-emits the section run as CSV and checks shape and numeric fields.
fn section_csv_well_formed(dir: &Path) -> bool {
    let path = dir.join("section.csv");
    let path_str = path.to_string_lossy().into_owned();
    let argv = [
        "lindeloef", "section", "--t", "1e6", "--points", "512", "--threads", "8", "--out", &path_str,
    ];
    if cli::run(argv) != 0 {
        return false;
    }
    let Ok(text) = std::fs::read_to_string(&path) else { return false };
    let mut lines = text.lines();
    lines.next() == Some("x,y")
        && text.ends_with('\n')
        && !text.contains('\r')
        && lines.clone().count() == 512
        && lines.all(|l| {
            let mut parts = l.split(',');
            matches!(
                (parts.next().map(str::parse::<f64>), parts.next().map(str::parse::<f64>), parts.next()),
                (Some(Ok(_)), Some(Ok(_)), None)
            )
        })
}

fn main() {
    let mut results = vec![
        criterion(1, "identity suite", Some(10.0), 0.0, c1_identities),
        criterion(2, "gamma modulus asymptotic", Some(1.0), 0.0, c2_gamma_asymptotic),
        criterion(3, "functional equation residual", Some(30.0), 0.0, c3_functional_equation),
        criterion(4, "dyadic maximal inequality fuzz", Some(10.0), 0.0, c4_rm_fuzz),
        criterion(5, "maximal second moment bound", Some(60.0), 0.0, c5_lemma4),
        criterion(6, "mean square growth", Some(300.0), 0.0, c6_mean_value),
    ];

    let dir = tempfile::tempdir().expect("temporary directory");
    let runs = cli_runs();
    let mut docs = HashMap::new();
    let mut run_time = HashMap::new();
    for run in &runs {
        let start = Instant::now();
        let doc = invoke(run, dir.path(), 8);
        run_time.insert(run.name, start.elapsed().as_secs_f64());
        docs.insert(run.name, doc);
    }
    let doc = |name: &str| docs[name].as_ref().map_err(|e| e.clone());
    let csv_ok = section_csv_well_formed(dir.path());

    results.push(criterion(7, "Chebyshev tail measure", Some(180.0), run_time["tail"], || {
        doc("tail").map(c7_chebyshev).unwrap_or_else(failed)
    }));
    results.push(criterion(8, "growth scan ensemble", Some(300.0), run_time["scan"], || {
        doc("scan").map(c8_scan).unwrap_or_else(failed)
    }));
    let spent9 = run_time["qlil"] + run_time["harmonic"];
    results.push(criterion(9, "trajectory simulator", Some(120.0), spent9, || match (doc("qlil"), doc("harmonic")) {
        (Ok(e), Ok(h)) => c9_qlil(e, h),
        (Err(e), _) | (_, Err(e)) => failed(e),
    }));
    results.push(criterion(10, "fixed-height section", Some(120.0), run_time["section"], || {
        doc("section").map(|d| c10_section(d, csv_ok)).unwrap_or_else(failed)
    }));

    results.push(criterion(11, "thread-count determinism", None, 0.0, || {
        let mut differing = Vec::new();
        for run in &runs {
            if let Err(e) = invoke(run, dir.path(), 1) {
                return failed(e);
            }
            let a = std::fs::read(output_path(dir.path(), run.name, 1));
            let b = std::fs::read(output_path(dir.path(), run.name, 8));
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => differing.push(run.name),
            }
        }
        check(
            differing.is_empty(),
            format!("{} outputs compared at 1 and 8 threads, differing: {differing:?}", runs.len()),
        )
    }));

    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

use lindeloef::cli;
use serde_json::Value;
use std::path::Path;

fn run_to(path: &Path, args: &[&str]) -> i32 {
    let out = path.to_string_lossy().into_owned();
    let mut argv = vec!["lindeloef"];
    argv.extend_from_slice(args);
    argv.extend(["--out", &out]);
    cli::run(argv)
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn eval_writes_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("eval.csv");
    assert_eq!(run_to(&p, &["eval", "--sigma", "0.5", "--t", "100", "--omega", "0.3"]), 0);
    let text = std::fs::read_to_string(&p).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "sigma,t,omega,re,im,abs,err_bound,terms,method");
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    let re: f64 = fields[3].parse().unwrap();
    let im: f64 = fields[4].parse().unwrap();
    // mpmath, 30 digits
    assert!((re - 0.558_735_594_632_740_9).abs() < 1e-10);
    assert!((im + 1.096_772_511_904_413_2).abs() < 1e-10);
    assert!(fields[6].parse::<f64>().unwrap() <= 1e-10);
    assert_eq!(fields[8], "EulerMaclaurin");
}

#[test]
fn eval_far_up_the_critical_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("eval.json");
    let args = ["eval", "--sigma", "0.5", "--t", "1e6", "--omega", "0.37", "--format", "json"];
    assert_eq!(run_to(&p, &args), 0);
    let row = &json(&p)["rows"][0];
    // mpmath, 20 digits
    assert!((row["re"].as_f64().unwrap() - 1.180_422_726_850_466_3).abs() < 1e-8);
    assert!((row["im"].as_f64().unwrap() - 0.490_375_958_809_230_8).abs() < 1e-8);
}

#[test]
fn rm_check_has_no_violations() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rm.json");
    let args = ["rm-check", "--n", "6", "--trials", "100000", "--seed", "7", "--format", "json"];
    assert_eq!(run_to(&p, &args), 0);
    let doc = json(&p);
    assert_eq!(doc["summary"]["violations"], 0);
    assert_eq!(doc["summary"]["telescoping_failures"], 0);
    assert_eq!(doc["meta"]["seed"], 7);
}

#[test]
fn flag_errors_exit_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("never.csv");
    assert_eq!(run_to(&p, &["mu", "--no-such-flag"]), 2);
    assert_eq!(run_to(&p, &["mu", "--abs-err", "1e-20"]), 2);
    assert_eq!(run_to(&p, &["mu", "--seed", "minus-one"]), 2);
    assert_eq!(run_to(&p, &["eval", "--sigma", "0.5"]), 2);
    assert!(!p.exists());
}

#[test]
fn help_exits_zero() {
    assert_eq!(cli::run(["lindeloef", "scan", "--help"]), 0);
}

#[test]
fn same_seed_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["tailmeasure", "--t", "200", "--samples", "1000", "--seed", "11", "--format", "json"];
    assert_eq!(run_to(&a, &args), 0);
    assert_eq!(run_to(&b, &args), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let c = dir.path().join("c.json");
    let other = ["tailmeasure", "--t", "200", "--samples", "1000", "--seed", "12", "--format", "json"];
    assert_eq!(run_to(&c, &other), 0);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.csv");
    let four = dir.path().join("four.csv");
    let args = ["qlil", "--members", "8", "--n-max", "1024"];
    assert_eq!(run_to(&one, &[&args[..], &["--threads", "1"]].concat()), 0);
    assert_eq!(run_to(&four, &[&args[..], &["--threads", "4"]].concat()), 0);
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&four).unwrap());
}

#[test]
fn json_has_meta_rows_summary() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("mu.json");
    assert_eq!(run_to(&p, &["mu", "--t-max", "1000", "--points", "100", "--format", "json"]), 0);
    let doc = json(&p);
    let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["meta", "rows", "summary"]);
    assert_eq!(doc["meta"]["tool"], "lindeloef");
    assert_eq!(doc["meta"]["config"]["subcommand"], "mu");
    assert_eq!(doc["meta"]["status"], "complete");
    assert!(doc["meta"].get("wall_time_s").is_none());
    assert!(doc["meta"]["config"].get("threads").is_none());
}

#[test]
fn record_timing_adds_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("mu.json");
    let args = ["mu", "--t-max", "1000", "--points", "100", "--format", "json", "--record-timing"];
    assert_eq!(run_to(&p, &args), 0);
    assert!(json(&p)["meta"]["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn numeric_failure_keeps_partial_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("mv.json");
    let args = ["meanvalue", "--t", "50,1e5", "--format", "json"];
    assert_eq!(run_to(&p, &args), 1);
    let doc = json(&p);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
    assert_eq!(doc["rows"][0]["t"], 50.0);
    assert_eq!(doc["meta"]["status"], "partial");
    assert!(doc["meta"]["failure"].as_str().unwrap().starts_with("t = 100000"));
}

#[test]
fn scan_single_omega_schema() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("scan.csv");
    let args = ["scan", "--omega", "0.4", "--t-max", "100", "--points", "20"];
    assert_eq!(run_to(&p, &args), 0);
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.starts_with("t,abs,ratio\n"));
    assert_eq!(text.lines().count(), 21);
}

#[test]
fn scan_rejects_omega_outside_window() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("scan.csv");
    assert_eq!(run_to(&p, &["scan", "--omega", "0.01", "--t-max", "100", "--points", "20"]), 1);
    let args = ["scan", "--omega", "0.01", "--t-max", "100", "--points", "20", "--allow-any-omega"];
    assert_eq!(run_to(&p, &args), 0);
}

#[test]
fn every_flag_documents_its_default() {
    use clap::CommandFactory;
    let root = cli::Cli::command();
    for sub in root.get_subcommands() {
        for arg in sub.get_arguments() {
            let id = arg.get_id().as_str();
            let optional = matches!(id, "omega" | "help" | "version" | "allow_any_omega" | "record_timing");
            let required = sub.get_name() == "eval" && matches!(id, "sigma" | "t");
            if optional || required {
                continue;
            }
            assert!(
                !arg.get_default_values().is_empty(),
                "{} --{} lacks a default",
                sub.get_name(),
                id
            );
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn run(sub: &str, scenario: &Path, out: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orlicz"))
        .arg(sub)
        .arg("--scenario")
        .arg(scenario)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

fn report(out: &Path, sub: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join(format!("{sub}.json"))).unwrap()).unwrap()
}

fn verdict<'a>(report: &'a Value, tag: &str) -> &'a Value {
    report["verdicts"].as_array().unwrap().iter().find(|v| v["criterion"] == tag).unwrap()
}

fn write_scenario(dir: &TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("scenario.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn classify_geometric_half() {
    let dir = TempDir::new().unwrap();
    let out = run("classify", &scenario("geometric_half.json"), dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "classify");
    assert_eq!(verdict(&r, "positive_expansivity_dissipative")["status"], "Holds");
    let u = verdict(&r, "uniform_expansivity_dissipative");
    assert_eq!((&u["status"], &u["condition"]), (&Value::from("Holds"), &Value::from("forward")));
    let s = verdict(&r, "strong_structural_stability");
    assert_eq!((&s["status"], &s["condition"]), (&Value::from("Holds"), &Value::from("expanding")));
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["provenance"].is_string()));
    assert!(dir.path().join("classify_a_k.csv").exists());
}

#[test]
fn norm_of_scaled_indicator() {
    let dir = TempDir::new().unwrap();
    let out = run("norm", &scenario("norm_example.json"), dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path(), "norm");
    // 3·χ_{0} with μ({0}) = 4 and p = 2: 3 · 4^{1/2}
    assert!((r["norms"]["gauge"].as_f64().unwrap() - 6.0).abs() < 1e-9);
    assert!((r["norms"]["amemiya"].as_f64().unwrap() - 12.0).abs() < 1e-9);
}

#[test]
fn invalid_json_exits_2_without_report() {
    let dir = TempDir::new().unwrap();
    let path = write_scenario(&dir, "{\"young\": ");
    let out_dir = dir.path().join("out");
    let out = run("classify", &path, &out_dir, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_dir.exists());

    let path = write_scenario(&dir, r#"{"young":{"family":"power","p":2},"space":{"kind":"geometric","r":0.5,"window":[-4,4]},"dissipative":{"W":[9]}}"#);
    assert_eq!(run("classify", &path, &out_dir, &[]).status.code(), Some(2));
    assert!(!out_dir.exists());
}

#[test]
fn missing_pieces_are_invalid() {
    let dir = TempDir::new().unwrap();
    let path = write_scenario(&dir, r#"{"young":{"family":"power","p":2}}"#);
    let out_dir = dir.path().join("out");
    for sub in ["norm", "classify", "probe", "sweep"] {
        assert_eq!(run(sub, &path, &out_dir, &[]).status.code(), Some(2), "{sub}");
    }
    assert_eq!(run("young", &path, &out_dir, &[]).status.code(), Some(0));
}

#[test]
fn unbounded_exits_3_with_report() {
    let dir = TempDir::new().unwrap();
    let out = run("classify", &scenario("unbounded.json"), dir.path(), &[]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(dir.path(), "classify");
    assert_eq!(r["certificates"]["boundedness"]["status"], "unbounded_evidence");
}

#[test]
fn reports_are_reproducible() {
    for (sub, name) in [("probe", "geometric_half.json"), ("classify", "two_sided.json"), ("sweep", "sweep_r.json")] {
        let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
        for d in [&a, &b] {
            assert_eq!(run(sub, &scenario(name), d.path(), &["--seed", "11"]).status.code(), Some(0));
        }
        let mut files: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        files.sort();
        assert!(files.len() >= 2, "{sub}: {files:?}");
        for f in files {
            assert_eq!(std::fs::read(a.path().join(&f)).unwrap(), std::fs::read(b.path().join(&f)).unwrap(), "{f:?}");
        }
    }
}

#[test]
fn seed_and_horizon_flags() {
    let dir = TempDir::new().unwrap();
    run("probe", &scenario("geometric_half.json"), dir.path(), &["--seed", "5", "--horizon", "30"]);
    let r = report(dir.path(), "probe");
    assert_eq!(r["seed"], 5);
    assert_eq!(r["probe"]["config"]["seed"], 5);
    assert_eq!(r["probe"]["config"]["horizon"], 30);
    assert_eq!(r["probe"]["all_exceed_forward"], true);
    run("classify", &scenario("geometric_half.json"), dir.path(), &["--horizon", "20"]);
    assert_eq!(report(dir.path(), "classify")["exponents"]["horizon"], 20);
}

fn sweep_rows(r: &Value) -> Vec<(f64, Vec<String>)> {
    r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            let statuses = row["statuses"].as_array().unwrap().iter().map(|s| s[1].as_str().unwrap().to_string()).collect();
            (row["value"].as_f64().unwrap(), statuses)
        })
        .collect()
}

#[test]
fn r_sweep_flips_across_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run("sweep", &scenario("sweep_r.json"), dir.path(), &[]).status.code(), Some(0));
    let rows = sweep_rows(&report(dir.path(), "sweep"));
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![0.25, 0.5, 2.0, 4.0]);
    assert_eq!(rows[0].1, rows[1].1);
    assert_eq!(rows[2].1, rows[3].1);
    assert_ne!(rows[1].1, rows[2].1);
    // column 0 is positive expansivity (general)
    assert_eq!((rows[1].1[0].as_str(), rows[2].1[0].as_str()), ("Holds", "Fails"));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn p_sweep_is_constant() {
    let dir = TempDir::new().unwrap();
    run("sweep", &scenario("sweep_p.json"), dir.path(), &[]);
    let rows = sweep_rows(&report(dir.path(), "sweep"));
    assert!(rows.windows(2).all(|w| w[0].1 == w[1].1));
}

#[test]
fn single_point_sweep_matches_classify() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(scenario("sweep_r.json")).unwrap().replace("[0.25, 0.5, 2.0, 4.0]", "[2.0]");
    let path = write_scenario(&dir, &text);
    run("sweep", &path, dir.path(), &[]);
    let rows = sweep_rows(&report(dir.path(), "sweep"));
    let classify_text = text.replace("\"r\": 0.5", "\"r\": 2.0");
    let classify_path = dir.path().join("classify_scenario.json");
    std::fs::write(&classify_path, classify_text).unwrap();
    run("classify", &classify_path, dir.path(), &[]);
    let statuses: Vec<String> = report(dir.path(), "classify")["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["status"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(rows[0].1, statuses);
}

#[test]
fn stability_two_sided() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run("stability", &scenario("two_sided.json"), dir.path(), &[]).status.code(), Some(0));
    let r = report(dir.path(), "stability");
    assert_eq!(verdict(&r, "structural_instability")["status"], "Holds");
    assert_eq!(verdict(&r, "strong_structural_stability")["status"], "Undetermined");
    assert_eq!(r["shadowing"]["shadowing_absent"], true);
    let fwd = r["exponents"]["forward_sup_nonneg"]["numeric"].as_f64().unwrap();
    assert!((fwd - 0.5f64.sqrt()).abs() < 1e-3);
    assert!(dir.path().join("stability_exponents.csv").exists());
}

#[test]
fn every_example_scenario_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut names: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    let mut families = std::collections::BTreeSet::new();
    for path in names {
        let text: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        families.insert(text["young"]["family"].as_str().unwrap().to_string());
        let out = TempDir::new().unwrap();
        let sub = if text.get("sweep").is_some() {
            "sweep"
        } else if text.get("transform").is_some() {
            "classify"
        } else {
            "norm"
        };
        let code = run(sub, &path, out.path(), &[]).status.code();
        let expected = if path.ends_with("unbounded.json") { 3 } else { 0 };
        assert_eq!(code, Some(expected), "{}", path.display());
        assert_eq!(run("young", &path, out.path(), &[]).status.code(), Some(0));
    }
    for family in ["power", "power_over_p", "exp_minus_one", "p_log", "table"] {
        assert!(families.contains(family), "no example for {family}");
    }
}

use std::process::{Command, Output};

fn paraq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paraq")).args(args).env_remove("PARAQ_JOBS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn default_run_passes() {
    let o = paraq(&[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().last().unwrap().ends_with(", 0 failed"));
    for suite in ["classical", "relations", "osc", "chevalley", "hopf.coassoc", "hopf.ideal", "green.sum", "modL.dimension"] {
        assert!(text.contains(&format!("PASS {suite} ")), "missing {suite}");
    }
}

#[test]
fn json_schema() {
    let o = paraq(&["--suite", "module-l", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["checks", "config", "conventions", "summary"]);
    let c = &v["checks"][0];
    for k in ["suite", "name", "indices", "status", "residual", "paper_ref"] {
        assert!(c.get(k).is_some(), "missing {k}");
    }
    assert_eq!(c["status"], "pass");
    assert!(c["residual"].is_null());
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["config"]["suites"], serde_json::json!(["module-l"]));
}

#[test]
fn serial_and_parallel_reports_are_identical() {
    let base = ["--family", "parabose", "--cutoff", "3", "--format", "json"];
    let serial = paraq(&[&base[..], &["--jobs", "1"]].concat());
    let parallel = paraq(&[&base[..], &["--jobs", "4"]].concat());
    let again = paraq(&[&base[..], &["--jobs", "1"]].concat());
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.stdout, again.stdout);
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_paraq"))
        .args(["--suite", "relations"])
        .env("PARAQ_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, paraq(&["--suite", "relations"]).stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_paraq")).env("PARAQ_JOBS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn corrupted_catalog_exits_one_naming_the_instance() {
    let o = paraq(&["--suite", "relations", "--corrupt-catalog"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL relations rel.cartan.inverse [1,1] residual: "), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--modes", "0"][..],
        &["--family", "paraboson"],
        &["--suite", "everything"],
        &["--sigma", "up"],
        &["--star", "twisted"],
        &["--q", "3"],
        &["--q", "1"],
        &["--jobs", "0"],
    ] {
        assert_eq!(paraq(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sigma_survivors_recorded() {
    let o = paraq(&["--family", "parabose", "--modes", "2", "--order", "1", "--cutoff", "6", "--suite", "relations", "--sigma", "auto", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conventions"]["sigma"], "plus (auto; I: plus,minus; Istar: plus,minus)");
    assert_eq!(v["conventions"]["star"], "plain (auto; surviving: plain)");
}

#[test]
fn spot_evaluation_and_out_file() {
    let dir = std::env::temp_dir().join(format!("paraq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let o = paraq(&["--suite", "relations", "--q", "9/4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("PASS spot rel.fe"));
    assert!(text.contains("\"q\":\"9/4\""));
    std::fs::remove_dir_all(dir).unwrap();
}

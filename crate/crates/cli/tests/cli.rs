use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use topogen::classdata::ClassTuple;

fn topogen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topogen"))
        .args(args)
        .env_remove("TOPOGEN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRANSVECTIONS: &str = r#"{"n": 3, "classes": [
  {"profile": [{"label": "a", "blocks": [2, 1]}], "values": {"a": "1"}},
  {"profile": [{"label": "a", "blocks": [2, 1]}], "values": {"a": "1"}}
]}"#;

const GENERATING_SL4: &str = r#"{"n": 4, "classes": [
  {"profile": [{"label": "a", "blocks": [1, 1]}, {"label": "b", "blocks": [1]}, {"label": "c", "blocks": [1]}]},
  {"profile": [{"label": "x", "blocks": [4]}]}
]}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_reports_obstruction_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "t.json", TRANSVECTIONS);
    let o = topogen(&["check", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "EigenspaceObstruction (condition (i)), witness 1\n");

    let spec = write(dir.path(), "g.json", GENERATING_SL4);
    let o = topogen(&["check", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Generating\n");
}

#[test]
fn malformed_spec_points_at_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "bad.json", "{\"n\": 3,\n \"classes\": [{\"profile\": [{\"label\": \"a\", \"blocks\": [1, 1, 1]}]}]}");
    let o = topogen(&["check", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("classes[0].profile") && err.contains("central"), "{err}");

    let spec = write(dir.path(), "syntax.json", "{\"n\": 3,\n \"classes\": [}");
    let err = String::from_utf8(topogen(&["check", "--spec", &spec]).stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn restrict_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "g.json", GENERATING_SL4);
    let out = dir.path().join("r.json");
    let o = topogen(&["restrict", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let parsed = ClassTuple::from_json(&text).unwrap();
    assert_eq!(parsed.n(), 3);
    assert_eq!(parsed.to_canonical_json(), text);

    let o = topogen(&["restrict", "--spec", &write(dir.path(), "t.json", TRANSVECTIONS)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("restriction"));
}

#[test]
fn alpha_row_within_threshold() {
    let o = topogen(&["alpha", "--n", "6"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert!(cols[5].parse::<u64>().unwrap() <= 81);
    assert_eq!(cols[6], "81");
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.csv"));
        let o = topogen(&[
            "simulate", "--n", "3", "--q", "2", "--r", "7", "--s", "7", "--samples", "500", "--seed", "1", "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs.remove(0)).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with(",1"));

    let a = topogen(&["simulate", "--n", "3", "--q", "2", "--r", "7", "--s", "7", "--samples", "50", "--format", "json"]);
    let b = topogen(&["simulate", "--n", "3", "--q", "2", "--r", "7", "--s", "7", "--samples", "50", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_comes_from_environment_when_not_given() {
    let o = Command::new(env!("CARGO_BIN_EXE_topogen"))
        .args(["simulate", "--n", "3", "--q", "2^1", "--r", "7", "--s", "7", "--samples", "10"])
        .env("TOPOGEN_SEED", "42")
        .output()
        .unwrap();
    assert!(stdout(&o).trim_end().ends_with(",42"));
    let o = topogen(&["simulate", "--n", "3", "--q", "2", "--r", "7", "--s", "7", "--samples", "10"]);
    assert!(stdout(&o).trim_end().ends_with(&format!(",{}", topogen::DEFAULT_SEED)));
}

#[test]
fn field_order_accepts_prime_power_notation() {
    let a = topogen(&["shapes", "--n", "3", "--q", "2^2", "--r", "3"]);
    let b = topogen(&["shapes", "--n", "3", "--q", "4", "--r", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(topogen(&["shapes", "--n", "3", "--q", "6", "--r", "3"]).status.code(), Some(1));
}

#[test]
fn classify_and_audit() {
    let o = topogen(&["classify", "--n", "3", "--q", "2", "--r", "7", "--s", "7"]);
    assert!(stdout(&o).contains("# good_exists=true"));
    assert_eq!(topogen(&["classify", "--n", "4", "--q", "3", "--r", "2", "--s", "2"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "sl3.json",
        r#"{"n": 3, "classes": [{"profile": [{"label": "a", "blocks": [3]}]}, {"profile": [{"label": "a", "blocks": [3]}]}]}"#,
    );
    let o = topogen(&["audit-sl3", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("pass,true\n"));
}

#[test]
fn verify_oracles_all_pass() {
    let o = topogen(&["verify-oracles"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(!text.contains("[FAIL]"));
}

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lie-reduce"));
    c.env_remove("LIE_REDUCE_FIXTURES");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn tables_compare_matches_every_entry() {
    let o = run(&["tables", "--compare"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("64/64 entries match").count(), 2);
    assert!(stdout(&o).contains("exp(-eps)*Z5"));
}

#[test]
fn latex_tables_have_caption_and_body() {
    let o = run(&["tables", "--format", "latex"]);
    let s = stdout(&o);
    assert_eq!(s.matches("\\caption{").count(), 2);
    assert!(s.contains("$Z_{1}$ & 0 & 0 & 0 & $Z_{1}$"));
    assert!(s.contains("e^{-\\epsilon}"));
}

#[test]
fn classify_representative_label() {
    let o = run(&["classify", "--element", "Z3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("f = c1*exp(-u)"), "{s}");
    assert!(s.contains("X3 = t*D_t + D_u"), "{s}");
}

#[test]
fn classify_with_parameters() {
    let o = run(&["classify", "--element", "Z^(8):a=1,b=0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matches case 2"));
}

#[test]
fn solve_reports_unsupported_case_separately() {
    let o = run(&["solve", "--case", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cases"][0]["status"], "unsupported");
}

#[test]
fn numeric_reduction_writes_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "reduce",
        "--case",
        "3",
        "--verify",
        "numeric",
        "--csv",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let csv = std::fs::read_to_string(dir.path().join("case3_bernoulli.csv")).unwrap();
    assert!(csv.starts_with("z,h,h'\n"));
}

#[test]
fn json_output_is_reproducible() {
    let a = run(&["reduce", "--verify", "numeric", "--format", "json"]);
    let b = run(&["reduce", "--verify", "numeric", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let residual = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["data"]["grid"].is_number())
        .unwrap();
    for key in ["case", "grid", "max_residual", "rate"] {
        assert!(residual["data"].get(key).is_some(), "{key}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--case", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&["classify", "--element", "Z^(99)"]).status.code(),
        Some(2)
    );
}

fn copy_fixtures(to: &Path) {
    let from = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for entry in std::fs::read_dir(from).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

#[test]
fn fixture_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let ok = bin()
        .env("LIE_REDUCE_FIXTURES", dir.path())
        .arg("principal")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    std::fs::write(dir.path().join("table1.json"), "{ not json").unwrap();
    let bad = bin()
        .env("LIE_REDUCE_FIXTURES", dir.path())
        .arg("principal")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("table1.json"));
}

#[test]
fn failing_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let path = dir.path().join("table1.json");
    let text =
        std::fs::read_to_string(&path)
            .unwrap()
            .replacen("\"Z7\", \"-Z8\"", "\"Z8\", \"-Z8\"", 1);
    std::fs::write(&path, text).unwrap();
    let o = run(&[
        "tables",
        "--compare",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("63/64 entries match"));
}

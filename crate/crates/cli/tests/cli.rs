use std::path::PathBuf;
use std::process::{Command, Output};

fn group(file: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../groups");
    dir.join(file).to_string_lossy().into_owned()
}

fn cambrian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cambrian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sortables_lists_fourteen_in_a3() {
    let out = cambrian(&[
        "sortables",
        "--group",
        &group("a3.json"),
        "--c",
        "p,q,r",
        "--max-len",
        "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 14);
    assert!(text.lines().next().unwrap().starts_with("word"));
    assert!(rows.iter().any(|r| r.starts_with("pqrpqp ")));
}

#[test]
fn sortables_as_json() {
    let out = cambrian(&[
        "sortables",
        "--group",
        &group("a2.json"),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let items: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let items = items.as_array().unwrap();
    assert_eq!(items.len(), 5);
    assert_eq!(items[0]["word"], "e");
    assert_eq!(items[0]["length"], 0);
}

#[test]
fn pidown_prints_canonical_words() {
    let a3 = group("a3.json");
    let out = cambrian(&["pidown", "--group", &a3, "--c", "pqr", "q,p"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q\n");
    let out = cambrian(&["pidown", "--group", &a3, "--c", "pqr", ""]);
    assert_eq!(stdout(&out), "\n");
    let out = cambrian(&["pidown", "--group", &a3, "--c", "pqr", "pqrpqp"]);
    assert_eq!(stdout(&out), "pqrpqp\n");
}

#[test]
fn verify_passes_on_b3() {
    let out = cambrian(&[
        "verify",
        "--group",
        &group("b3.json"),
        "--c",
        "rst",
        "--suite",
        "sortable",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    let out = cambrian(&["sortables", "--group", &group("corrupted_a3.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("condition (ii)"));
    let out = cambrian(&[
        "verify",
        "--group",
        &group("a3.json"),
        "--suite",
        "nonsense",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = cambrian(&["sortables", "--group", &group("a3.json"), "--c", "pq"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cambrian(&["sortables", "--group", &group("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = cambrian(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_is_deterministic() {
    let args = [
        "render",
        "--group",
        &group("affine_g2.json"),
        "--c",
        "srt",
        "--max-len",
        "6",
    ];
    let first = cambrian(&args);
    let second = cambrian(&args);
    assert!(first.status.success());
    assert!(stdout(&first).starts_with("<svg"));
    assert_eq!(first.stdout, second.stdout);
    let out = cambrian(&[
        "render",
        "--group",
        &group("b3.json"),
        "--projection",
        "affine-slice",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("cambrian-render-{}.svg", std::process::id()));
    let out = cambrian(&[
        "render",
        "--group",
        &group("b3.json"),
        "--projection",
        "stereographic",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(svg.contains("chamber sortable"));
}

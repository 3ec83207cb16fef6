use std::io::Write;
use std::process::{Command, Output, Stdio};

fn incomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incomp")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = incomp(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn validate_generated() {
    let out = stdout(&["validate", "--family", "saddle-pair", "--n", "2"]);
    assert!(out.starts_with("valid: true"));
    assert!(out.contains("euler: -3"));
}

#[test]
fn decide_compressible_exits_zero() {
    let out = stdout(&["decide", "--family", "saddle-pair", "--n", "2", "--variant", "doubled"]);
    assert!(out.starts_with("verdict: compressible"));
    assert!(out.contains("certificate verified: true"));
}

#[test]
fn decide_json() {
    let out = stdout(&["decide", "--family", "tripod", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "incompressible");
}

#[test]
fn reduce_logs_compression() {
    let out = stdout(&["reduce", "--family", "saddle-pair", "--variant", "raw"]);
    assert!(out.contains("# Compress piece 2 arcs 0 1"));
    // the rest of the output is a document the parser accepts
    let doc: String = out.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert!(incomp_core::parse(&doc).is_ok());
}

#[test]
fn graph_polygons_oracle() {
    assert!(stdout(&["graph", "--family", "collar"]).contains("trivial false"));
    assert!(stdout(&["polygons", "--family", "saddle-pair", "--n", "2"]).starts_with("polygons: 94"));
    assert!(stdout(&["oracle", "--family", "collar"]).starts_with("injective: true"));
}

#[test]
fn gen_round_trips_through_stdin() {
    let doc = stdout(&["gen", "--family", "tripod", "--n", "3", "--format", "json"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_incomp"))
        .args(["decide", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("verdict: incompressible"));
}

#[test]
fn render_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.svg");
    let p = path.to_str().unwrap();
    assert!(stdout(&["render", "--family", "saddle-pair", "--out", p]).is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn report_over_family() {
    let out = stdout(&["report", "--family", "saddle-pair", "--max-n", "3", "--format", "json"]);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    for (i, v) in lines.iter().enumerate() {
        assert_eq!(v["n"], i + 1);
        assert_eq!(v["verdict"], "incompressible");
        assert_eq!(v["agrees"], true);
    }
}

#[test]
fn errors_fail_with_message() {
    let o = incomp(&["decide"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing --input or --family"));

    let o = incomp(&["gen", "--family", "tripod", "--variant", "doubled"]);
    assert!(!o.status.success());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "format incomp-surface 1\ngenus 2\nbogus line\n").unwrap();
    let o = incomp(&["validate", "--input", bad.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

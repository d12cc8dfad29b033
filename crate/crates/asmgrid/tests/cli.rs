use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn asmgrid(args: &[&str], stdin: &str) -> Output {
    asmgrid_env(args, stdin, &[])
}

fn asmgrid_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_asmgrid"))
        .args(args)
        .env_remove("ASMGRID_MAX_N")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const D3: &str = r#"{"n":3,"rows":[[0,1,0],[1,-1,1],[0,1,0]]}"#;
const D3_NEIGHBOUR: &str = r#"{"n":3,"rows":[[1,0,0],[0,0,1],[0,1,0]]}"#;
const IDENTITY: &str = r#"{"n":3,"rows":[[1,0,0],[0,1,0],[0,0,1]]}"#;
const SWAP12: &str = r#"{"n":3,"rows":[[0,1,0],[1,0,0],[0,0,1]]}"#;

fn face_json(asms: &[&str]) -> Value {
    let o = asmgrid(&["face"], &format!("[{}]", asms.join(",")));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str::<Value>(&stdout(&o)).unwrap()["face"].clone()
}

#[test]
fn count_prints_exact_integers() {
    for (n, want) in [("1", "1"), ("3", "7"), ("6", "7436"), ("10", "129534272700")] {
        let o = asmgrid(&["count", n], "");
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
    assert_eq!(stdout(&asmgrid(&["count", "--n", "4"], "")).trim(), "42");
}

#[test]
fn bad_orders_are_input_errors() {
    let o = asmgrid(&["count", "0"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at least 1"));
    assert_eq!(asmgrid(&["count", "x"], "").status.code(), Some(2));
    assert_eq!(asmgrid(&["count", "3", "--n", "4"], "").status.code(), Some(2));
    assert_eq!(asmgrid(&["count"], "").status.code(), Some(2));
}

#[test]
fn face_of_two_adjacent_asms_is_an_edge() {
    let f = face_json(&[D3, D3_NEIGHBOUR]);
    assert_eq!(f["dimension"], 1);
    assert_eq!(f["num_vertices"], 2);
    assert_eq!(f["num_facets"], 2);
    assert_eq!(f["degree_profile"], serde_json::json!([4, 0, 0]));
}

#[test]
fn face_of_one_asm_is_a_point() {
    let f = face_json(&[IDENTITY]);
    assert_eq!(f["dimension"], 0);
    assert_eq!(f["num_vertices"], 1);
    assert_eq!(f["num_ears"], 0);
}

#[test]
fn square_face_reports_two_blocks() {
    let f = face_json(&[IDENTITY, D3, D3_NEIGHBOUR, SWAP12]);
    assert_eq!(f["dimension"], 2);
    assert_eq!(f["num_vertices"], 4);
    assert_eq!(f["blocks"], 2);
    assert_eq!(f["combinatorial_type"], "square");
    assert_eq!(f["grid"]["horizontal"][0], serde_json::json!(["D", "F"]));
}

#[test]
fn invalid_asm_names_the_matrix() {
    let o = asmgrid(&["face"], &format!("[{IDENTITY}, {{\"n\":2,\"rows\":[[1,1],[0,0]]}}]"));
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("matrix 2"), "{e}");
    let o = asmgrid(&["face"], "not json");
    assert_eq!(o.status.code(), Some(2));
    let o = asmgrid(&["face"], &format!("[{IDENTITY}, {{\"n\":2,\"rows\":[[1,0],[0,1]]}}]"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn face_writes_dot_alongside() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("edge.dot");
    let o = asmgrid(&["face", "--dot", dot.to_str().unwrap()], &format!("[{D3}, {D3_NEIGHBOUR}]"));
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dot).unwrap();
    assert_eq!(text.matches("color=red").count(), 4);
    let o = asmgrid(&["export-dot"], &format!("[{D3}, {D3_NEIGHBOUR}]"));
    assert_eq!(stdout(&o), text);
}

#[test]
fn text_grid_output() {
    let o = asmgrid(&["face", "--format", "text-grid"], &format!("[{D3}, {D3_NEIGHBOUR}]"));
    assert_eq!(stdout(&o), "+=+>+\n‖ ‖ ^\n+=+<+\nv ^ v\n+<+>+\n");
}

#[test]
fn lattice_of_the_square() {
    let o = asmgrid(&["lattice"], &format!("[{IDENTITY}, {D3}, {D3_NEIGHBOUR}, {SWAP12}]"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([4, 4, 1]));
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["command"], "lattice");
}

#[test]
fn classify_asm3_two_faces() {
    let o = asmgrid(&["classify", "3", "--max-dim", "2"], "");
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(names, ["triangle", "square"]);
}

#[test]
fn classify_asm4_has_octahedra_and_no_b3() {
    let o = asmgrid(&["classify", "4", "--max-dim", "3", "--format", "json"], "");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["name"] == "octahedron"));
    let o = asmgrid(&["classify", "4", "--max-dim", "4", "--format", "json"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| !(r["vertices"] == 6 && r["facets"] == 9)));
    assert!(rows.iter().all(|r| r["in_table"] == true));
    assert_eq!(v["complete"], true);
}

#[test]
fn classify_budget_exhaustion_exits_3() {
    let o = asmgrid(&["classify", "4", "--budget", "10"], "");
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("# incomplete"));
    assert_eq!(asmgrid(&["classify", "4", "--budget", "0"], "").status.code(), Some(2));
    assert_eq!(asmgrid(&["classify", "4", "--max-dim", "5"], "").status.code(), Some(2));
    assert_eq!(asmgrid(&["classify", "6"], "").status.code(), Some(2));
}

#[test]
fn audits_pass_for_small_n() {
    for n in ["2", "3"] {
        let o = asmgrid(&["audit", n], "");
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS") || l.starts_with("coverage") || l.starts_with("     ")));
    }
}

#[test]
fn audit_of_asm4_reports_twenty_top_facets() {
    let o = asmgrid(&["audit", "4", "--format", "json"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let top = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "top face geometry").unwrap();
    assert_eq!(top["note"], "dimension 9, 20 facets");
    assert_eq!(v["complete"], true);
}

#[test]
fn enumeration_guard_follows_environment() {
    let o = asmgrid(&["enumerate", "4", "--format", "csv"], "");
    assert_eq!(stdout(&o).lines().count(), 42);
    let o = asmgrid_env(&["enumerate", "4"], "", &[("ASMGRID_MAX_N", "3")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds"), "{}", stderr(&o));
}

#[test]
fn outputs_are_deterministic() {
    let a = asmgrid(&["classify", "4", "--max-dim", "3"], "");
    let b = asmgrid(&["classify", "4", "--max-dim", "3"], "");
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = asmgrid(&["audit", "3", "--format", "json", "--out", out.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let first = std::fs::read(&out).unwrap();
    asmgrid(&["audit", "3", "--format", "json", "--out", out.to_str().unwrap()], "");
    assert_eq!(std::fs::read(&out).unwrap(), first);
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const TRIANGLE: &str =
    "{\"boundary_edge\":[0,1],\"rotations\":{\"0\":[1,2],\"1\":[2,0],\"2\":[0,1]},\"vertices\":[0,1,2]}\n";
const K4: &str = r#"{"rotations":{"0":[1,3,2],"1":[2,3,0],"2":[0,3,1],"3":[0,1,2]},"vertices":[0,1,2,3]}"#;

fn twoone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoone")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decompose_then_verify_then_color() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "t.json", TRIANGLE);
    let cert = d.path().join("c.json");
    let o = twoone(&["decompose", &g, "--out", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        fs::read_to_string(&cert).unwrap(),
        "{\"arcs\":[[2,0],[2,1]],\"boundary_edge\":[0,1],\"matching\":[[0,1]],\"order\":[0,1,2]}\n"
    );
    let o = twoone(&["verify", &g, cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "ok");
    let lists = write(d.path(), "l.json", r#"{"0":[1,2,3],"1":[1,2,3],"2":[1,2,3]}"#);
    let o = twoone(&["color", &g, cert.to_str().unwrap(), "--lists", &lists]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"defects\":[[0,1]]"));
}

#[test]
fn broken_certificate_fails_verification() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "t.json", TRIANGLE);
    let c =
        write(d.path(), "c.json", r#"{"arcs":[[0,2],[2,1]],"boundary_edge":[0,1],"matching":[[0,1]],"order":[0,1,2]}"#);
    let o = twoone(&["verify", &g, &c]);
    assert_eq!(code(&o), 1);
    let c = write(d.path(), "u.json", r#"{"arcs":[[7,0]],"matching":[],"order":[0]}"#);
    assert_eq!(code(&twoone(&["verify", &g, &c])), 1);
}

#[test]
fn out_of_class_is_a_failure_with_witness() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "k4.json", K4);
    let o = twoone(&["check", &g, "--witness"]);
    assert_eq!(code(&o), 1);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("cases: []"));
    assert!(out.contains("case3: 4-cycle"));
    assert_eq!(code(&twoone(&["decompose", &g])), 1);
}

#[test]
fn usage_errors_exit_two() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "t.json", TRIANGLE);
    assert_eq!(code(&twoone(&["decompose", &g, "--edge", "0;1"])), 2);
    assert_eq!(code(&twoone(&["decompose", &g, "--format", "edgelist"])), 2);
    assert_eq!(code(&twoone(&["check", &g, "--case", "7"])), 2);
    assert_eq!(code(&twoone(&["nonsense"])), 2);
    let bad = write(d.path(), "bad.json", "{\"vertices\":[0,");
    let o = twoone(&["check", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn edge_lists_work_for_abstract_commands() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "t.txt", "0 1\n1 2\n2 0\n");
    assert_eq!(code(&twoone(&["check", &g, "--format", "edgelist", "--case", "3"])), 0);
    let o = twoone(&["oracle", &g, "--format", "edgelist", "--edge", "0,1"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"matching\":[[0,1]]"));
}

#[test]
fn gen_is_deterministic_and_in_class() {
    let a = twoone(&["gen", "--seed", "5", "-n", "20", "--case", "2"]);
    let b = twoone(&["gen", "--seed", "5", "-n", "20", "--case", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "g.json", &String::from_utf8_lossy(&a.stdout));
    assert_eq!(code(&twoone(&["check", &g, "--case", "2"])), 0);
    assert_eq!(code(&twoone(&["decompose", &g, "--verify-steps"])), 0);
}

#[test]
fn audit_prints_a_zero_total() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "t.json", TRIANGLE);
    let j = d.path().join("ledger.json");
    let o = twoone(&["audit", &g, "--case", "3", "--out", j.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("total 0"));
    assert!(fs::read_to_string(j).unwrap().contains("\"transfers\""));
}

#[test]
fn batch_reports_and_exits_nonzero_on_a_bad_item() {
    let d = tempfile::tempdir().unwrap();
    let t = write(d.path(), "t.json", TRIANGLE);
    let k = write(d.path(), "k.json", K4);
    let out = d.path().join("o");
    let o = twoone(&["batch", &t, &k, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"ok\":1"));
    assert_eq!(code(&twoone(&["batch", "--out", out.to_str().unwrap()])), 0);
}

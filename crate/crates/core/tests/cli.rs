use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cartan::library::NAMES;
use serde_json::Value;

fn cartan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cartan")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cartan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn export_to(spec: &str, path: &Path) {
    let o = cartan(&["examples", "--export", spec]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(path, &o.stdout).unwrap();
}

#[test]
fn validate_hopf_ok() {
    let path = scratch("hopf.model");
    export_to("hopf", &path);
    let o = cartan(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] total d^2 = 0"));
}

#[test]
fn validate_heisenberg_fails_on_full_antisymmetry() {
    let path = scratch("heisenberg.model");
    export_to("heisenberg", &path);
    let o = cartan(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] lie: full antisymmetry"), "{}", stdout(&o));
}

#[test]
fn validate_mutated_jacobi_fails() {
    let path = scratch("mutated.model");
    export_to("mutated_jacobi", &path);
    let o = cartan(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[FAIL] lie: Jacobi identity"), "{out}");
    assert!(out.contains("[FAIL] lie: delta^2 = 0"), "{out}");
}

#[test]
fn malformed_key_is_a_parse_error() {
    let path = scratch("eulr.model");
    export_to("hopf", &path);
    let text = std::fs::read_to_string(&path).unwrap().replace("\"euler\"", "\"eulr\"");
    std::fs::write(&path, text).unwrap();
    let o = cartan(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eulr"));
}

#[test]
fn missing_file_and_bad_usage() {
    assert_eq!(cartan(&["validate", "/nonexistent/x.model"]).status.code(), Some(2));
    assert_eq!(cartan(&["pages"]).status.code(), Some(2));
    assert_eq!(cartan(&["examples"]).status.code(), Some(2));
    assert_eq!(cartan(&["examples", "--run", "nope"]).status.code(), Some(2));
    assert_eq!(cartan(&["examples", "--run", "weighted_hopf:0"]).status.code(), Some(2));
}

#[test]
fn pages_hopf_table() {
    let path = scratch("hopf-pages.model");
    export_to("hopf", &path);
    let o = cartan(&["pages", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("d_2 rank at (0,1) -> (2,0): 1"), "{out}");
    assert!(out.contains("verdict: isomorphism"));
    assert!(out.contains("E_inf = E_3"));
}

#[test]
fn pages_kronecker_stabilizes_at_two() {
    let path = scratch("kronecker.model");
    export_to("kronecker", &path);
    let o = cartan(&["pages", path.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stabilized_at"], 2);
}

#[test]
fn pages_max_r() {
    let path = scratch("hopf-maxr.model");
    export_to("hopf", &path);
    let o = cartan(&["pages", path.to_str().unwrap(), "--max-r", "2", "--format", "machine"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pages"].as_array().unwrap().len(), 3);
    assert_eq!(v["e_infinity"]["r"], 3);
}

#[test]
fn examples_list_has_six_names() {
    let o = cartan(&["examples", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    for n in NAMES {
        assert!(out.lines().any(|l| l.starts_with(n)), "{n}");
    }
}

#[test]
fn examples_run_weighted_hopf_three() {
    let o = cartan(&["examples", "--run", "weighted_hopf:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(0,1) -> (2,0): [[3/1]]"), "{}", stdout(&o));
}

#[test]
fn invalid_model_pages_exit_one() {
    let path = scratch("heis-pages.model");
    export_to("heisenberg", &path);
    assert_eq!(cartan(&["pages", path.to_str().unwrap()]).status.code(), Some(1));
}

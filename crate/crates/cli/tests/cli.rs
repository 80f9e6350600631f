use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polygroth")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../docs/schemas/{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn validated(name: &str, args: &[&str]) -> Value {
    let mut full = vec!["--json", name];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{full:?}: {e}"));
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v}");
    v
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["chi", "-e", "dim 1; x1 >= 0"]), "chi=0 chi_b=1\n");
    assert_eq!(stdout(&["class", "-e", "dim 2; x1 >= 0 & -x1 >= -1 & x2 >= 0 & -x2 >= -1"]), "u^2 + v^2\n");
    assert_eq!(stdout(&["chi-gamma", "--gamma", "1", "-e", "dim 1; x1 >= 1/2 & -x1 >= -1/2"]), "0\n");
    assert_eq!(stdout(&["chi-gamma", "--gamma", "1", "-e", "dim 1; x1 = 0"]), "2\n");
    assert_eq!(stdout(&["ungraded", "-e", "dim 1; x1 > 0"]), "(-1, 0)\n");
}

#[test]
fn polyhedron_commands() {
    let faces = stdout(&["faces", "-e", "1 0 >= 0\n-1 0 >= -1\n0 1 >= 0\n0 -1 >= -1"]);
    assert!(faces.starts_with("9 faces\n"));
    let strip = "dim 2; x2 >= 0 & x2 <= 1";
    let bg = stdout(&["bg", "--verify", "--exterior", "0,-1", "-e", strip]);
    assert!(bg.contains("verified true"));
    assert!(bg.contains("chi(visible union from (0, -1)) -1"));
    let rec = stdout(&["recession", "-e", strip]);
    assert!(rec.starts_with("ell 1\nbounded false\n"));
    let t = stdout(&["tangent", "--face", "0", "-e", "1 >= 0; -1 >= -1"]);
    assert_eq!(t, "face 0 dim 0\n1 >= 0\n");
}

#[test]
fn reads_files_and_stdin() {
    let dir = std::env::temp_dir().join(format!("polygroth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("half.txt");
    std::fs::write(&path, "# closed half-line\ndim 1; x1 >= 0\n").unwrap();
    assert_eq!(stdout(&["chi", path.to_str().unwrap()]), "chi=0 chi_b=1\n");
    let mut child = Command::new(env!("CARGO_BIN_EXE_polygroth"))
        .args(["class", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"dim 1; x1 > 0").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "-u\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["chi", "-e", "dim 1; x1 >= 0.5"]), 2);
    assert_eq!(code(&["chi", "-e", "dim 1; x3 >= 0"]), 2);
    assert_eq!(code(&["chi"]), 2);
    assert_eq!(code(&["chi", "-e", "dim 1; x1 >= 0", "file.txt"]), 2);
    assert_eq!(code(&["chi", "/nonexistent/input"]), 2);
    assert_eq!(code(&["motivic", "-e", "torus 1; val(x1 + 1) >= 0"]), 2);
    assert_eq!(code(&["chi-gamma", "--gamma=-2", "-e", "dim 1; x1 = 0"]), 1);
    assert_eq!(code(&["chi-gamma", "-e", "dim 2; x1 = 0"]), 2);
    assert_eq!(code(&["chi", "--max-hyperplanes", "1", "-e", "dim 1; x1 >= 0 & x1 <= 1"]), 3);
    assert_eq!(code(&["faces", "--max-dim", "1", "-e", "1 0 >= 0"]), 3);
    assert_eq!(code(&["bg", "--exterior", "1/2", "-e", "1 >= 0; -1 >= -1"]), 1);
    assert_eq!(code(&["tangent", "--face", "9", "-e", "1 >= 0"]), 2);
    let err = run(&["chi", "-e", "dim 1;\nx1 >= 0 &"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("2:"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "cells", "-e", "dim 2; x1 >= 0 | x2 > x1 | x1 + x2 = 1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn json_outputs_match_schemas() {
    let v = validated("faces", &["-e", "dim 2; x1 >= 0 & x2 >= 0"]);
    assert_eq!(v["faces"].as_array().unwrap().len(), 4);
    validated("recession", &["-e", "0 1 >= 0; 0 -1 >= -1"]);
    validated("tangent", &["--face", "1", "-e", "1 >= 0; -1 >= -1"]);
    let bg = validated("bg", &["--verify", "--exterior", "0,-1", "-e", "0 1 >= 0; 0 -1 >= -1"]);
    assert_eq!(bg["ell"], 1);
    assert_eq!(bg["terms"].as_array().unwrap().len(), 3);
    validated("bg", &["-e", "1 >= 1; -1 >= 0"]);
    let chi = validated("chi", &["-e", "dim 1; x1 > 0"]);
    assert_eq!((chi["chi"].as_i64(), chi["chi_b"].as_i64()), (Some(-1), Some(0)));
    validated("ungraded", &["-e", "dim 1; x1 = 0"]);
    let class = validated("class", &["-e", "dim 2; x1 = 0"]);
    assert_eq!(class["class"], "-u^2 + v^2");
    validated("chi-gamma", &["--gamma", "1/2", "-e", "dim 1; x1 >= 0 & x1 < 3"]);
    let cells = validated("cells", &["-e", "dim 2; x1 >= 0 & x2 < 1"]);
    assert_eq!(cells["cells"].as_array().unwrap().len(), 9);
    let m = validated("motivic", &["-e", "torus 1; val(x1) > 0; point"]);
    assert_eq!(m["in_kernel"], false);
    assert_eq!(m["psi"], "1");
    let s = validated("verify-suite", &["--filter", "kernel_open_vs_closed_ball"]);
    assert_eq!(s["passed"], true);
}

#[test]
fn suite_filter() {
    let out = stdout(&["verify-suite", "--filter", "bg_*"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.iter().filter(|l| l.starts_with("PASS bg_")).count() >= 6);
    assert!(lines.iter().all(|l| !l.starts_with("PASS") || l.starts_with("PASS bg_")));
    assert!(out.contains("bg_strip"));
    let k = stdout(&["verify-suite", "--filter", "kernel_open_vs_closed_ball"]);
    assert!(k.contains("Psi([open ball] - 1) = 0"));
    assert!(k.contains("Psi([closed ball] - 1) = L - 1"));
    assert_eq!(code(&["verify-suite", "--filter", "no_such_check"]), 2);
}

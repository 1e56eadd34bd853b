use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn fdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdual")).args(args).output().expect("fdual runs")
}

fn fdual_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fdual"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("fdual runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn problem(name: &str) -> String {
    golden_dir().join("problems").join(name).to_string_lossy().into_owned()
}

#[test]
fn reports_match_golden_files() {
    for id in ["y34", "y23", "y13", "quintic", "hyp-n4-d6"] {
        let out = fdual(&["report", id]);
        assert!(out.status.success(), "{id}: {}", String::from_utf8_lossy(&out.stderr));
        let path = golden_dir().join(format!("{id}.json"));
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&want), "{id} drifted");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = fdual(&["mirror", &problem("y34.toml")]);
    let b = fdual(&["mirror", &problem("y34.toml")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn projective_then_dual() {
    let p = fdual(&["projective", "--n", "5", "--degrees", "3,4"]);
    assert!(p.status.success());
    let d = ok_json(&fdual_stdin(&["dual", "-"], &p.stdout));
    let b: Vec<i64> = serde_json::from_value(d["b"].clone()).unwrap();
    assert_eq!(b, vec![1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 1]);
    assert_eq!(d["case"], "f");
}

#[test]
fn toml_problem_matches_generated_json() {
    let p = fdual(&["projective", "--n", "5", "--degrees", "3,4"]);
    let from_json = ok_json(&fdual_stdin(&["dual", "-"], &p.stdout));
    let from_toml = ok_json(&fdual(&["dual", &problem("y34.toml")]));
    assert_eq!(from_json["b_k"], from_toml["b_k"]);
    assert_eq!(from_json["fan_matrix"], from_toml["fan_matrix"]);
}

#[test]
fn quintic_is_calibrated() {
    let v = ok_json(&fdual(&["calibrate", &problem("quintic.json")]));
    assert_eq!(v["calibrated"], true);
}

#[test]
fn quintic_hodge_numbers() {
    let v = ok_json(&fdual(&["hodge", &problem("quintic.json")]));
    assert_eq!(v["h_omega"], serde_json::json!([0, 1, 101, 0]));
    assert_eq!(v["h_o"], serde_json::json!([1, 0, 0, 1]));
}

#[test]
fn weak_example_lg_product_is_psi() {
    let v = ok_json(&fdual(&["lg", &problem("y23.json")]));
    assert_eq!(v["q_product"]["coeff"], "psi");
    assert!(v["q_product"]["exponent"].as_array().unwrap().iter().all(|x| x == 0));
}

#[test]
fn weak_projective_matches_checked_in_problem() {
    let gen = ok_json(&fdual(&["projective", "--n", "5", "--degrees", "2,3", "--weak"]));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(problem("y23.json")).unwrap()).unwrap();
    for key in ["fan_matrix", "framing", "partition"] {
        assert_eq!(gen[key], file[key], "{key}");
    }
}

#[test]
fn stringy_hypersurface() {
    let v = ok_json(&fdual(&["stringy", "--n", "4", "--d", "6"]));
    assert_eq!(v["phi"][1], 199);
    assert_eq!(v["c_prime"][1], 195);
    let q = ok_json(&fdual(&["stringy", "--n", "4", "--d", "5"]));
    // Sum is the normalized volume 5^4 of the simplex.
    assert_eq!(q["c"], serde_json::json!([1, 121, 381, 121, 1]));
}

#[test]
fn count_interior_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("simplex.json");
    std::fs::write(&path, r#"{"vertices": [[0,0,0],[1,0,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let p = path.to_string_lossy();
    assert_eq!(ok_json(&fdual(&["count", &p, "l*(4P)"]))["value"], 1);
    assert_eq!(ok_json(&fdual(&["count", &p, "l(2P)"]))["value"], 10);
}

#[test]
fn markdown_report() {
    let out = fdual(&["--markdown", "report", "y34"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("## y34"));
    assert!(s.contains("| K_a | 218 | 218 | yes |"));
}

#[test]
fn malformed_input_exits_2() {
    let out = fdual_stdin(&["dual", "-"], b"{ not json");
    assert_eq!(out.status.code(), Some(2));
    let out = fdual_stdin(&["dual", "-"], br#"{"name":"x","fan_matrix":[[1,0,-1],[0,1,-1]],"framing":[1,1,1],"partition":[[0,1,2]]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1-based"));
    assert_eq!(fdual(&["dual", "/nonexistent/problem.json"]).status.code(), Some(2));
    assert_eq!(fdual(&["report", "nope"]).status.code(), Some(2));
}

#[test]
fn failed_expectation_exits_1_and_names_it() {
    let input = br#"{"name":"p2","fan_matrix":[[1,0,-1],[0,1,-1]],"framing":[1,1,1],"expect_case":"wf"}"#;
    let out = fdual_stdin(&["dual", "-"], input);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expect_case"));
}

#[test]
fn hodge_outside_projective_space_exits_1() {
    let input = br#"{"name":"p1xp1","fan_matrix":[[1,-1,0,0],[0,0,1,-1]],"framing":[1,1,1,1]}"#;
    assert_eq!(fdual_stdin(&["hodge", "-"], input).status.code(), Some(1));
}

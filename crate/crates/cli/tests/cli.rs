//! End-to-end tests of the circlekit binary: exit codes, document output,
//! determinism, and the full-catalog acceptance invocation.

use std::process::{Command, Output};

fn circlekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circlekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn circlekit_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_circlekit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn centers_reference_triangle() {
    let out = circlekit(&["centers", "--points", "0,3", "0,0", "4,0"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let o = &doc["points"]["circumcenter"];
    assert_eq!(o[0], 2.0);
    assert_eq!(o[1], 1.5);
    let sp = &doc["points"]["spieker"];
    assert_eq!(sp[0], 1.5);
    assert_eq!(sp[1], 1.0);
}

#[test]
fn centers_by_sides_canonical_placement() {
    // a = 4 on the x axis; with b = 5 (CA) and c = 3 (AB) the apex lands at
    // (0, 3) giving circumcenter (2, 1.5).
    let out = circlekit(&["centers", "--sides", "4,5,3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["points"]["B"][0], 0.0);
    assert_eq!(doc["points"]["C"][0], 4.0);
    let o = &doc["points"]["circumcenter"];
    assert!((o[0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((o[1].as_f64().unwrap() - 1.5).abs() < 1e-12);
}

#[test]
fn centers_sides_345_places_the_right_angle_at_c() {
    let out = circlekit(&["centers", "--sides", "3,4,5"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    // a = 3 along the x axis, right angle at C = (3, 0); the circumcenter is
    // the hypotenuse midpoint (1.5, 2).
    let o = &doc["points"]["circumcenter"];
    assert!((o[0].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((o[1].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn centers_degenerate_exits_2() {
    let out = circlekit(&["centers", "--points", "0,0", "1,0", "2,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn centers_equilateral_centers_coincide() {
    let out = circlekit(&["centers", "--sides", "1,1,1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let g = &doc["points"]["centroid"];
    let o = &doc["points"]["circumcenter"];
    for i in 0..2 {
        assert!((g[i].as_f64().unwrap() - o[i].as_f64().unwrap()).abs() < 1e-12);
    }
}

#[test]
fn circle_lemoine2_document() {
    let out = circlekit(&["circle", "--points", "0,3", "0,0", "4,0", "lemoine2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let c = &doc["circles"]["lemoine2"];
    assert!((c["center"][0].as_f64().unwrap() - 0.72).abs() < 1e-12);
    assert!((c["center"][1].as_f64().unwrap() - 0.96).abs() < 1e-12);
    assert!((c["r2"].as_f64().unwrap() - 1.44).abs() < 1e-12);
}

#[test]
fn circle_excircle_radical_document() {
    let out = circlekit(&["circle", "--points", "0,3", "0,0", "4,0", "excircle-radical"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let c = &doc["circles"]["excircle-radical"];
    assert!((c["center"][0].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((c["r2"].as_f64().unwrap() - 9.25).abs() < 1e-12);
}

#[test]
fn circle_apollonius_isosceles_exits_2() {
    let out = circlekit(&[
        "circle", "--sides", "1,1,1", "apollonius", "--vertex", "A", "--k", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("IsoscelesUndefined"));
}

#[test]
fn check_unknown_id_exits_3() {
    let out = circlekit(&["check", "BOGUS"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_json_emits_one_line_per_id() {
    let out = circlekit(&["check", "DF2.T1", "L3.P1", "--json", "--trials", "20"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 2);
    for line in lines {
        let rep: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(rep["failures"], 0);
    }
}

#[test]
fn check_rational_backend_subset() {
    let out = circlekit(&["check", "all", "--backend", "rational", "--trials", "20"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    // Only the rational-capable checks run under --backend rational.
    assert_eq!(text.trim().lines().count(), 7);
    assert!(text.contains("L3.P1"));
    assert!(!text.contains("L1.T1"));
}

#[test]
fn ruler_verify_builtin() {
    let out = circlekit(&[
        "ruler", "verify", "--builtin", "parallel_to_diameter", "--trials", "50",
    ]);
    assert!(out.status.success());
    assert!(stdout_str(&out).contains("PASS"));
}

#[test]
fn ruler_run_is_deterministic() {
    let args = ["ruler", "run", "--builtin", "problem3", "--seed", "5"];
    let a = circlekit(&args);
    let b = circlekit(&args);
    assert!(a.status.success());
    assert_eq!(stdout_str(&a), stdout_str(&b));
}

#[test]
fn ruler_rejects_compass_programs() {
    let dir = std::env::temp_dir().join("circlekit_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.ruler");
    std::fs::write(&path, "given A : point\nC2 = circle(A, 3)\n").unwrap();
    let out = circlekit(&["ruler", "run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn ruler_runs_a_user_program_file() {
    let dir = std::env::temp_dir().join("circlekit_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chord.ruler");
    std::fs::write(
        &path,
        "# chord and its second circle intersection\n\
         given k : circle_with_center\n\
         given O : point\n\
         given A : point\n\
         given B : point\n\
         l = join(A, B)\n\
         X = second_meet(l, A)\n\
         out = join(O, X)\n",
    )
    .unwrap();
    let out = circlekit(&["ruler", "run", path.to_str().unwrap(), "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(doc["points"].get("X").is_some());
}

#[test]
fn render_scene_from_stdin() {
    let scene = circlekit(&["circle", "--points", "0,3", "0,0", "4,0", "lemoine1"]);
    assert!(scene.status.success());
    let svg1 = circlekit_stdin(&["render", "-"], &stdout_str(&scene));
    let svg2 = circlekit_stdin(&["render", "-"], &stdout_str(&scene));
    assert!(svg1.status.success());
    let body = stdout_str(&svg1);
    assert!(body.starts_with("<svg"));
    assert!(body.contains("<circle"));
    // Byte-identical rendering.
    assert_eq!(body, stdout_str(&svg2));
}

#[test]
fn render_empty_scene() {
    let svg = circlekit_stdin(
        &["render", "-"],
        "{\"version\":\"1\",\"points\":{},\"lines\":{},\"circles\":{}}",
    );
    assert!(svg.status.success());
    assert!(stdout_str(&svg).contains("viewBox=\"0 0 1 1\""));
}

/// The acceptance invocation: every catalog check at seed 42, 300 trials,
/// threshold 1e-7, exit code 0.
#[test]
fn check_all_full_run_exits_0() {
    let started = std::time::Instant::now();
    let out = circlekit(&[
        "check", "all", "--seed", "42", "--trials", "300", "--threshold", "1e-7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_str(&out));
    let text = stdout_str(&out);
    assert_eq!(text.trim().lines().count(), 48);
    assert!(!text.contains("FAIL"));
    assert!(started.elapsed().as_secs_f64() <= 120.0);
}

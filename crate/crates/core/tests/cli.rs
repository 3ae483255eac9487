use std::io::Write;
use std::process::{Command, Output, Stdio};

fn extrigid(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_extrigid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

const CONTROL: &str = "
ring S = poly(p=101, vars=[x,y]);
ring R = S / (x*y);
module A over R = coker [[x]];
module B over R = coker [[y]];
";

#[test]
fn passing_session_exits_zero() {
    let out = extrigid(&[], &format!("{CONTROL} check tor_rigidity A B; grade A;"));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tor_rigidity: inapplicable"));
}

#[test]
fn parse_error_exits_three_with_position() {
    let out = extrigid(&[], "ring Q = poly(p=101, vars=[x]);\nmodule M over Q = coker [[x, q]];");
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn bad_flag_exits_three() {
    assert_eq!(extrigid(&["--format", "yaml"], "").status.code(), Some(3));
    assert_eq!(extrigid(&["--input", "/nonexistent/x.dsl"], "").status.code(), Some(3));
}

#[test]
fn command_error_exits_two() {
    let out = extrigid(&[], "ring Q = poly(p=101, vars=[x]); theta Q Q;");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structured_output_and_defaults() {
    let out = extrigid(
        &["--format", "structured", "--seed", "9", "--trials", "3", "--length-cap", "7"],
        "campaign grade_drop;",
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["settings"]["seed"], 9);
    assert_eq!(v["settings"]["length_cap"], 7);
    assert_eq!(v["settings"]["degree_cap"], 30);
    assert_eq!(v["results"][0]["result"]["report"]["trials"], 3);
}

#[test]
fn witness_dir_is_created_without_fails() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("w");
    let out = extrigid(&["--witness-dir", target.to_str().unwrap()], &format!("{CONTROL} check self_ext A;"));
    assert_eq!(out.status.code(), Some(0));
    assert!(target.is_dir());
    assert_eq!(std::fs::read_dir(&target).unwrap().count(), 0);
}

#[test]
fn file_input_matches_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.dsl");
    let src = format!("{CONTROL} theta A B;");
    std::fs::write(&path, &src).unwrap();
    let a = extrigid(&["--input", path.to_str().unwrap()], "");
    let b = extrigid(&[], &src);
    assert_eq!(a.stdout, b.stdout);
}

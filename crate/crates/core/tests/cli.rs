use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_clarke-kin");

fn geometry(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn run(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .env_remove("CLARKE_KIN_TOL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn parse_rows(text: &[u8]) -> Vec<Vec<f64>> {
    std::str::from_utf8(text)
        .unwrap()
        .lines()
        .skip(1)
        .map(|line| line.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn transform_forward_and_inverse() {
    let dir = TempDir::new().unwrap();
    let g = geometry(&dir, "g4.json", r#"{"n": 4, "d": 0.01, "l": 0.1}"#);
    let out = run(
        &["transform", "--geometry", p(&g), "--direction", "forward"],
        b"rho_1,rho_2,rho_3,rho_4\n1,0,-1,0\n0,1,0,-1\n",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "rho_re,rho_im\n1,0\n0,1\n"
    );

    let out = run(
        &["transform", "--geometry", p(&g), "--direction", "inverse"],
        b"rho_re,rho_im\n1,0\n",
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "rho_1,rho_2,rho_3,rho_4\n1,0,-1,0\n"
    );
}

#[test]
fn file_input_and_output() {
    let dir = TempDir::new().unwrap();
    let g = geometry(&dir, "g3.json", r#"{"n": 3, "d": 0.01, "l": 0.1}"#);
    let input = dir.path().join("in.csv");
    let output = dir.path().join("out.csv");
    std::fs::write(&input, "rho_re,rho_im\n0.003,-0.001\n").unwrap();
    let out = run(
        &[
            "convert",
            "--geometry",
            p(&g),
            "--scheme",
            "ALLEN3",
            "--from",
            "clarke",
            "--input",
            p(&input),
            "--output",
            p(&output),
        ],
        b"",
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    let rows = parse_rows(std::fs::read_to_string(&output).unwrap().as_bytes());
    assert!((rows[0][0] - 0.1).abs() < 1e-15 && (rows[0][1] - 0.3).abs() < 1e-15);
}

#[test]
fn convert_lengths_reports_clarke_and_legacy() {
    let dir = TempDir::new().unwrap();
    let g = geometry(&dir, "g4.json", r#"{"n": 4, "d": 0.01, "l": 0.1}"#);
    let out = run(
        &[
            "convert",
            "--geometry",
            p(&g),
            "--scheme",
            "dellasantina4",
            "--from",
            "lengths",
        ],
        b"l_1,l_2,l_3,l_4\n0.099,0.1,0.101,0.1\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("rho_re,rho_im,delta_x,delta_y\n"));
    let row = &parse_rows(text.as_bytes())[0];
    assert!((row[0] - 0.001).abs() < 1e-15 && row[1].abs() < 1e-15);
    assert!((row[2] - row[0]).abs() < 1e-15 && (row[3] - row[1]).abs() < 1e-15);
}

#[test]
fn fk_straight_and_domain_error() {
    let dir = TempDir::new().unwrap();
    let g = geometry(&dir, "g4.json", r#"{"n": 4, "d": 0.01, "l": 0.1}"#);
    let out = run(&["fk", "--geometry", p(&g)], b"rho_re,rho_im\n0,0\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "x,y,z,r11,r12,r13,r21,r22,r23,r31,r32,r33\n0,0,0.1,1,0,0,0,1,0,0,0,1\n"
    );

    let out = run(
        &["fk", "--geometry", p(&g), "--strategy", "avoid_straight"],
        b"rho_re,rho_im\n0.01,0\n0,0\n",
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = geometry(&dir, "g3.json", r#"{"n": 3, "d": 0.01, "l": 0.1}"#);
    let bad = geometry(
        &dir,
        "bad.json",
        r#"{"n": 3, "d": 0.01, "l": 0.1, "psi": [0, 1, 2]}"#,
    );
    let fwd = ["transform", "--geometry", p(&g), "--direction", "forward"];

    assert_eq!(
        run(&fwd, b"rho_1,rho_2,rho_3\n1,x,0\n").status.code(),
        Some(3)
    );
    assert_eq!(run(&fwd, b"rho_1,rho_2\n1,0\n").status.code(), Some(2));
    assert_eq!(
        run(
            &["transform", "--geometry", p(&bad), "--direction", "forward"],
            b""
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"], b"").status.code(), Some(2));
    assert_eq!(run(&["check", "--n-max", "2"], b"").status.code(), Some(2));
    assert_eq!(
        run(
            &[
                "convert",
                "--geometry",
                p(&g),
                "--scheme",
                "allen4",
                "--from",
                "clarke"
            ],
            b""
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"], b"").status.code(), Some(0));

    let strict = Command::new(BIN)
        .args(["check", "--n-max", "5"])
        .env("CLARKE_KIN_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
    let loose = Command::new(BIN)
        .args(["check", "--n-max", "5"])
        .env("CLARKE_KIN_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
}

#[test]
fn sample_is_reproducible_and_in_joint_space() {
    let dir = TempDir::new().unwrap();
    let g = geometry(&dir, "g6.json", r#"{"n": 6, "d": 0.01, "l": 0.1}"#);
    let args = [
        "sample",
        "--geometry",
        p(&g),
        "--phi-max",
        "1.5",
        "--count",
        "50",
        "--seed",
        "9",
    ];
    let a = run(&args, b"");
    let b = run(&args, b"");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    for row in parse_rows(&a.stdout) {
        let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(row.iter().sum::<f64>().abs() <= 1e-14 * scale.max(1e-300));
    }
    let other = run(
        &[
            "sample",
            "--geometry",
            p(&g),
            "--phi-max",
            "1.5",
            "--count",
            "50",
            "--seed",
            "10",
        ],
        b"",
    );
    assert_ne!(a.stdout, other.stdout);
}

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn cremona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn matrix_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn invert_classic_quadratic() {
    let f = matrix_file("0 1 1\n1 0 1\n1 1 0\n");
    let o = cremona(&["invert", "--matrix", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# d' = 2"), "{out}");
    // The report is itself a valid matrix document.
    assert_eq!(
        cremona::io::parse_matrix(&out).unwrap(),
        cremona::IntMatrix::from_rows(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]).unwrap()
    );
}

#[test]
fn invert_not_birational_exits_3() {
    let f = matrix_file("2 0 0\n0 2 0\n0 0 2\n");
    let o = cremona(&["invert", "--matrix", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not birational"));
}

#[test]
fn invalid_input_exits_2() {
    let ragged = matrix_file("1 2\n3\n");
    let o = cremona(&["check", "--matrix", ragged.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let unequal = matrix_file("1 0 0\n0 1 0\n0 1 1\n");
    let o = cremona(&["check", "--matrix", unequal.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stochastic = no"));

    let o = cremona(&["check", "--matrix", "/nonexistent/matrix.txt"]);
    assert_eq!(o.status.code(), Some(2));

    let o = cremona(&["family", "--family", "cubic", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = cremona(&["enumerate", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_limits_exit_4() {
    let o = cremona(&["enumerate", "--n", "8", "--d", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn check_reports_reduction() {
    let f = matrix_file("2 1 1\n0 1 0\n0 0 1\n");
    let o = cremona(&["check", "--matrix", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# degree = 1"), "{out}");
    assert!(out.contains("# notice = input columns sum to 2"), "{out}");
    assert!(out.contains("# birational = yes"), "{out}");

    let squares = matrix_file("2 0 0\n0 2 0\n0 0 2\n");
    let out = stdout(&cremona(&["check", "--matrix", squares.path().to_str().unwrap()]));
    assert!(out.contains("# lattice_det = 4"), "{out}");
    assert!(out.contains("# birational = no"), "{out}");
}

#[test]
fn gln_example() {
    let f = matrix_file("1 24\n1 25\n");
    let o = cremona(&["gln", "--matrix", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# d(g) = 49\n# d(g^-1) = 49\n"), "{out}");
    assert!(out.contains("49\t47\t0\n0\t1\t24\n0\t1\t25\n"), "{out}");

    let singular = matrix_file("2 0\n0 1\n");
    let o = cremona(&["gln", "--matrix", singular.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn transpose_flag() {
    // Row-oriented version of the triangular cubic on P^2.
    let rows = matrix_file("3 0 0\n2 1 0\n0 2 1\n");
    let cols = matrix_file("3 2 0\n0 1 2\n0 0 1\n");
    let a = cremona(&["invert", "--transpose", "--matrix", rows.path().to_str().unwrap()]);
    let b = cremona(&["invert", "--matrix", cols.path().to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn json_matrix_input() {
    let f = matrix_file(r#"{"matrix": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}"#);
    let o = cremona(&["invert", "--format", "json", "--matrix", f.path().to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d_prime"], 2);
    assert_eq!(v["inverse"], serde_json::json!([[0, 1, 1], [1, 0, 1], [1, 1, 0]]));
}

#[test]
fn enumerate_p3_quintics_tsv() {
    let out = stdout(&cremona(&["enumerate", "--n", "3", "--d", "5", "--format", "tsv"]));
    let rows: Vec<(i64, u64)> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 19);
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 11_496);
    assert!(out.contains("# gaps\t18\n"));
}

#[test]
fn enumerate_is_identical_across_jobs() {
    let one = stdout(&cremona(&["enumerate", "--n", "3", "--d", "4", "--jobs", "1"]));
    let three = stdout(&cremona(&["enumerate", "--n", "3", "--d", "4", "--jobs", "3"]));
    assert_eq!(one, three);
    let json1 = stdout(&cremona(&["enumerate", "--n", "3", "--d", "4", "--jobs", "1", "--format", "json"]));
    let json4 = stdout(&cremona(&["enumerate", "--n", "3", "--d", "4", "--jobs", "4", "--format", "json"]));
    assert_eq!(json1, json4);
}

#[test]
fn tsv_and_json_agree() {
    let tsv = stdout(&cremona(&["enumerate", "--n", "4", "--d", "3"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&cremona(&["enumerate", "--n", "4", "--d", "3", "--format", "json"]))).unwrap();
    let from_tsv: Vec<(i64, u64)> = tsv
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let from_json: Vec<(i64, u64)> = json["histogram"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["d_prime"].as_i64().unwrap(), r["count"].as_u64().unwrap()))
        .collect();
    assert_eq!(from_tsv, from_json);
    assert_eq!(json["surviving"], 48_042);
    assert_eq!(json["gaps"], serde_json::json!([12, 14]));
    assert!(tsv.contains("# total\t48042\n"));
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--n", "3", "--steps", "2000", "--seed", "9", "--dmax", "20"];
    let a = stdout(&cremona(&args));
    let b = stdout(&cremona(&args));
    assert_eq!(a, b);
    let total: u64 = a
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').nth(2).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 2000);
    for line in a.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<i64> = line.split('\t').map(|x| x.parse().unwrap()).collect();
        assert!(f[0] <= 20 && f[1] <= 20, "{line}");
    }
    let c = stdout(&cremona(&["sample", "--n", "3", "--steps", "2000", "--seed", "10", "--dmax", "20"]));
    assert_ne!(a, c);

    let o = cremona(&["sample", "--n", "3", "--dmax", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_reports() {
    let out = stdout(&cremona(&["family", "--family", "triangular", "--n", "3", "--d", "5"]));
    assert!(out.contains("# predicted d' = 21\n# d' = 21\n"), "{out}");
    assert!(out.contains("5\t4\t0\t0\n"), "{out}");

    let out = stdout(&cremona(&["family", "--family", "chain-loop", "--n", "4"]));
    assert!(out.contains("# predicted d' = 4"), "{out}");

    let o = cremona(&["family", "--family", "classic-quadratic", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(["check", "--matrix", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 1 1\n1 0 1\n1 1 0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# birational = yes"));
}

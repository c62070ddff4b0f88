use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use deltaspec::PointMeasure;
use deltaspec_cli::problem::{Domain, ProblemFile};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deltaspec"))
}

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Data rows of a CSV as numbers, header dropped.
fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn well(n: u32) -> String {
    format!(
        r#"{{"measure": {{"density": [{{"start": -1, "end": 1, "value": -1}}]}}, "discretization": {{"K": 1, "N": {n}}}}}"#
    )
}

#[test]
fn solve_square_well_row() {
    let csv = stdout(&run(&[
        "solve",
        "-i",
        p(&problems().join("square_well.json")),
    ]));
    assert!(csv.starts_with("n,lambda,bracket_lo,bracket_hi,residual,runtime_ms\n"));
    let r = rows(&csv);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][0], 5.0);
    assert!((r[0][1] - -0.457002447176188).abs() < 1e-9);
    assert!(r[0][2] <= r[0][1] && r[0][1] <= r[0][3]);
}

#[test]
fn solve_cantor_level() {
    let r = rows(&stdout(&run(&[
        "solve",
        "-i",
        p(&problems().join("cantor.json")),
    ])));
    assert!((r[0][1] - -0.182601523317952).abs() < 1e-9);
}

#[test]
fn solve_halfline() {
    let r = rows(&stdout(&run(&[
        "solve",
        "-i",
        p(&problems().join("robin.json")),
    ])));
    assert_eq!(r.len(), 1);
    assert!(r[0][1] < -1.0);
}

#[test]
fn discretize_examples() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "n1.json", &well(1));
    assert_eq!(
        stdout(&run(&["discretize", "-i", p(&f)])),
        "x,weight\n0,-1.00000000000000\n1.00000000000000,-1.00000000000000\n"
    );
    let cantor = stdout(&run(&[
        "discretize",
        "-i",
        p(&problems().join("cantor.json")),
    ]));
    let r = rows(&cantor);
    let expected = [1.0 / 18.0, 5.0 / 18.0, 13.0 / 18.0, 17.0 / 18.0];
    assert_eq!(r.len(), 4);
    for (row, x) in r.iter().zip(expected) {
        assert!((row[0] - x).abs() < 1e-14 && row[1] == -0.25);
    }
    let empty = write(&dir, "empty.json", r#"{"measure": {}}"#);
    assert_eq!(stdout(&run(&["discretize", "-i", p(&empty)])), "x,weight\n");
}

#[test]
fn round_trip_through_atoms() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "well.json", &well(7));
    let atoms_csv = stdout(&run(&["discretize", "-i", p(&f)]));
    let atoms =
        PointMeasure::from_pairs(rows(&atoms_csv).into_iter().map(|r| (r[0], r[1]))).unwrap();
    let again = ProblemFile::atoms_only(Domain::Line, None, &atoms);
    let g = write(&dir, "atoms.json", &serde_json::to_string(&again).unwrap());
    let a = rows(&stdout(&run(&["solve", "-i", p(&f)])));
    let b = rows(&stdout(&run(&["solve", "-i", p(&g)])));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x[1] - y[1]).abs() <= 1e-12, "{} vs {}", x[1], y[1]);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = problems().join("square_well.json");
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "4", "0"].iter().enumerate() {
        let out = dir.path().join(format!("out{i}.csv"));
        let status = bin()
            .args(["solve", "-i", p(&input), "-o", p(&out), "--no-timing"])
            .env("DELTASPEC_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert!(!outputs[0].contains(&b'\r'));
    assert_eq!(*outputs[0].last().unwrap(), b'\n');
}

#[test]
fn reproduce_rows() {
    let csv = stdout(&run(&["reproduce", "square-well", "--n", "1,2,5,100"]));
    let expected = [
        -0.545877203227244,
        -0.474617739449437,
        -0.457002447176188,
        -0.453761247723386,
    ];
    let r = rows(&csv);
    assert_eq!(
        r.iter().map(|r| r[0]).collect::<Vec<_>>(),
        vec![1.0, 2.0, 5.0, 100.0]
    );
    for (row, e) in r.iter().zip(expected) {
        assert!(
            (row[1] - e).abs() < 1e-9,
            "N = {}: {} vs {e}",
            row[0],
            row[1]
        );
    }
    let cantor = rows(&stdout(&run(&["reproduce", "cantor", "-n", "1,3"])));
    assert!((cantor[0][1] - -0.25).abs() < 1e-9);
    assert!((cantor[1][1] - -0.182601523317952).abs() < 1e-9);
}

#[test]
fn certify_square_well() {
    let dir = TempDir::new().unwrap();
    let target = write(&dir, "target.json", &well(100));
    let out = dir.path().join("cert.json");
    let o = run(&["certify", "-i", p(&target), "-a", p(&target), "-o", p(&out)]);
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in ["M", "c", "s", "delta", "windows", "caveats"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let w = &v["windows"][0];
    let (lo, hi) = (w["lo"].as_f64().unwrap(), w["hi"].as_f64().unwrap());
    assert!(lo <= -0.453753165860328 && -0.453753165860328 <= hi);
    assert!(w["isolation_lo"].as_f64().unwrap() <= lo);
    assert!(v["s"].as_f64().unwrap() < 1.0);
}

#[test]
fn certify_identical_atoms_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "atoms.json",
        r#"{"measure": {"atoms": [{"x": 0, "weight": -1}]}}"#,
    );
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["certify", "-i", p(&f), "-a", p(&f)]))).unwrap();
    assert_eq!(v["s"].as_f64().unwrap(), 0.0);
    let w = &v["windows"][0];
    assert_eq!(w["lo"], w["hi"]);
    assert!((w["E"].as_f64().unwrap() + 0.25).abs() < 1e-12);
}

#[test]
fn exit_code_validation() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("never.csv");
    let cases = [
        "not json",
        r#"{"measure": {}, "bogus": 1}"#,
        r#"{"measure": {"density": [{"start": -1, "end": 1, "value": -1}]}}"#,
        r#"{"domain": "halfline", "measure": {}}"#,
        r#"{"domain": "line", "boundary_alpha": 1, "measure": {}}"#,
        r#"{"measure": {"atoms": [{"x": 0, "weight": -1}]}, "solver": {"tol": 0, "grid_points": 10}}"#,
        r#"{"measure": {"density": [{"start": -3, "end": 1, "value": -1}]}, "discretization": {"K": 1, "N": 2}}"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let f = write(&dir, &format!("bad{i}.json"), text);
        let o = run(&["solve", "-i", p(&f), "-o", p(&out)]);
        assert_eq!(
            o.status.code(),
            Some(2),
            "case {i}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!out.exists(), "case {i} wrote output");
        assert_eq!(
            String::from_utf8_lossy(&o.stderr).lines().count(),
            1,
            "case {i}"
        );
    }
    assert_eq!(
        run(&["solve", "-i", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["reproduce", "square-well", "--n", "100000"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn exit_code_certify_classes() {
    let dir = TempDir::new().unwrap();
    let line = write(
        &dir,
        "line.json",
        r#"{"measure": {"atoms": [{"x": 1, "weight": -1}]}}"#,
    );
    let half = write(
        &dir,
        "half.json",
        r#"{"domain": "halfline", "boundary_alpha": 0.5, "measure": {"atoms": [{"x": 1, "weight": -1}]}}"#,
    );
    assert_eq!(
        run(&["certify", "-i", p(&line), "-a", p(&half)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["certify", "-i", p(&half), "-a", p(&half)])
            .status
            .code(),
        Some(2)
    );
    // a single δ against nothing has s = 4
    let empty = write(&dir, "empty.json", r#"{"measure": {}}"#);
    let o = run(&["certify", "-i", p(&empty), "-a", p(&line)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("s < 1"));
}

#[test]
fn version_flag() {
    let o = run(&["--version"]);
    assert!(stdout(&o).starts_with("deltaspec "));
}

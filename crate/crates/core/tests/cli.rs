use std::path::Path;
use std::process::{Command, Output};

use epshull::io::{read_lower_bound_meta, read_points, read_rows, sidecar_path};
use epshull::Point64;

fn epshull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epshull"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_square_grid_writes_unit_square_corners() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("grid.txt");
    let out = epshull(&["gen", "--kind", "square_grid", "--n", "4", "--output", path_str(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let pts: Vec<Point64> = read_points(&file).unwrap();
    let mut got: Vec<(f64, f64)> = pts.iter().map(|p| (p.x(), p.y())).collect();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(got, vec![(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]);
}

#[test]
fn gen_is_reproducible_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for f in [&a, &b] {
        let out = epshull(&["gen", "--kind", "disk", "--n", "200", "--seed", "7", "--output", path_str(f)]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn gen_lower_bound_writes_stream_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lb.txt");
    let out = epshull(&[
        "gen", "--kind", "lower_bound_3d", "--f", "const:1", "--r", "2", "--output", path_str(&file),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let pts: Vec<Point64> = read_points(&file).unwrap();
    assert_eq!(pts.len(), 34);
    assert!(pts.iter().all(|p| p.dim() == 3));
    let meta = read_lower_bound_meta(sidecar_path(&file)).unwrap();
    assert_eq!(meta.layer_boundaries, vec![0, 4, 14]);

    let missing = epshull(&["gen", "--kind", "lower_bound_3d"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn run_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("disk.txt");
    let subset = dir.path().join("s.txt");
    let results = dir.path().join("r.csv");
    assert_eq!(code(&epshull(&["gen", "--kind", "disk", "--n", "500", "--output", path_str(&input)])), 0);
    for algo in ["roa", "multipass"] {
        let out = epshull(&[
            "run", "--algo", algo, "--input", path_str(&input), "--eps", "0.05", "--output",
            path_str(&subset), "--results", path_str(&results),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let v = epshull(&["validate", "--input", path_str(&input), "--subset", path_str(&subset), "--eps", "0.05"]);
        assert_eq!(code(&v), 0);
    }
    let rows = read_rows(&results).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].algo, "roa");
    assert_eq!(rows[1].algo, "multipass");

    // A single point of a disk is not a 0.05-hull.
    let lone = dir.path().join("lone.txt");
    std::fs::write(&lone, "0 0\n").unwrap();
    let v = epshull(&["validate", "--input", path_str(&input), "--subset", path_str(&lone), "--eps", "0.05"]);
    assert_eq!(code(&v), 1);
}

#[test]
fn run_epsdelta_validates_with_delta() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ngon.txt");
    let subset = dir.path().join("s.txt");
    let gen = epshull(&["gen", "--kind", "ngon_boundary", "--k", "6", "--n", "300", "--output", path_str(&input)]);
    assert_eq!(code(&gen), 0);
    let out = epshull(&[
        "run", "--algo", "epsdelta", "--input", path_str(&input), "--eps", "0", "--k", "6", "--output",
        path_str(&subset),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = epshull(&[
        "validate", "--input", path_str(&input), "--subset", path_str(&subset), "--eps", "0", "--delta", "0.2",
        "--samples", "20000",
    ]);
    assert_eq!(code(&v), 0);
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(code(&epshull(&["bench", "--suite", "nonsense"])), 2);
    assert_eq!(code(&epshull(&["frobnicate"])), 2);
    let out = epshull(&["run", "--algo", "roa", "--input", "/nonexistent/points.txt", "--eps", "0.1"]);
    assert_eq!(code(&out), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2\nthree 4\n").unwrap();
    let out = epshull(&["run", "--algo", "roa", "--input", path_str(&bad), "--eps", "0.1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bench_writes_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = epshull(&["bench", "--suite", "multipass_bounds", "--trials", "4", "--output", path_str(&csv)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_rows(&csv).unwrap();
    assert!(rows.len() >= 4);
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cloudqc(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cloudqc")).args(args).env("CLOUDQC_OUT", out).output().expect("binary runs")
}

fn ok(args: &[&str], out: &Path) -> String {
    let o = cloudqc(args, out);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn csv_rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path).unwrap().records().map(|r| r.unwrap()).collect()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn rabi_ideal_has_27_rows_on_the_cosine_curve() {
    let dir = TempDir::new().unwrap();
    ok(&["rabi", "--shots", "8192", "--seed", "7", "--ideal"], dir.path());
    let rows = csv_rows(&dir.path().join("rabi.csv"));
    assert_eq!(rows.len(), 27);
    for r in &rows {
        let n: f64 = r[0].parse().unwrap();
        let ideal: f64 = r[5].parse().unwrap();
        assert!((ideal - (n * std::f64::consts::PI / 8.0).cos().powi(2)).abs() < 1e-9);
    }
}

#[test]
fn zero_noise_equals_ideal() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    ok(&["rabi", "--shots", "500", "--seed", "3", "--ideal"], a.path());
    ok(&["rabi", "--shots", "500", "--seed", "3", "--noise", "p1=0,p2=0,ro=0"], b.path());
    for f in ["rabi.csv", "rabi.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let args = ["adder", "--preset", "entangled", "--shots", "300", "--seed", "11", "--noise", "p1=0.01,p2=0.05,ro=0.02"];
    ok(&args, a.path());
    ok(&args, b.path());
    for f in ["adder.csv", "adder.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn adder_one_plus_two() {
    let dir = TempDir::new().unwrap();
    ok(&["adder", "--a", "1", "--b", "2", "--ideal", "--shots", "256", "--seed", "1", "--format", "csv"], dir.path());
    let rows = csv_rows(&dir.path().join("adder.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][1], "0111");
    assert_eq!(rows[0][3].parse::<f64>().unwrap(), 1.0);
    assert_eq!(&rows[0][5], "true");
    assert!(!dir.path().join("adder.json").exists());
}

#[test]
fn graph_star_orbit_has_15_rows() {
    let dir = TempDir::new().unwrap();
    ok(&["graph", "--preset", "star-orbit", "--ideal", "--shots", "128", "--seed", "2"], dir.path());
    let rows = csv_rows(&dir.path().join("graph.csv"));
    assert_eq!(rows.len(), 15);
    for r in rows {
        let (p, e): (f64, f64) = (r[3].parse().unwrap(), r[5].parse().unwrap());
        assert_eq!(p.abs(), 1.0);
        assert_eq!(p.signum(), e.signum());
    }
}

#[test]
fn graph_from_file() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("tri.txt");
    fs::write(&g, "3\n1 2\n2 3\n").unwrap();
    let stdout = ok(&["graph", "--graph", g.to_str().unwrap(), "--steps", "2", "--ideal", "--shots", "64", "--seed", "2"], dir.path());
    assert!(stdout.contains("step 1"));
}

#[test]
fn dett_static_tdg_is_three_quarters() {
    let dir = TempDir::new().unwrap();
    ok(&["dett", "--g", "T", "--invert", "static_tdg", "--ideal", "--shots", "8192", "--seed", "5"], dir.path());
    let report = json(&dir.path().join("dett.json"));
    let (p, se) = (report["success"].as_f64().unwrap(), report["se"].as_f64().unwrap());
    assert!((p - 0.75).abs() < 4.0 * se, "{p}");
    ok(&["dett", "--g", "Tdg", "--invert", "frame_aware", "--ideal", "--shots", "1000", "--seed", "5"], dir.path());
    assert_eq!(json(&dir.path().join("dett.json"))["success"].as_f64(), Some(1.0));
}

#[test]
fn route_writes_verified_outputs() {
    let dir = TempDir::new().unwrap();
    let c = dir.path().join("bell.txt");
    fs::write(&c, "# bell pair on leaves\nH 1\nCNOT 1 2\nMEASURE 1 Z\nMEASURE 2 Z\n").unwrap();
    ok(&["route", c.to_str().unwrap(), "--out", dir.path().join("r").to_str().unwrap()], dir.path());
    let verdict = json(&dir.path().join("r/bell.verify.json"));
    assert_eq!(verdict["equivalent"], true);
    assert!(dir.path().join("r/bell.routed.txt").exists());
    assert!(dir.path().join("r/bell.permutation.json").exists());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    // missing --seed
    let o = cloudqc(&["rabi", "--ideal"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--seed"));
    assert_eq!(cloudqc(&["rabi", "--seed", "1", "--shots", "0"], dir.path()).status.code(), Some(1));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "H 1\nFOO 2\n").unwrap();
    let o = cloudqc(&["route", bad.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let g = dir.path().join("g.txt");
    fs::write(&g, "3\n1 9\n").unwrap();
    let o = cloudqc(&["graph", "--graph", g.to_str().unwrap(), "--steps", "1", "--seed", "1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

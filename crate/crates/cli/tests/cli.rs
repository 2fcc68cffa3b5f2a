use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn rectspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rectspec"))
        .args(args)
        .env("RECTSPEC_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn spectrum_circle_passes_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = rectspec(&["spectrum", "builtin:circle", "--grid", "64", "--out", out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("spectrum-circle.json")).unwrap())
            .unwrap();
    assert!((report["measure"].as_f64().unwrap() - 1.0).abs() < 0.02);
    assert_eq!(report["run"]["grid"], 64);
    let csv = fs::read_to_string(dir.path().join("spectrum-circle.csv")).unwrap();
    assert!(csv.starts_with("r,witnessed,residual\n"));
    assert_eq!(
        csv.lines().count(),
        1 + report["samples"].as_u64().unwrap() as usize
    );
}

#[test]
fn spectrum_is_byte_identical_across_runs() {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&d1, &d2] {
        let o = rectspec(&[
            "spectrum",
            "builtin:ellipse-2-1",
            "--grid",
            "32",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    for f in ["spectrum-ellipse-2-1.json", "spectrum-ellipse-2-1.csv"] {
        assert_eq!(
            fs::read(d1.path().join(f)).unwrap(),
            fs::read(d2.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn spectrum_reads_json_and_csv_curves() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("egg.json");
    fs::write(
        &json,
        r#"{"type":"fourier","K":2,"coeffs":[[0,0],[0,0],[0,0],[1,0],[0.1,0]]}"#,
    )
    .unwrap();
    let o = rectspec(&["spectrum", json.to_str().unwrap(), "--grid", "32"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("egg: measure"));
    let csv = dir.path().join("oval.csv");
    let rows: String = (0..128)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / 128.0;
            format!("{},{}\n", 3.0 * t.cos(), t.sin())
        })
        .collect();
    fs::write(&csv, format!("re,im\n{rows}")).unwrap();
    assert_eq!(
        code(&rectspec(&[
            "spectrum",
            csv.to_str().unwrap(),
            "--grid",
            "32"
        ])),
        0
    );
}

#[test]
fn spectrum_rejects_bad_curves() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    let o = rectspec(&["spectrum", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed curve JSON"));
    // a figure eight is not a Jordan curve
    let eight = dir.path().join("eight.json");
    fs::write(
        &eight,
        r#"{"type":"fourier","K":2,"coeffs":[[0,0],[0,0],[0,0],[0,-0.5],[0,0.5]]}"#,
    )
    .unwrap();
    assert_eq!(code(&rectspec(&["spectrum", eight.to_str().unwrap()])), 2);
    assert_eq!(code(&rectspec(&["spectrum", "builtin:nothing"])), 2);
}

#[test]
fn impossible_tolerance_is_flagged_as_a_bound_violation() {
    let o = rectspec(&[
        "spectrum",
        "builtin:circle",
        "--grid",
        "32",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("pipeline bug"));
}

#[test]
fn rects_on_the_circle() {
    let o = rectspec(&["rects", "builtin:circle", "--ratio", "1"]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let o = rectspec(&[
        "rects",
        "builtin:circle",
        "--ratio",
        "0.5774",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let dump: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("rects-circle.json")).unwrap())
            .unwrap();
    let ws = dump["witnesses"].as_array().unwrap();
    assert!(!ws.is_empty());
    for w in ws {
        let v: Vec<(f64, f64)> = w["vertices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
            .collect();
        assert!(v.iter().all(|(x, y)| (x.hypot(*y) - 1.0).abs() < 1e-9));
        let (s1, s2) = (
            (v[1].0 - v[0].0).hypot(v[1].1 - v[0].1),
            (v[2].0 - v[1].0).hypot(v[2].1 - v[1].1),
        );
        assert!((s1.min(s2) / s1.max(s2) - 0.5774).abs() < 1e-6);
    }
    assert_eq!(
        code(&rectspec(&["rects", "builtin:circle", "--r", "0.5"])),
        0
    );
}

#[test]
fn rects_usage_and_unwitnessed() {
    assert_eq!(
        code(&rectspec(&["rects", "builtin:circle", "--ratio", "1.5"])),
        2
    );
    assert_eq!(code(&rectspec(&["rects", "builtin:circle"])), 2);
    let o = rectspec(&["rects", "builtin:circle", "--r", "0.5", "--tol", "1e-300"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("unwitnessed"));
}

#[test]
fn order_of_domes() {
    let o = rectspec(&["order", "builtin:dome-1", "builtin:dome-2-rot-half"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("A ≺ B\nconsistent"));
    let o = rectspec(&["order", "builtin:dome-2-rot-half", "builtin:dome-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("B ≺ A\nconsistent"));
    assert_eq!(
        code(&rectspec(&["order", "builtin:dome-1", "builtin:dome-1"])),
        4
    );
}

#[test]
fn order_reads_mesh_files() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = rectspec_core::suites::dome_mesh(3.0, 2.0).unwrap();
    let path = dir.path().join("tall.json");
    fs::write(&path, mesh.to_json()).unwrap();
    let o = rectspec(&["order", "builtin:dome-1", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("A ≺ B"));
}

#[test]
fn curve_strip_against_itself_is_not_disjoint() {
    assert_eq!(
        code(&rectspec(&[
            "order",
            "builtin:circle",
            "builtin:circle",
            "--resolution",
            "16"
        ])),
        4
    );
}

#[test]
fn verify_suites() {
    let o = rectspec(&["verify", "cycles", "--seed", "42"]);
    assert_eq!(code(&o), 0);
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (s["pass"].as_bool(), s["cases"].as_u64()),
        (Some(true), Some(50))
    );
    let o = rectspec(&["verify", "kemperman", "--seed", "1"]);
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((code(&o), s["passed"].as_u64()), (0, Some(1000)));
    for suite in ["antisymmetry", "triples", "parity-invariance"] {
        assert_eq!(code(&rectspec(&["verify", suite])), 0, "{suite}");
    }
    assert_eq!(code(&rectspec(&["verify", "nonsense"])), 2);
}

#[test]
fn verify_reports_the_first_failure() {
    let o = rectspec(&[
        "verify",
        "spectrum-corpus",
        "--grid",
        "32",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(code(&o), 1);
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["pass"], false);
    assert_eq!(s["first_failure"]["curve"], "circle");
}

#[test]
fn kemperman_algebra() {
    let o = rectspec(&["kemperman", "0:0.2", "0.5:0.6"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["measure"].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert_eq!(v["kemperman"]["holds"], true);
    let o = rectspec(&["kemperman", "0:0.2", "0.1:0.3", "--op", "intersection"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["measure"].as_f64().unwrap() - 0.1).abs() < 1e-12);
    assert_eq!(code(&rectspec(&["kemperman", "0:0.2", "oops"])), 1);
}

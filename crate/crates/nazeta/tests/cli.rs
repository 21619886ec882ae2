use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nazeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nazeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn zeta_rank2_at_two() {
    let o = nazeta(&["zeta", "rank2", "--s", "2.0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().trim_end_matches("+0i").parse().unwrap();
    assert!((v - 0.0140056).abs() < 1e-6, "{v}");
}

#[test]
fn h0_of_standard_rank_one() {
    let dir = tempfile::tempdir().unwrap();
    let lat = write(dir.path(), "lat.json", r#"{"rank": 1, "basis": [["1"]]}"#);
    let o = nazeta(&["lattice", "h0", "--in", &lat]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.0829015).abs() < 1e-7, "{v}");
}

#[test]
fn verify_is_deterministic_without_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = nazeta(&["verify", "--suite", "tannaka", "--no-timestamp", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        fs::read(path).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["suite"], "tannaka");
    assert!(report.get("timestamp").is_none());
    for c in report["checks"].as_array().unwrap() {
        for key in ["check", "lhs", "rhs", "abs_err", "tol", "pass", "notes"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
    let o = nazeta(&["verify", "--suite", "rank1-zeta"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["timestamp"].is_u64());
}

#[test]
fn exit_codes() {
    assert_eq!(nazeta(&["--help"]).status.code(), Some(0));
    assert_eq!(nazeta(&["bogus"]).status.code(), Some(2));
    assert_eq!(nazeta(&["zeta", "rank2"]).status.code(), Some(2));
    assert_eq!(nazeta(&["zeta", "rank2", "--s", "1+"]).status.code(), Some(2));
    let pole = nazeta(&["zeta", "rank2", "--s", "1"]);
    assert_eq!(pole.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&pole.stderr).contains("pole"));
    assert_eq!(nazeta(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(nazeta(&["lattice", "h0", "--in", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn config_file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.toml", "# tolerances\nabs_tol = 1e-10\n");
    assert_eq!(nazeta(&["--config", &good, "zeta", "rank1", "--s", "2"]).status.code(), Some(0));
    let bad = write(dir.path(), "bad.toml", "abs_tol = 1e-10\nquadrature_order 12\n");
    let o = nazeta(&["--config", &bad, "zeta", "rank1", "--s", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn tannaka_tensor_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let sigma21 = r#"{"rank": 2, "degrees": [-1, -1],
        "weights": {"inf": ["1/3", "2/3"], "one": ["0", "1/2"], "zero": ["0", "1/2"]}}"#;
    let a = write(dir.path(), "a.json", sigma21);
    let o = nazeta(&["tannaka", "tensor", "--a", &a, "--b", &a]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 4);
}

#[test]
fn eis2_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let o = nazeta(&["eis2", "grid", "--s", "2,1.5+2i", "--t", "1,2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = nazeta::formats::read_grid(fs::File::open(out).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!((rows[0].value_re - 0.0140056).abs() < 1e-6);
}

#[test]
fn eis3_report_has_requested_sections() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("eis3.json");
    let point = write(dir.path(), "y.json", r#"{"y1": 1.2, "y2": 0.9, "x1": 0.1, "x2": -0.2, "x3": 0.3}"#);
    let o = nazeta(&[
        "eis3",
        "--s",
        "3",
        "--t",
        "2",
        "--height",
        "6",
        "--point",
        &point,
        "--fe",
        "--constant-terms",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["functional_equations"]["entries"].as_array().unwrap().len(), 5);
    for p in ["P0", "P1", "P2"] {
        assert!(v["constant_terms"][p]["weyl_rel_dev"].is_f64());
    }
    let outside = nazeta(&["eis3", "--s", "0.5", "--t", "2"]);
    assert_eq!(outside.status.code(), Some(2));
}

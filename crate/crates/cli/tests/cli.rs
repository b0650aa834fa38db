use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ncgabor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgabor")).args(args).output().expect("spawn ncgabor")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_signal(dir: &Path, name: &str, group: &str, values: &[[f64; 2]]) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::json!({ "group": group, "values": values }).to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn verify_passes_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = ncgabor(&["verify", "--group", "D", "--n", "4", "--seed", "3", "--out", path(out)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ra, rb) = (fs::read(a.join("verify.json")).unwrap(), fs::read(b.join("verify.json")).unwrap());
    assert_eq!(ra, rb);
    let report: Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["rng"].as_str().unwrap().contains("ChaCha8"));
}

#[test]
fn gabor_then_reconstruct_round_trips() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let signal = write_signal(d, "f.json", "Z4", &[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]);
    let window = write_signal(d, "psi.json", "Z4", &[[1.0, 0.0]; 4]);
    let out = d.join("g");
    let o = ncgabor(&["gabor", "--group", "Z4", "--signal", &signal, "--window", &window, "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("spectrogram.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x_index,x_label,irrep_label,hs_norm_sq");
    assert_eq!(csv.lines().count(), 1 + 16);
    assert_eq!(read(&out.join("gabor.json"))["pass"], true);

    let back = d.join("r");
    let field = out.join("field.json");
    let o = ncgabor(&["reconstruct", "--field", path(&field), "--window", &window, "--signal", &signal, "--out", path(&back)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read(&back.join("reconstruct.json"));
    assert!(r["details"]["max_error"].as_f64().unwrap() <= 1e-9);
    let values = read(&back.join("reconstructed.json"))["values"].clone();
    assert!((values[0][0].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn unknown_group_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = ncgabor(&["verify", "--group", "S5", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).expect("stderr is a JSON record");
    assert_eq!(err["kind"], "usage", "{err}");
}

#[test]
fn unmet_tolerance_exits_one_and_names_the_failure() {
    let dir = TempDir::new().unwrap();
    let o = ncgabor(&["heisenberg", "--rungs", "1", "--tol", "1e-6", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    let r = read(&dir.path().join("heisenberg.json"));
    assert_eq!(r["pass"], false);
    let failures: Vec<&str> = r["failures"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(failures.iter().any(|f| f.contains("defect")), "{failures:?}");
}

#[test]
fn sl2_study_writes_density_table() {
    let dir = TempDir::new().unwrap();
    let o = ncgabor(&["sl2", "--t-count", "5", "--out", path(dir.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("density.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5);
    assert_eq!(read(&dir.path().join("sl2.json"))["pass"], true);
}

#[test]
fn catalog_lists_every_group() {
    let o = ncgabor(&["catalog"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    for g in ["Z2", "Z12", "D6", "H3", "Q8"] {
        assert!(text.contains(g), "{g} missing from {text}");
    }
}

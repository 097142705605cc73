use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hecke(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn cell_count(args: &[&str]) -> usize {
    let dir = tempfile::tempdir().unwrap();
    let o = hecke(args, dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    json(&dir.path().join("cells.json"))["cells"].as_array().unwrap().len()
}

#[test]
fn cell_counts() {
    assert_eq!(cell_count(&["cells", "--type", "A1", "--n", "1", "--J", "full", "--Jp", "full"]), 2);
    assert_eq!(cell_count(&["cells", "--type", "A1", "--n", "2", "--J", "full", "--Jp", "full"]), 3);
    assert_eq!(cell_count(&["cells", "--type", "A2", "--n", "1", "--J", "empty", "--Jp", "empty"]), 6);
}

#[test]
fn cells_json_carries_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = hecke(&["cells", "--type", "A2", "--eps", "flip", "--seed", "7"], dir.path());
    assert!(o.status.success());
    let v = json(&dir.path().join("cells.json"));
    assert_eq!(v["config"]["eps"], serde_json::json!([2, 1]));
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["d0"], 7);
    assert!(dir.path().join("cells.txt").exists());
}

#[test]
fn kl_rank_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hecke(&["kl", "--type", "A1", "--n", "1"], dir.path()).status.success());
    let mut rdr = csv::Reader::from_path(dir.path().join("kl.csv")).unwrap();
    let rows: Vec<Vec<String>> = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    assert!(rows.contains(&vec!["(0)".into(), "1".into(), "s1".into(), "v^-1".into()]));
    assert_eq!(rows.len(), 3);
}

#[test]
fn kl_trivial_stabilizer_has_only_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hecke(&["kl", "--type", "A1", "--n", "2", "--lambda", "(1/2)"], dir.path()).status.success());
    let mut rdr = csv::Reader::from_path(dir.path().join("kl.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][1], &rows[0][2]);
}

#[test]
fn kl_rejects_bad_character() {
    let dir = tempfile::tempdir().unwrap();
    let o = hecke(&["kl", "--type", "A1", "--n", "2", "--lambda", "(1/3)"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "cosets", "--type", "B2", "--n", "2"][..],
        &["verify", "duality", "--type", "A1", "--n", "1"][..],
        &["verify", "facets", "--type", "A2", "--eps", "flip"][..],
    ] {
        let dir = tempfile::tempdir().unwrap();
        let o = hecke(args, dir.path());
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json(&dir.path().join("verify.json"));
        assert_eq!(v["reports"][0]["pass"], true);
    }
    let dir = tempfile::tempdir().unwrap();
    hecke(&["verify", "facets", "--type", "A2", "--eps", "flip"], dir.path());
    let mut rdr = csv::Reader::from_path(dir.path().join("facets.csv")).unwrap();
    assert_eq!(rdr.records().count(), 12);
    let v = json(&dir.path().join("verify.json"));
    assert_eq!(v["reports"][0]["details"]["rows"].as_array().unwrap().len(), 12);
}

#[test]
fn duality_residuals_are_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hecke(&["verify", "duality", "--type", "A1", "--n", "1"], dir.path()).status.success());
    let v = json(&dir.path().join("verify.json"));
    for row in v["reports"][0]["details"]["rows"].as_array().unwrap() {
        assert_eq!(row["residual_rank"], 0);
    }
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "type = A2\ncolour = red\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    assert_eq!(hecke(&["cells", "--config", cfg], dir.path()).status.code(), Some(2));
    assert_eq!(hecke(&["cells", "--type", "Q7"], dir.path()).status.code(), Some(2));
    assert_eq!(hecke(&["cells", "--type", "A2", "--J", "5"], dir.path()).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "nope", "--type", "A1"], dir.path()).status.code(), Some(2));
    assert_eq!(hecke(&["cells", "--type", "A2", "--eps", "[1,1]"], dir.path()).status.code(), Some(2));
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# level two\ntype = A1\nn = 1\nJ = full\n").unwrap();
    let o = hecke(&["cells", "--config", cfg.to_str().unwrap(), "--n", "2"], dir.path());
    assert!(o.status.success());
    let v = json(&dir.path().join("cells.json"));
    assert_eq!(v["config"]["n"], 2);
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);
}

#[test]
fn outputs_are_deterministic() {
    let files = ["cells.json", "kl.csv", "n.csv", "stalks.csv", "stalks.json", "gamma.csv", "verify.json", "facets.csv"];
    let produce = || {
        let dir = tempfile::tempdir().unwrap();
        for cmd in [&["cells"][..], &["kl"], &["stalks"], &["gamma"], &["verify", "all"]] {
            let mut args = cmd.to_vec();
            args.extend(["--type", "B2", "--n", "2", "--seed", "3"]);
            assert!(hecke(&args, dir.path()).status.success(), "{args:?}");
        }
        files.map(|f| fs::read(dir.path().join(f)).unwrap())
    };
    assert_eq!(produce(), produce());
}

#[test]
fn stalks_are_in_prime_basis() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hecke(&["stalks", "--type", "A1", "--d0", "0"], dir.path()).status.success());
    let v = json(&dir.path().join("stalks.json"));
    assert_eq!(v["basis"], "prime");
    assert_eq!(v["d0"], 0);
    let s = &v["classes"][1];
    assert_eq!(s["d_w"], 1);
    let coeffs: Vec<&str> = s["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["-v^-1", "-v^-1"]);
}

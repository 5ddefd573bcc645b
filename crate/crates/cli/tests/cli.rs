use std::process::Command;

use qgl_cli::checks::r_suite;
use qgl_cli::{run_all, CheckId, Params, Profile, Status};
use qgl_core::ncalg::{r_matrix, NcElement};
use qgl_core::QScalar;

fn qgl(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgl")).args(args).output().expect("spawn qgl");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn passing_check_exits_zero_with_ordered_keys() {
    let (code, out) = qgl(&["run", "ybe", "--n", "3"]);
    assert_eq!(code, 0);
    let keys: Vec<usize> = ["\"check\"", "\"params\"", "\"status\"", "\"elapsed_ms\"", "\"convention_notes\""]
        .iter()
        .map(|k| out.find(k).unwrap_or_else(|| panic!("missing {k} in {out}")))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{out}");
    assert!(!out.contains("\"witness\""));
}

#[test]
fn failing_check_exits_one_with_witness() {
    let (code, out) = qgl(&["run", "hc"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["witness"].is_object());
}

#[test]
fn usage_and_resource_exit_codes() {
    assert_eq!(qgl(&["run", "no-such-check"]).0, 2);
    assert_eq!(qgl(&["run", "ybe", "--q", "not-a-number"]).0, 2);
    assert_eq!(qgl(&["run", "det", "--n", "5"]).0, 3);
}

#[test]
fn list_names_every_check() {
    let (code, out) = qgl(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), CheckId::ALL.len());
    for line in out.lines() {
        assert_eq!(line.parse::<CheckId>().unwrap().name(), line);
    }
}

#[test]
fn filtration_csv_has_one_row_per_weight() {
    let dir = std::env::temp_dir().join(format!("qgl-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let (code, _) = qgl(&["run", "filtration", "--window", "6", "--threshold", "5", "--threshold", "20", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header = rdr.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["lambda", "control_value", "control_approx", "in_P<=5", "in_P<=20"]);
    let rows = rdr.records().count();
    // λ_1 - λ_2 ≤ 6 and |λ_2| ≤ 6
    assert_eq!(rows, 7 * 13);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn run_all_is_independent_of_jobs() {
    let p = Params::default();
    let a: Vec<_> = run_all(Profile::Quick, &p, 1).iter().map(|r| r.without_timing()).collect();
    let b: Vec<_> = run_all(Profile::Quick, &p, 4).iter().map(|r| r.without_timing()).collect();
    assert_eq!(a.len(), CheckId::ALL.len());
    assert_eq!(a, b);
    assert!(a.iter().filter(|r| r.status != Status::Pass).all(|r| r.check == "hc"));
}

#[test]
fn corrupted_r_entry_breaks_ybe() {
    let mut r = r_matrix(2);
    // the (q^{-1} - q) entry coupling e_12⊗e_21
    let (i, j) = (r.pack(&[0, 1]), r.pack(&[1, 0]));
    let bumped = &r.scalar_entry(i, j) + &QScalar::one();
    r.set(i, j, NcElement::scalar(bumped));
    let rep = r_suite(&r).unwrap();
    assert!(!rep.pass);
    let ybe = rep.witness.iter().find(|(k, _)| k == "ybe").unwrap();
    assert!(ybe.1.contains("nonzero"), "{ybe:?}");
}

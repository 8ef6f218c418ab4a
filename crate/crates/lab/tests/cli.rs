use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey-lab"))
        .args(args)
        .current_dir(dir)
        .env_remove("RAMSEY_LAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn parity_log_has_no_convex_four_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&lab(d, &["gen", "parity-log", "--n", "16", "-o", "c.json"])), 0);
    assert!(d.join("c.json.manifest.json").exists());
    let o = lab(d, &["typeclique", "--pi", "3,2,1", "--k", "4", "--color", "0", "--require-proof", "c.json", "-o", "cert.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let cert = read_json(&d.join("cert.json"));
    assert_eq!(cert["status"], "none exists, exhausted");
    assert_eq!(cert["kind"], "absence");
    let manifest = read_json(&d.join("cert.json.manifest.json"));
    let bytes = std::fs::read(d.join("cert.json")).unwrap();
    assert_eq!(manifest["result_digest"], ramsey_lab::manifest::sha256_hex(&bytes));
    assert_eq!(code(&lab(d, &["verify", "--certificate", "cert.json"])), 0);
}

#[test]
fn cascade_identities_are_all_true() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(dir.path(), &["cascade", "--k", "3", "--q", "2", "--n", "1e9", "--p", "0.5"]);
    assert_eq!(code(&o), 0);
    let table = String::from_utf8(o.stdout).unwrap();
    let ids: Vec<&str> = table
        .lines()
        .skip_while(|l| !l.starts_with("closed-form"))
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .collect();
    assert!(ids.len() >= 10, "{table}");
    assert!(ids.iter().all(|l| l.trim_start().starts_with("true")), "{table}");
}

#[test]
fn malformed_file_exits_2_naming_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.json"), r#"{"colors":[0,1,0,7,1,0],"hi":4,"kind":"edge","lo":1,"q":2}"#).unwrap();
    let o = lab(d, &["maxclique", "bad.json"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("colors[3] = 7") && err.contains("pair (2, 3)"), "{err}");
    std::fs::write(d.join("bad2.json"), "{not json").unwrap();
    assert_eq!(code(&lab(d, &["maxclique", "bad2.json"])), 2);
    assert_eq!(code(&lab(d, &["maxclique", "missing.json"])), 2);
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&lab(d, &["frobnicate"])), 64);
    assert_eq!(code(&lab(d, &["cascade", "--k", "3", "--bogus"])), 64);
    assert_eq!(code(&lab(d, &["--help"])), 0);
    assert_eq!(code(&lab(d, &["--version"])), 0);
}

#[test]
fn budget_inconclusive_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&lab(d, &["gen", "parity-log", "--n", "64", "-o", "c.json"])), 0);
    let o = lab(d, &["typeclique", "--pi", "3,2,1", "--color", "0", "--budget", "2", "c.json"]);
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_ramsey-lab"))
        .args(["maxclique", "c.json", "--require-proof"])
        .current_dir(d)
        .env("RAMSEY_LAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    // Without --require-proof the best clique found is still reported.
    let o = Command::new(env!("CARGO_BIN_EXE_ramsey-lab"))
        .args(["maxclique", "c.json"])
        .current_dir(d)
        .env("RAMSEY_LAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(code(&lab(d, &["fexact", "--n", "8", "--budget", "10"])), 3);
}

#[test]
fn certificates_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&lab(d, &["gen", "random", "--n", "24", "--seed", "9", "-o", "r.json"])), 0);
    assert_eq!(code(&lab(d, &["gen", "parity-log", "--n", "40", "-o", "p.bin"])), 0);
    assert_eq!(code(&lab(d, &["gen", "random", "--n", "30", "--lo", "2", "--seed", "3", "-o", "w.json"])), 0);
    assert_eq!(code(&lab(d, &["gen", "random", "--n", "30", "--lo", "5", "--seed", "3", "-o", "w5.json"])), 0);
    assert_eq!(code(&lab(d, &["gen", "bipartite", "--n1", "20", "--n2", "24", "--p", "0.6", "--seed", "2", "-o", "g.json"])), 0);
    let runs: &[&[&str]] = &[
        &["maxclique", "r.json"],
        &["maxclique", "p.bin", "--color", "1"],
        &["wclique", "w.json", "--weights", "w1"],
        &["wclique", "w5.json", "--weights", "w2", "--color", "0"],
        &["wclique", "--rodl", "64", "--leaf", "13"],
        &["typeclique", "r.json", "--pi", "2,1", "--color", "1"],
        &["convex", "p.bin", "--k", "4", "--color", "0", "--square-path"],
        &["wramsey", "r.json", "--c", "0.5", "--seed", "4"],
        &["drc", "extract", "g.json", "--p", "0.5", "--s", "2", "--t", "2", "--m", "1"],
        &["drc", "report", "g.json", "--p", "0.5", "--s", "2", "--t", "2", "--m", "1"],
        &["sep", "--set", "1,2,3,5,8,13,21,34", "--lo", "1", "--hi", "40"],
        &["shrink", "--set", "1,2,3,5,8,13,21,34", "--lo", "1", "--hi", "40", "--r", "7"],
        &["cascade", "--k", "2", "--q", "3", "--n", "65536", "--p", "1/3"],
        &["rpi", "--k", "3", "--q", "1", "--pi", "1,2", "--n-max", "5"],
        &["fexact", "--n", "5", "--traversal", "shuffled", "--seed", "1"],
        &["verify", "monotone-diff", "--n", "12", "--max-size", "4"],
        &["weight", "--set", "2,4,8,16"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = format!("cert{i}.json");
        let mut full = args.to_vec();
        full.extend(["-o", &out]);
        let o = lab(d, &full);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = lab(d, &["verify", "--certificate", &out]);
        assert_eq!(code(&v), 0, "{args:?}: {}", String::from_utf8_lossy(&v.stdout));
    }
}

#[test]
fn tampered_certificates_fail() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&lab(d, &["gen", "random", "--n", "20", "--seed", "1", "-o", "r.json"])), 0);
    assert_eq!(code(&lab(d, &["maxclique", "r.json", "--color", "0", "-o", "m.json"])), 0);
    let mut cert = read_json(&d.join("m.json"));
    let first = cert["vertices"][0].as_i64().unwrap();
    cert["vertices"][0] = (first + 1).into();
    std::fs::write(d.join("bad.json"), cert.to_string()).unwrap();
    let o = lab(d, &["verify", "--certificate", "bad.json"]);
    assert_eq!(code(&o), 1);
    // Changing the input is caught by its hash.
    assert_eq!(code(&lab(d, &["gen", "random", "--n", "20", "--seed", "2", "-o", "r.json"])), 0);
    assert_eq!(code(&lab(d, &["verify", "--certificate", "m.json"])), 1);
}

#[test]
fn identical_runs_give_identical_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["a", "b"] {
        let file = format!("{name}.json");
        assert_eq!(code(&lab(d, &["gen", "random", "--n", "30", "--seed", "77", "-o", &file])), 0);
    }
    assert_eq!(std::fs::read(d.join("a.json")).unwrap(), std::fs::read(d.join("b.json")).unwrap());
    let runs: &[&[&str]] = &[
        &["maxclique", "a.json", "-o", "m1.json"],
        &["maxclique", "a.json", "--threads", "4", "-o", "m2.json"],
        &["rpi", "--k", "3", "--q", "2", "--pi", "2,1", "--n-max", "6", "-o", "r1.json"],
        &["rpi", "--k", "3", "--q", "2", "--pi", "2,1", "--n-max", "6", "--threads", "3", "-o", "r2.json"],
    ];
    for args in runs {
        assert_eq!(code(&lab(d, args)), 0, "{args:?}");
    }
    for (x, y) in [("m1.json", "m2.json"), ("r1.json", "r2.json")] {
        assert_eq!(std::fs::read(d.join(x)).unwrap(), std::fs::read(d.join(y)).unwrap(), "{x} vs {y}");
    }
}

#[test]
fn json_mode_prints_only_the_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(dir.path(), &["--json", "weight", "--set", "2,4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exact"], "3/2");
    assert_eq!(v["command"], "weight");
}

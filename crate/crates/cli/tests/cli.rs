use std::path::Path;
use std::process::{Command, Output};

use covrel::campaign::build_paper_data;
use covrel::hset::HSetFile;
use serde_json::Value;

fn covrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covrel"))
        .args(args)
        .env_remove("COVREL_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verified_relation_exits_zero() {
    let out = covrel(&["verify", "--from", "N1", "--to", "N1", "--mean-value"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["degree"], 1);
}

#[test]
fn false_relation_is_not_verified() {
    let out = covrel(&["verify", "--from", "N1", "--to", "N2", "--mean-value", "--max-depth", "4"]);
    assert!(matches!(code(&out), 1 | 2));
    assert_ne!(json(&out)["status"], "verified");
}

#[test]
fn backcovering_of_mirrored_sets() {
    let out = covrel(&["verify", "--from", "S^T*H3", "--to", "S^T*H2", "--back", "--mean-value"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["direction"], "back");
    assert_eq!(v["degree"], -1);
}

#[test]
fn hsets_can_come_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n2.json");
    let data = build_paper_data().unwrap();
    HSetFile::from_hset(data.hset("N2").unwrap()).save(&file).unwrap();
    let report = dir.path().join("cert.json");
    let out = covrel(&[
        "verify",
        "--from",
        path(&file),
        "--to",
        path(&file),
        "--mean-value",
        "--report",
        path(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["degree"], -1);
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"name\": \"X\", \"center\": [0, 0] }").unwrap();
    for args in [
        vec!["verify", "--from", path(&bad), "--to", "N1"],
        vec!["verify", "--from", "nowhere.json", "--to", "N1"],
        vec!["verify", "--from", "N1", "--to", "N1", "--map", "G"],
        vec!["verify", "--from", "N1"],
        vec!["verify", "--from", "N1", "--to", "N1", "--iters", "0"],
        vec!["enumerate", "--report", path(&bad), "--length", "3"],
        vec!["frobnicate"],
    ] {
        let out = covrel(&args);
        assert_eq!(code(&out), 3, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(code(&covrel(&["--help"])), 0);
}

#[test]
fn shallow_campaign_is_inconclusive() {
    let out = covrel(&["prove-paper", "--max-depth", "2", "--resolution", "2"]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(v["conclusions"][0].as_str().unwrap().contains("not fully verified"));
}

fn without_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.retain(|k, _| !k.contains("wall_time"));
            m.values_mut().for_each(without_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(without_timings),
        _ => {}
    }
}

#[test]
fn campaign_then_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let (r1, r2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    let plots = dir.path().join("plots");
    for (r, extra) in [(&r1, vec!["--plot", path(&plots)]), (&r2, vec![])] {
        let mut args = vec!["prove-paper", "--mean-value", "--threads", "1", "--report", path(r)];
        args.extend(extra);
        let out = covrel(&args);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let read = |p: &Path| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        without_timings(&mut v);
        v
    };
    assert_eq!(read(&r1), read(&r2));
    for f in ["n1n2.dat", "h1_h2_exit_unstable.dat", "h1_h2_boundary_stable.dat", "h1_h2_supports.dat"] {
        assert!(plots.join(f).metadata().unwrap().len() > 0, "{f}");
    }

    let out = covrel(&["enumerate", "--report", path(&r1), "--length", "5", "--orbits", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["count"], "32");
    assert_eq!(v["words"].as_array().unwrap().len(), 32);
    let orbits = v["symmetric_orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 3);
    assert_eq!(orbits[2]["half_period"], 10);

    let out = covrel(&["enumerate", "--report", path(&r1), "--length", "64", "--count-only"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], "18446744073709551616");
    assert!(v.get("words").is_none());

    let out = covrel(&["enumerate", "--report", path(&r1), "--length", "0"]);
    assert_eq!(code(&out), 3);
}

use kflag::json::family_from_json;
use kflag::weyl::{Flag, LieType};
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn kflag(args: &[&str]) -> Output {
    kflag_env(args, &[])
}

fn kflag_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kflag"));
    c.args(args);
    for k in ["KFLAG_FORMAT", "KFLAG_NON_EQUIVARIANT", "KFLAG_Y", "KFLAG_Q_PRIME", "KFLAG_CACHE_DIR", "KFLAG_MAX_RANK_CAP", "KFLAG_TYPE", "KFLAG_RANK", "KFLAG_CONFIG"] {
        c.env_remove(k);
    }
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn fl3_intro_table_matches_golden() {
    let o = kflag(&["expand", "A", "2", "mc-x", "--non-equivariant"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("fl3_mc_x.txt"));
    let o = kflag(&["expand", "A", "2", "mc-x", "--non-equivariant", "--format", "json"]);
    assert_eq!(stdout(&o), golden("fl3_mc_x.json"));
}

#[test]
fn normalized_duals_match_golden() {
    let o = kflag(&["expand", "A", "2", "mc-dual-normalized", "--non-equivariant"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("fl3_mc_dual_normalized.txt"));
}

#[test]
fn golden_lines_carry_the_published_coefficients() {
    let text = golden("fl3_mc_x.txt");
    let top = text.lines().last().unwrap();
    assert!(top.starts_with("MC(X(s1 s2 s1)°) = (1 + 3*y + 3*y^2 + y^3)*O_{s1 s2 s1}"));
    assert!(top.ends_with("- (1 + 5*y + 11*y^2 + 8*y^3)*O_{e}"));
}

#[test]
fn a1_equivariant_expansion() {
    let o = kflag(&["expand", "A", "1", "mc-x", "s1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "MC(X(s1)°) = (y*e^{-a1} + 1)*O_{s1} - (y*e^{-a1} + 1 + y)*O_{e}\n");
    // compact system form and flags give the same result
    let o2 = kflag(&["--type", "A", "--rank", "1", "expand", "mc-x", "s1"]);
    assert_eq!(stdout(&o2), stdout(&o));
    let o3 = kflag(&["expand", "A1", "mc-x", "s1"]);
    assert_eq!(stdout(&o3), stdout(&o));
}

#[test]
fn json_output_parses_back() {
    let o = kflag(&["expand", "A", "2", "mc-dual", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let fv = Flag::new(LieType::A, 2).unwrap();
    let (name, classes, exps) = family_from_json(&fv, &v).unwrap();
    assert_eq!(name, "mc-dual");
    assert_eq!(classes, fv.motivic_family(kflag::motivic::Family::DualCell).unwrap().classes);
    assert_eq!(exps.len(), 6);
}

#[test]
fn casselman_tables() {
    let o = kflag(&["casselman", "A", "2", "--format", "tsv"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s, golden("a2_casselman.tsv"));
    assert_eq!(s.lines().count(), 1 + 19);
    let o = kflag(&["casselman", "A", "1"]);
    let s = stdout(&o);
    assert!(s.contains("(u, w) = (e, s1)\n  m = (1 + y^-1*e^a1)/(1 - e^a1)"));
    let o = kflag(&["casselman", "A", "3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let bad: Vec<&Value> = rows.iter().filter(|r| r["factorization"] == false).collect();
    assert!(!bad.is_empty());
    for r in rows {
        assert_eq!(r["factorization"], r["smooth_mc"]);
        assert_eq!(r["factorization"], r["smooth_kumar"]);
    }
}

#[test]
fn casselman_numeric_q_prime() {
    let o = kflag(&["casselman", "A", "1", "--q-prime", "2", "--format", "tsv"]);
    assert!(o.status.success());
    // y = -2: m = (1 - e^a/2)/(1 - e^a), r = -e^a/(1 - e^a)
    assert!(stdout(&o).contains("e\ts1\t(2 - e^a1)/((1 - e^a1)*2)\t-e^a1/(1 - e^a1)\t"), "{}", stdout(&o));
    let o = kflag(&["casselman", "A", "1", "--q-prime", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("(e, s1)"), "{err}");
}

#[test]
fn verify_suites() {
    let o = kflag(&["verify", "A", "2", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("overall: PASS\n"));
    let o = kflag(&["verify", "G", "2", "relations", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    let checks = v["reports"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["relation"].as_str().unwrap().contains("braid")));
    let o = kflag(&["verify", "A", "3", "bnn"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("not smooth: (u, w) = (s2, s2 s1 s3 s2)"));
}

#[test]
fn exit_codes() {
    assert_eq!(kflag(&["expand", "A", "2", "mc-z"]).status.code(), Some(2));
    assert_eq!(kflag(&["expand", "A", "2", "mc-x", "s3"]).status.code(), Some(2));
    assert_eq!(kflag(&["verify", "A", "2", "everything"]).status.code(), Some(2));
    assert_eq!(kflag(&["verify", "Q", "2", "all"]).status.code(), Some(2));
    assert_eq!(kflag(&["bogus"]).status.code(), Some(2));
    assert_eq!(kflag(&["verify", "A", "5", "relations", "--max-rank-cap", "4"]).status.code(), Some(3));
    assert_eq!(kflag(&["verify", "E", "8", "relations"]).status.code(), Some(3));
    assert_eq!(kflag(&["--help"]).status.code(), Some(0));
}

#[test]
fn environment_and_config_precedence() {
    let o = kflag_env(&["casselman", "A", "1"], &[("KFLAG_FORMAT", "tsv")]);
    assert!(stdout(&o).starts_with("u\tw\tm"));
    let o = kflag_env(&["casselman", "A", "1", "--format", "pretty"], &[("KFLAG_FORMAT", "tsv")]);
    assert!(stdout(&o).starts_with("(u, w)"));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"type": "A", "rank": 1, "format": "json"}"#).unwrap();
    let o = kflag(&["--config", cfg.to_str().unwrap(), "casselman"]);
    assert!(o.status.success());
    assert!(serde_json::from_slice::<Value>(&o.stdout).is_ok());
    let o = kflag_env(&["--config", cfg.to_str().unwrap(), "casselman"], &[("KFLAG_FORMAT", "tsv")]);
    assert!(stdout(&o).starts_with("u\tw"));
    std::fs::write(&cfg, r#"{"type": "A", "rank": 1, "colour": "red"}"#).unwrap();
    let o = kflag(&["--config", cfg.to_str().unwrap(), "casselman"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn deterministic_output() {
    let a = kflag(&["expand", "B", "2", "mc-y", "--format", "json"]);
    let b = kflag(&["expand", "B", "2", "mc-y", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

fn cache_file(dir: &Path, family: &str) -> std::path::PathBuf {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_str().unwrap().starts_with(&format!("A2-{family}-")))
        .expect("cache file written")
}

#[test]
fn cache_roundtrip_and_invalidation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = kflag(&["expand", "A", "2", "mc-x", "--format", "json", "--cache-dir", d]);
    assert!(cold.status.success());
    let path = cache_file(dir.path(), "mc-x");
    let stored = std::fs::read(&path).unwrap();
    let warm = kflag(&["expand", "A", "2", "mc-x", "--format", "json", "--cache-dir", d]);
    assert_eq!(warm.stdout, cold.stdout);
    assert!(warm.stderr.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stored);

    // a stale version is ignored with a warning and rewritten
    let mut v: Value = serde_json::from_slice(&stored).unwrap();
    v["code_version"] = Value::from("kflag 0.0.0 / cache format 0");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = kflag(&["expand", "A", "2", "mc-x", "--format", "json", "--cache-dir", d]);
    assert_eq!(o.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&o.stderr).contains("different code version"));
    assert_eq!(std::fs::read(&path).unwrap(), stored);

    // a class violating the GKM condition is rejected
    let mut v: Value = serde_json::from_slice(&stored).unwrap();
    v["classes"][2]["values"]["e"] = serde_json::json!({"num": [[7, [0, 0], 0, 0]], "den": []});
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = kflag(&["expand", "A", "2", "mc-x", "--format", "json", "--cache-dir", d]);
    assert_eq!(o.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));

    std::fs::write(&path, "{ not json").unwrap();
    let o = kflag(&["expand", "A", "2", "mc-x", "--format", "json", "--cache-dir", d]);
    assert_eq!(o.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt"));
}

#[test]
fn warm_verify_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let t0 = std::time::Instant::now();
    let cold = kflag(&["verify", "A", "3", "duality", "--cache-dir", d]);
    let cold_t = t0.elapsed();
    assert!(cold.status.success());
    let t1 = std::time::Instant::now();
    let warm = kflag(&["verify", "A", "3", "duality", "--cache-dir", d]);
    let warm_t = t1.elapsed();
    assert!(warm.status.success());
    assert_eq!(warm.stdout, cold.stdout);
    // timing smoke check only
    eprintln!("cold {cold_t:?}, warm {warm_t:?}");
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 3);
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn cws(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cws")).args(args).output().expect("run cws")
}

/// The trailing JSON object on stdout.
fn report(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let start = text.rfind("\n{").map_or(0, |k| k + 1);
    serde_json::from_str(&text[start..]).expect("json report")
}

fn without_timings(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.retain(|k, _| !k.ends_with("_ms"));
    }
    v
}

#[test]
fn paper_demo_succeeds() {
    let out = cws(&["paper-demo"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_from_files() {
    let code = data("the_9_12_3.code");
    let out = cws(&["verify", "--code", code.to_str().unwrap(), "--weight", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["pure"], true);
    assert_eq!(r["counts"]["errors_checked"], 351);
    assert_eq!(r["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["tool"], "cws");
}

#[test]
fn verify_failure_exits_one() {
    let out = cws(&["verify", "--weight", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], false);
    let v = &r["violations"][0];
    assert!(v["i"].as_u64().unwrap() >= 1 && v["j"].as_u64().unwrap() >= 1);
}

#[test]
fn duplicate_codeword_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.code");
    let text = format!("graph {}\n-\n2,6,7\n1,4\n7,6,2\n", data("l9.graph").display());
    std::fs::write(&path, text).unwrap();
    let out = cws(&["verify", "--code", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("duplicate codeword 2,6,7"), "{err}");
    assert!(err.contains(":5:"), "{err}");
}

#[test]
fn self_loop_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.graph");
    std::fs::write(&path, "n 9\n1 2\n5 5\n").unwrap();
    let out = cws(&["statevec", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("self-loop") && err.contains(":3:"), "{err}");
}

#[test]
fn data_file_matches_builtin_code() {
    let code = data("the_9_12_3.code");
    let from_file = cws(&["projector", "--code", code.to_str().unwrap()]);
    let builtin = cws(&["projector"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(builtin.status.code(), Some(0));
    let payload = |o: &Output| {
        let t = String::from_utf8(o.stdout.clone()).unwrap();
        t[..t.find("\n{").unwrap()].to_string()
    };
    assert_eq!(payload(&from_file), payload(&builtin));
    assert_eq!(payload(&builtin).lines().count(), 176);
    assert_eq!(report(&builtin)["trace"], "12/1");
}

#[test]
fn thread_count_does_not_change_results() {
    for args in [&["verify", "--weight", "3"][..], &["enumerator", "--method", "fast"][..]] {
        let base = without_timings(report(&cws(args)));
        for t in ["1", "3"] {
            let mut with = args.to_vec();
            with.extend(["--threads", t]);
            assert_eq!(without_timings(report(&cws(&with))), base, "{args:?} --threads {t}");
        }
    }
}

#[test]
fn search_output_is_a_loadable_code() {
    let out = cws(&["search", "--budget", "10s"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["size"], 12);
    assert_eq!(r["exhausted"], true);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let body = &text[..text.find("\n{").unwrap() + 1];

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("found.code");
    std::fs::write(&path, body).unwrap();
    let g = data("l9.graph");
    let v = cws(&["verify", "--code", path.to_str().unwrap(), "--graph", g.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(report(&v)["pure"], true);
}

#[test]
fn patterns_and_proofcheck() {
    let p = report(&cws(&["patterns"]));
    assert_eq!(p["shapes_match"], true);
    assert_eq!(p["classes"]["I"].as_array().unwrap().len(), 9);
    let c = report(&cws(&["proofcheck"]));
    assert_eq!(c["passed"], true);
    assert_eq!(c["agree"], true);
    assert_eq!(c["reduced_transitions"].as_array().unwrap().len(), 31);
}

#[test]
fn statevec_signs() {
    let out = cws(&["statevec"]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().take(512).collect();
    assert!(lines.iter().all(|l| *l == "+1/√512" || *l == "-1/√512"));
    assert_eq!(report(&out)["dimension"], 512);
}

#[test]
fn graph_without_code_is_a_usage_error() {
    let g = data("l9.graph");
    assert_eq!(cws(&["verify", "--graph", g.to_str().unwrap()]).status.code(), Some(2));
}

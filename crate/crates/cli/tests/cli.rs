use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bigproj")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn kl_a3() {
    let o = run(&["kl", "--system", "A3", "--x", "s2", "--w", "s2s1s3s2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "1+q");
    let v = json(&run(&["kl", "--system", "A3", "--x", "s2", "--w", "s2s1s3s2"]));
    assert_eq!(v["poly"], "1+q");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn uq_ell_three() {
    let o = run(&["uq", "--ell", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["blocks"][0]["dual_dim"], 18);
    assert_eq!(v["blocks"][1]["dual_dim"], 9);
    assert_eq!(v["dual_total"], 27);
}

#[test]
fn bad_input_is_usage_error() {
    assert_eq!(run(&["verify", "--nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--lambda", "0", "--kind", "bigproj"]).status.code(), Some(2));
    assert_eq!(run(&["kl", "--system", "Z9", "--x", "e", "--w", "e"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(run(&["whittaker", "solve", "--eta", "1,2"]).status.code(), Some(2));
}

#[test]
fn output_is_reproducible() {
    let args = ["whittaker", "solve", "--system", "A2", "--eta", "1,2/3", "--depth", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["eta"], serde_json::json!(["1", "2/3"]));
}

#[test]
fn verify_filters() {
    let o = run(&["verify", "--only", "combinatorics", "--system", "A3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["claims"].as_array().unwrap().len(), 1);
    assert_eq!(v["claims"][0]["details"]["A3"]["p_s2_s2s1s3s2"]["hecke"], "1+q");
    // a claim with nothing to do for the system is skipped, not failed
    let o = run(&["verify", "--only", "kernel", "--system", "A2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("SKIPPED"));
}

#[test]
fn verify_operator_relations_text() {
    let o = run(&["verify", "--only", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.lines().next().unwrap().starts_with("PASS"));
}

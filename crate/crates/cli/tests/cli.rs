use std::process::{Command, Output};

use serde_json::Value;

fn dpcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpcover"))
        .args(args)
        .env_remove("DPCOVER_SUBSET_LIMIT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = dpcover(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().unwrap())
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_table_matches_the_reference_output() {
    let out = dpcover(&["--format", "table", "verify-thm3", "--m-max", "5"]);
    assert!(out.status.success());
    let expected = "When m = 2:\n2\n0\n\nWhen m = 3:\n12\n0\n\nWhen m = 4:\n60\n24\n\nWhen m = 5:\n182\n120\n";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn verify_smallest_fold() {
    let (v, code) = json(&["verify-thm3", "--m-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["rows"][0]["value"], 2);
    assert_eq!(v["payload"]["all_pass"], true);
}

#[test]
fn verify_through_constructions() {
    let (v, code) = json(&["verify-thm3", "--m-max", "100"]);
    assert_eq!(code, 0);
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 99);
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert_eq!(rows[4]["method"], "construction");
    assert_eq!(rows[4]["value"], 462);
}

#[test]
fn verify_rejects_small_m_max() {
    let (v, code) = json(&["verify-thm3", "--m-max", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "invalid-input");
}

#[test]
fn search_k4_m3() {
    let (v, code) = json(&["search", "--graph", "K4", "--m", "3", "--mode", "both"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!((p["max"].as_i64(), p["min"].as_i64()), (Some(12), Some(0)));
    assert_eq!(p["evaluated"], 216);
    assert_eq!(v["params"]["graph"], "K4");
    // the witness is a loadable cover with the reported count
    let file = std::env::temp_dir().join(format!("dpcover-argmax-{}.json", std::process::id()));
    std::fs::write(&file, p["argmax_cover"].to_string()).unwrap();
    let (c, code) = json(&["count", "--cover", file.to_str().unwrap(), "--graph", "K4", "--counter", "all"]);
    std::fs::remove_file(&file).unwrap();
    assert_eq!(code, 0);
    assert_eq!(c["payload"]["value"], 12);
}

#[test]
fn search_with_conjugacy_reduction() {
    let (v, _) = json(&["search", "--graph", "K4", "--m", "4", "--reduce", "conjugacy"]);
    assert_eq!(v["payload"]["max"], 60);
    assert_eq!(v["payload"]["min"], 24);
    assert_eq!(v["payload"]["reduction"], "conjugacy");
}

#[test]
fn search_k5_is_reproducible() {
    let args = ["--format", "csv", "search", "--graph", "K5", "--m", "3", "--mode", "max"];
    let a = stdout(&dpcover(&args));
    let b = stdout(&dpcover(&[&args[..], &["--threads", "2"]].concat()));
    assert_eq!(a, b);
    assert!(a.starts_with("graph,m,mode,kind,counter,reduction,max,min,evaluated,space_size\nK5,3,max,exhaustive,"));
}

#[test]
fn sampled_search_needs_a_seed() {
    assert_eq!(dpcover(&["search", "--graph", "K4", "--m", "5", "--samples", "10"]).status.code(), Some(2));
    let args = ["search", "--graph", "K4", "--m", "5", "--samples", "200", "--seed", "3", "--histogram"];
    let (a, code) = json(&args);
    assert_eq!(code, 0);
    let (b, _) = json(&args);
    assert_eq!(a["payload"]["max"], b["payload"]["max"]);
    assert_eq!(a["payload"]["kind"], "sampled");
    let total: u64 = a["payload"]["histogram"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 200);
}

#[test]
fn search_over_budget_is_a_resource_limit() {
    let (v, code) = json(&["search", "--graph", "K5", "--m", "5"]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "failed");
    assert_eq!(v["error"]["code"], "resource-limit");
}

#[test]
fn count_constructions() {
    let (v, code) = json(&["count", "--construct", "even-pairing", "--n", "4", "--m", "6", "--all"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["value"], 462);
    assert_eq!(v["payload"]["agree"], true);
    assert_eq!(v["payload"]["counts"].as_object().unwrap().len(), 3);

    let (v, _) = json(&["count", "--construct", "canonical", "--n", "4", "--m", "5"]);
    assert_eq!(v["payload"]["value"], 120);

    let (v, _) = json(&["count", "--construct", "odd-k4", "--m", "7", "--counter", "ie"]);
    assert_eq!(v["payload"]["value"], 984);
}

#[test]
fn count_rejects_bad_input() {
    let dir = std::env::temp_dir();
    let file = dir.join(format!("dpcover-bad-{}.json", std::process::id()));
    std::fs::write(&file, r#"{"m": 2, "perms": {"1-2": [1, 1], "1-3": [1, 2], "2-3": [2, 1]}}"#).unwrap();
    let (v, code) = json(&["count", "--cover", file.to_str().unwrap(), "--graph", "K3"]);
    std::fs::remove_file(&file).unwrap();
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "invalid-input");

    let (_, code) = json(&["count", "--construct", "canonical", "--n", "3", "--m", "3", "--counter", "k4"]);
    assert_eq!(code, 2);
    let (_, code) = json(&["count", "--construct", "random", "--n", "4", "--m", "3"]);
    assert_eq!(code, 2);
    let (_, code) = json(&["count", "--construct", "even-pairing", "--n", "4", "--m", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn subset_limit_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dpcover"))
        .args(["count", "--construct", "canonical", "--n", "4", "--m", "3", "--counter", "ie"])
        .env("DPCOVER_SUBSET_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let (v, code) = json(&["--subset-limit", "6", "count", "--construct", "canonical", "--n", "4", "--m", "4", "--counter", "ie"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["value"], 24);
}

#[test]
fn overflow_exit_code() {
    let file = std::env::temp_dir().join(format!("dpcover-empty-{}.json", std::process::id()));
    std::fs::write(&file, r#"{"n": 8, "edges": []}"#).unwrap();
    let (v, code) = json(&["count", "--construct", "canonical", "--graph", file.to_str().unwrap(), "--m", "4000000", "--counter", "ie"]);
    std::fs::remove_file(&file).unwrap();
    assert_eq!(code, 3);
    assert_eq!(v["error"]["code"], "overflow");
}

#[test]
fn signed_counts() {
    let (v, _) = json(&["signed", "--n", "4", "--lambda", "4", "--compare-dual"]);
    assert_eq!(v["payload"]["count"], 60);
    assert_eq!(v["payload"]["dual"]["equal"], true);
    let (v, _) = json(&["signed", "--n", "4", "--lambda", "2"]);
    assert_eq!(v["payload"]["count"], 2);
    assert_eq!(v["payload"]["dual"], Value::Null);
    let (v, _) = json(&["signed", "--n", "4", "--lambda", "10", "--compare-dual"]);
    assert_eq!(v["payload"]["count"], 5370);
    assert_eq!(v["payload"]["dual"]["value"], 5370);
}

#[test]
fn bounds_reports() {
    let (v, code) = json(&["bounds", "--n", "4", "--m", "133", "--check-construction"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["threshold"], 132);
    assert_eq!(p["asserted"], true);
    assert_eq!(p["construction"]["within"], true);
    assert_eq!(p["construction"]["count"].as_i64(), Some(p["f"].as_i64().unwrap() - 3));

    let (v, _) = json(&["bounds", "--n", "5", "--m", "2059", "--check-construction"]);
    assert_eq!(v["payload"]["threshold"], 2057);
    assert_eq!(v["payload"]["construction"]["within"], true);

    let out = dpcover(&["bounds", "--n", "4", "--m", "100"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not asserted"));

    // K8 values exceed 128 bits and are still printed as exact numbers
    let (v, _) = json(&["bounds", "--n", "8", "--m", "600000000"]);
    assert!(v["payload"]["f"].to_string().len() > 40);
    assert!(!v["payload"]["f"].is_string());
}

#[test]
fn construct_round_trips_through_count() {
    let file = std::env::temp_dir().join(format!("dpcover-cover-{}.json", std::process::id()));
    let out = dpcover(&["construct", "--construct", "odd-kn", "--n", "5", "--m", "5", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let (v, code) = json(&["count", "--cover", file.to_str().unwrap(), "--graph", "K5", "--counter", "all"]);
    std::fs::remove_file(&file).unwrap();
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["agree"], true);
}

#[test]
fn every_payload_is_an_outcome() {
    for args in [
        &["construct", "--construct", "random", "--n", "3", "--m", "4", "--seed", "1"][..],
        &["bounds", "--n", "6", "--m", "10"],
        &["signed", "--n", "3", "--lambda", "3"],
    ] {
        let (v, code) = json(args);
        assert_eq!(code, 0);
        for key in ["command", "params", "payload", "elapsed_ms", "status"] {
            assert!(v.get(key).is_some(), "{key} missing from {args:?}");
        }
        assert_eq!(v["status"], "ok");
    }
}

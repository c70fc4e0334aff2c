use std::process::{Command, Output};

use serde_json::Value;

fn reeder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeder"))
        .args(args)
        .env_remove("REEDER_CACHE_DIR")
        .output()
        .expect("run reeder")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

#[test]
fn closedform_b_passes() {
    let out = reeder(&["verify", "--family", "B", "--rank", "2", "--rank-max", "5", "--mode", "closedform"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json_lines(&out);
    // C_0 plus two closed forms per ε_m
    assert_eq!(reports.len(), (2..=5).map(|n| 1 + 2 * n).sum::<usize>());
    for r in &reports {
        assert_eq!(r["status"], "pass", "{r}");
        for key in ["family", "rank", "weight", "check", "lhs", "rhs", "ms"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn oracle_c_passes() {
    let out = reeder(&["verify", "--family", "C", "--rank", "2", "--rank-max", "3", "--mode", "oracle", "--plain"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("multiplicity = Molien series"));
    assert!(text.trim_end().ends_with("0 failed"));
}

#[test]
fn perturbed_formula_exits_one_with_both_sides() {
    let out = reeder(&["verify", "--family", "B", "--rank", "2", "--mode", "oracle", "--perturb"]);
    assert_eq!(out.status.code(), Some(1));
    let fails: Vec<Value> = json_lines(&out).into_iter().filter(|r| r["status"] == "fail").collect();
    assert!(!fails.is_empty());
    for r in fails {
        assert_ne!(r["lhs"], r["rhs"]);
        assert!(!r["rhs"].as_str().unwrap().is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--family", "D"],
        vec!["verify", "--family", "B", "--rank", "1"],
        vec!["verify", "--family", "C", "--rank", "5", "--mode", "oracle"],
        vec!["verify", "--family", "C", "--rank", "3", "--weight", "w3"],
        vec!["dump", "--family", "C", "--rank", "3", "--weight", "w9"],
    ] {
        assert_eq!(reeder(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out_file = dir.path().join("reports.jsonl");
    let args = [
        "verify",
        "--family",
        "C",
        "--rank",
        "3",
        "--mode",
        "recurrence",
        "--cache-dir",
        cache.to_str().unwrap(),
        "--out",
        out_file.to_str().unwrap(),
    ];
    assert_eq!(reeder(&args).status.code(), Some(0));
    assert!(cache.join("C3.json").exists());
    let first = std::fs::read_to_string(&out_file).unwrap();
    assert!(!first.contains("cached table re-verified"));

    assert_eq!(reeder(&args).status.code(), Some(0));
    let second = std::fs::read_to_string(&out_file).unwrap();
    assert!(second.contains("cached table re-verified"));

    // a corrupted cache is ignored and rewritten
    std::fs::write(cache.join("C3.json"), "{not json").unwrap();
    assert_eq!(reeder(&args).status.code(), Some(0));
    let third = std::fs::read_to_string(&out_file).unwrap();
    assert!(!third.contains("cached table re-verified"));
}

#[test]
fn single_weight_filter() {
    let out = reeder(&["verify", "--family", "C", "--rank", "4", "--weight", "w1+w3", "--mode", "closedform"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json_lines(&out);
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["weight"] == "(2,1,1,0)"));
}

#[test]
fn dump_row_keys_are_below_the_weight() {
    let out = reeder(&["dump", "--family", "C", "--rank", "3", "--weight", "w2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<Vec<i64>> = v["row"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|pair| serde_json::from_value(pair[0]["coords"].clone()).unwrap())
        .collect();
    assert_eq!(keys, vec![vec![0, 0, 0], vec![1, 1, 0]]);
    assert!(v["value"]["num"].is_array());
}

#[test]
fn identities_c_small() {
    let out = reeder(&["identities", "--family", "C", "--rank", "3", "--rank-max", "5", "--plain"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("final identity"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn reports_are_deterministic() {
    let strip = |out: Output| -> Vec<Value> {
        json_lines(&out)
            .into_iter()
            .map(|mut r| {
                r["ms"] = Value::Null;
                r
            })
            .collect()
    };
    let args = ["verify", "--family", "B", "--rank", "2", "--rank-max", "4"];
    assert_eq!(strip(reeder(&args)), strip(reeder(&args)));
}

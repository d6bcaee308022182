use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mulambda"))
        .args(args)
        .env_remove("MULAMBDA_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn class_with_order(v: &Value, order: u64) -> &Value {
    v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["rep_order"] == order)
        .unwrap()
}

#[test]
fn analyze_sym3_summary() {
    let o = run(&["analyze", "sym:3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("subgroups  6"));
    assert!(text.contains("classes    4"));
    let v = json(&run(&["analyze", "sym:3", "--format", "json"]));
    let trivial = class_with_order(&v, 1);
    assert_eq!(
        (trivial["mu"].as_i64(), trivial["lambda"].as_i64()),
        (Some(3), Some(1))
    );
    assert_eq!(v["subgroup_count"], 6);
}

#[test]
fn analyze_trivial_group() {
    let v = json(&run(&["analyze", "cyclic:1", "--format", "json"]));
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(
        (classes[0]["mu"].as_i64(), classes[0]["lambda"].as_i64()),
        (Some(1), Some(1))
    );
}

#[test]
fn json_schema_fields() {
    let v = json(&run(&["analyze", "psl2:4", "--format", "json"]));
    for key in [
        "spec",
        "order",
        "solvable",
        "derived_order",
        "frattini_order",
        "classes",
        "verdict",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for c in v["classes"].as_array().unwrap() {
        for key in ["rep_order", "class_size", "mu", "lambda", "t", "pass"] {
            assert!(c.get(key).is_some(), "class missing {key}");
        }
    }
    assert_eq!(class_with_order(&v, 1)["mu"], -60);
    assert_eq!(v["spec"], "psl2:4");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "alt:5"]).status.code(), Some(0));
    assert_eq!(
        run(&["verify", "product(alt:5,cyclic:7)"]).status.code(),
        Some(0)
    );
    let o = run(&["verify", "u3:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "fail");
    let mut failing: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["rep_order"].as_u64().unwrap())
        .collect();
    failing.dedup();
    assert_eq!(failing, [2, 6, 8, 24]);
}

#[test]
fn operational_errors_exit_2() {
    for args in [
        &["verify", "sym:"][..],
        &["verify", "psl2:6"],
        &["analyze", "sym:9"],
        &["analyze", "sym:6", "--subgroup-cap", "10"],
        &["family", "l2", "--q", "9"],
        &["family", "ree", "--q", "27", "--cross-check"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error: "),
            "{args:?}"
        );
    }
}

#[test]
fn family_rows_and_cross_check() {
    let o = run(&["family", "sz", "--q", "8", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["self_check"], true);
    let trivial = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["label"] == "{1}")
        .unwrap();
    assert_eq!(trivial["mu"], -29120);

    let o = run(&[
        "family",
        "l2",
        "--q",
        "8",
        "--cross-check",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["cross_check"]["matched"], true);

    let csv = stdout(&run(&["family", "l2", "--q", "27", "--format", "csv"]));
    assert!(csv.starts_with("family,label,h,order,mu,normalizer_order,lambda,condition\n"));
}

#[test]
fn suite_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let p = |path: &Path| path.to_str().unwrap().to_string();

    let ok = write(
        "ok.txt",
        "# comment\n\nu3:3 EXPECT fail\nsym:4 EXPECT pass\ncyclic:6\n",
    );
    let o = run(&["suite", &p(&ok)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("3 groups, 3 as expected, 0 errors"));

    let wrong = write("wrong.txt", "u3:3 EXPECT pass\n");
    assert_eq!(run(&["suite", &p(&wrong)]).status.code(), Some(1));

    let empty = write("empty.txt", "");
    let o = run(&["suite", &p(&empty), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), Value::Array(vec![]));

    let bad = write("bad.txt", "sym:3\nnonsense:3\n");
    assert_eq!(run(&["suite", &p(&bad)]).status.code(), Some(2));

    assert_eq!(
        run(&["suite", &p(&dir.path().join("missing.txt"))])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn warm_cache_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold_nocache = run(&["analyze", "psl2:7", "--format", "json"]);
    let cold = run(&[
        "analyze",
        "psl2:7",
        "--format",
        "json",
        "--cache-dir",
        cache,
    ]);
    let warm = run(&[
        "analyze",
        "psl2:7",
        "--format",
        "json",
        "--cache-dir",
        cache,
    ]);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() == 1);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, cold_nocache.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_mulambda"))
        .args(["analyze", "psl2:7", "--format", "json"])
        .env("MULAMBDA_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, warm.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let serial = run(&["analyze", "sym:5", "--format", "json", "--threads", "1"]);
    let parallel = run(&["analyze", "sym:5", "--format", "json", "--threads", "4"]);
    assert!(serial.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn maxint_only_restricts_report() {
    let full = json(&run(&["analyze", "cyclic:8", "--format", "json"]));
    let restricted = json(&run(&[
        "analyze",
        "cyclic:8",
        "--format",
        "json",
        "--maxint-only",
    ]));
    assert_eq!(full["classes"].as_array().unwrap().len(), 4);
    assert!(restricted["classes"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["maxint"] == true));
    assert_eq!(restricted["classes"].as_array().unwrap().len(), 2);
}

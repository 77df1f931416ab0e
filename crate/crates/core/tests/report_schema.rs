use std::collections::BTreeSet;

use serde_json::Value;

use mocktheta::suites::{run_suite, SuiteOptions};

fn keys(v: &Value) -> BTreeSet<&str> {
    v.as_object().expect("object").keys().map(String::as_str).collect()
}

fn validate(doc: &Value) {
    assert_eq!(keys(doc), BTreeSet::from(["suite", "checks", "elapsed_ms"]));
    assert!(doc["suite"].is_string());
    assert!(doc["elapsed_ms"].is_u64());
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted, "checks are sorted by name");
    for c in checks {
        assert_eq!(
            keys(c),
            BTreeSet::from(["name", "status", "order", "modulus", "cleared_multiplier", "first_failure"])
        );
        assert!(c["order"].as_u64().unwrap() >= 1);
        assert!(c["modulus"].is_null() || c["modulus"].as_u64().unwrap() >= 2);
        assert!(c["cleared_multiplier"].is_null() || c["cleared_multiplier"].is_i64());
        match c["status"].as_str().unwrap() {
            "pass" => assert!(c["first_failure"].is_null()),
            "fail" => {
                let w = &c["first_failure"];
                assert_eq!(keys(w), BTreeSet::from(["n", "expected", "actual"]));
                assert!(w["n"].is_u64() && w["expected"].is_string() && w["actual"].is_string());
            }
            other => panic!("status {other:?}"),
        }
    }
}

#[test]
fn reports_follow_the_schema() {
    for (suite, order) in [("identities", Some(40)), ("Mao", None), ("genfun", Some(40)), ("T9", None)] {
        let options = SuiteOptions { order, ..SuiteOptions::default() };
        let report = run_suite(suite, options).unwrap();
        let doc: Value = serde_json::from_str(&report.to_json()).unwrap();
        validate(&doc);
        assert_eq!(doc["suite"], suite);
    }
}

#[test]
fn failures_carry_witnesses_and_round_trip() {
    let report = run_suite("Mao", SuiteOptions::default()).unwrap();
    assert!(!report.all_passed());
    let back = mocktheta::report::Report::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    let text = report.to_text();
    for c in &report.checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        assert!(text.contains(&format!("{status}  {}", c.name)));
    }
}

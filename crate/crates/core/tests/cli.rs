use std::process::{Command, Output};

use serde_json::Value;

fn weylkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_passes_with_builtin_data() {
    let o = weylkit(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("10/10 checks passed\n"));
}

#[test]
fn json_report_has_one_object_per_check_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = weylkit(&["verify", "--format", "json", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let v: Value = serde_json::from_str(&text).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, weylkit::verify::CHECK_IDS);
    for c in checks {
        for key in ["status", "computed_values", "certificate", "citations"] {
            assert!(c.get(key).is_some(), "{} lacks {key}", c["id"]);
        }
        assert!(weylkit::verify::replay(c).unwrap());
    }
}

#[test]
fn single_check_in_json() {
    let o = weylkit(&["verify", "table1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let values = &v["checks"][0]["computed_values"];
    assert!(values
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["label"] == "dim Q1(0,0)" && x["value"] == 2304));
}

#[test]
fn empty_registry_reports_data_missing() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("empty.json");
    std::fs::write(
        &data,
        r#"{"type": "G2", "p": 2, "decomposition": [{"lambda": [0, 0], "factors": [[[0, 0], 1]], "provenance": "x"}]}"#,
    )
    .unwrap();
    let o = weylkit(&["verify", "--all", "--data", data.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "data-missing");
    }
}

#[test]
fn perturbed_data_fails_a_check() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("bad.json");
    let text = weylkit::modular::BUILTIN_DATA.replace(
        r#"{"module": "Q1(1,0)", "mult": 1}, {"module": "St", "mult": 2}"#,
        r#"{"module": "Q1(1,0)", "mult": 1}, {"module": "St", "mult": 3}"#,
    );
    std::fs::write(&data, text).unwrap();
    let o = weylkit(&["verify", "st-tensor", "--data", data.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("64·14 = 1·768 + 3·64  [896 != 960]"));
}

#[test]
fn unreadable_data_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let o = weylkit(&["verify", "--data", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(weylkit(&["dim", "k", "--data", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("no/such/dir/report.txt");
    let o = weylkit(&["verify", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write"));
}

#[test]
fn dimensions_of_expressions() {
    for (expr, d) in [
        ("St * L(1,0)^[1]", "384"),
        ("k", "1"),
        ("chi(1,1)*chi(1,1)", "4096"),
        ("St*L(0,1)", "896"),
        ("L(0,1) + L(1,0)^[1]", "20"),
        ("Q1(0,0)", "2304"),
    ] {
        let o = weylkit(&["dim", expr]);
        assert_eq!(o.status.code(), Some(0), "{expr}");
        assert_eq!(stdout(&o).trim(), d, "{expr}");
    }
}

#[test]
fn characters_and_decompositions() {
    let o = weylkit(&["char", "L(1,0)"]);
    assert_eq!(stdout(&o), "dim 6\n(1,0) 1\n");
    let o = weylkit(&["char", "St*chi(1,0)^[1]", "--decompose", "weyl"]);
    assert_eq!(stdout(&o), "dim 448\nchi(3,1) 1\n");
    let o = weylkit(&["char", "L(0,1) + L(1,0)^[1]", "--decompose", "pr"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dim 20\nCharacterObstruction\n"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(weylkit(&["verify", "bogus"]).status.code(), Some(3));
    assert_eq!(weylkit(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(weylkit(&["verify", "--format", "yaml"]).status.code(), Some(3));
    let o = weylkit(&["dim", "L(1,"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 4"));
    assert_eq!(weylkit(&["dim", "Foo(1,0)"]).status.code(), Some(3));
}

#[test]
fn unavailable_characters_are_data_errors() {
    assert_eq!(weylkit(&["char", "Q1(0,0)"]).status.code(), Some(2));
    assert_eq!(weylkit(&["char", "k", "--p", "3"]).status.code(), Some(2));
}

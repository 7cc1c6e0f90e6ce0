use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use eala::gcm::{affine_catalog, diagram_automorphisms};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn eala(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eala"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_file(path: &PathBuf, extra: &[&str]) -> (i32, Value, String) {
    let mut args = vec!["run", "--scenario", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = eala(&args);
    let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, stderr)
}

fn temp_scenario(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("eala-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn transitive_rotation_has_no_nonisotropic_roots() {
    let (code, json, _) = run_file(&scenario("a2_rotation.json"), &[]);
    assert_eq!(code, 0);
    let r = &json["reports"][0];
    assert_eq!(r["affinization"]["verdict"], "empty_nonisotropic");
    assert_eq!(r["affinization"]["nullity"], Value::Null);
}

#[test]
fn quantum_sl_even_rank_gives_bc() {
    let (code, json, _) = run_file(&scenario("quantum_sl_bc2.json"), &[]);
    assert_eq!(code, 0);
    let a = &json["reports"][0]["affinization"];
    assert_eq!(a["type"], "BC_2");
    assert_eq!(a["nullity"], 3);
}

#[test]
fn malformed_json_is_an_input_error() {
    let (code, json, stderr) = run_file(&scenario("malformed.json"), &[]);
    assert_eq!(code, 2);
    assert_eq!(json, Value::Null);
    assert!(stderr.contains("invalid JSON"), "{stderr}");
}

#[test]
fn schema_errors_name_the_field() {
    let cases = [
        (
            r#"{"id":"x","algebra":{"kind":"toroidal","n":2},"checks":["structure"]}"#,
            "algebra: missing field `nu`",
        ),
        (
            r#"[{"id":"x","algebra":{"kind":"sl_loop","n":2},"automorphism":{"kind":"identity"},"checks":["bogus"]}]"#,
            "[0].checks[0]",
        ),
        (
            r#"{"id":"x","algebra":{"kind":"affine_gcm","name":"A_2^(1)"},"automorphism":{"diagram_perm":[1,2,0]},"checks":["structure"]}"#,
            "checks[0]",
        ),
        (
            r#"{"id":"x","algebra":{"kind":"affine_gcm","name":"A_3^(1)"},"automorphism":{"diagram_perm":[1,0,2,3]},"checks":["affinization"]}"#,
            "automorphism",
        ),
        (
            r#"{"id":"x","algebra":{"kind":"sl_loop","n":2},"automorphism":{"kind":"identity"},"checks":["expect"]}"#,
            "checks[0]",
        ),
        (
            r#"{"id":"x","algebra":{"kind":"sl_loop","n":2},"automorphism":{"kind":"identity"},"checks":["structure","structure"]}"#,
            "checks[1]",
        ),
        (
            r#"[{"id":"x","algebra":{"kind":"sl_loop","n":2},"automorphism":{"kind":"identity"},"checks":["structure"]},{"id":"x","algebra":{"kind":"sl_loop","n":2},"automorphism":{"kind":"identity"},"checks":["structure"]}]"#,
            "[1].id",
        ),
        (
            r#"{"id":"x","algebra":{"kind":"sl_loop","n":2},"automorphism":{"kind":"identity"},"checks":["structure"],"extra":1}"#,
            "unknown field",
        ),
    ];
    for (i, (body, needle)) in cases.iter().enumerate() {
        let p = temp_scenario(&format!("schema{i}"), body);
        let (code, _, stderr) = run_file(&p, &[]);
        assert_eq!(code, 2, "case {i}: {stderr}");
        assert!(stderr.contains(needle), "case {i}: {stderr}");
    }
}

#[test]
fn failing_check_exits_one() {
    let body = r#"{"id":"rot","algebra":{"kind":"affine_gcm","name":"A_2^(1)"},
        "automorphism":{"diagram_perm":[1,2,0]},"checks":["projected_nonisotropic"]}"#;
    let (code, json, _) = run_file(&temp_scenario("fail", body), &[]);
    assert_eq!(code, 1);
    assert_eq!(json["reports"][0]["checks"][0]["outcome"], "fail");
    assert_eq!(json["summary"]["fail"], 1);
}

#[test]
fn wrong_expectation_fails() {
    let body = r#"{"id":"q","algebra":{"kind":"quantum_sl","ell":3,"torus":{"nu":1}},
        "checks":["expect"],"expect":{"type":"BC_2"}}"#;
    let (code, json, _) = run_file(&temp_scenario("expect", body), &[]);
    assert_eq!(code, 1);
    let w = json["reports"][0]["checks"][0]["witness"].as_str().unwrap();
    assert!(w.contains("C_2"), "{w}");
}

#[test]
fn corpus_passes_and_reports_each_check_once() {
    let path = scenario("corpus.json");
    let (code, json, stderr) = run_file(&path, &[]);
    assert_eq!(code, 0, "{stderr}");
    let requested: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let reports = json["reports"].as_array().unwrap();
    assert_eq!(reports.len(), requested.as_array().unwrap().len());
    let ids: Vec<&str> = reports.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for s in requested.as_array().unwrap() {
        let r = reports.iter().find(|r| r["id"] == s["id"]).unwrap();
        let want: Vec<&Value> = s["checks"].as_array().unwrap().iter().collect();
        let got: Vec<&Value> = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| &c["name"])
            .collect();
        assert_eq!(want, got, "{}", s["id"]);
    }
}

#[test]
fn reports_are_byte_identical() {
    let a = eala(&[
        "run",
        "--scenario",
        scenario("corpus.json").to_str().unwrap(),
    ]);
    let b = eala(&[
        "run",
        "--scenario",
        scenario("corpus.json").to_str().unwrap(),
    ]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn window_flag_and_out_file() {
    let out = std::env::temp_dir().join(format!("eala-cli-{}-out.json", std::process::id()));
    let o = out.to_str().unwrap();
    let (code, json, _) = run_file(&scenario("sl2_omega.json"), &["--window", "2", "--out", o]);
    assert_eq!(code, 0);
    assert_eq!(json, Value::Null);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["reports"][0]["window"], 2);
    let (code, _, stderr) = run_file(&scenario("sl2_omega.json"), &["--window", "0"]);
    assert_eq!(code, 2, "{stderr}");
}

#[test]
fn timing_is_opt_in() {
    let (_, plain, _) = run_file(&scenario("a2_rotation.json"), &[]);
    assert!(plain["reports"][0].get("timing_ms").is_none());
    let (_, timed, _) = run_file(&scenario("a2_rotation.json"), &["--timing"]);
    assert!(timed["reports"][0]["timing_ms"]["total"].is_u64());
}

#[test]
fn verdict_table_is_complete() {
    let out = eala(&[
        "table",
        "--kind",
        "theorem48",
        "--max-rank",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let expected: BTreeSet<(String, Vec<usize>)> = affine_catalog(4)
        .into_iter()
        .flat_map(|e| {
            diagram_automorphisms(&e.gcm)
                .into_iter()
                .map(move |s| (e.name.clone(), s.perm))
        })
        .collect();
    let got: Vec<(String, Vec<usize>)> = rows
        .iter()
        .map(|r| {
            (
                r["matrix"].as_str().unwrap().to_string(),
                serde_json::from_value(r["perm"].clone()).unwrap(),
            )
        })
        .collect();
    assert_eq!(got.len(), expected.len());
    assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected);
    for r in &rows {
        assert_eq!(r["agrees"], true, "{r}");
        assert_eq!(
            r["transitive"] == true,
            r["verdict"] == "empty_nonisotropic",
            "{r}"
        );
    }
}

#[test]
fn text_table_is_aligned() {
    let out = eala(&["table", "--kind", "diagram-verdicts", "--max-rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("matrix"));
    let col = lines[0].find("verdict").unwrap();
    assert!(lines[2..].iter().all(|l| l.len() > col));
    assert!(text.contains("A_2^(1)"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(
        eala(&["table", "--kind", "nope", "--max-rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(eala(&["run"]).status.code(), Some(2));
    assert_eq!(
        eala(&["run", "--scenario", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
}

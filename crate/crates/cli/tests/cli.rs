use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use gorext_cli::{exit, run_source, Options};

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn gorext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gorext")).args(args).output().expect("binary runs")
}

fn json_run(script: &Path, extra: &[&str]) -> (Value, i32) {
    let mut args = vec![script.to_str().unwrap(), "--format", "json"];
    args.extend_from_slice(extra);
    let out = gorext(&args);
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

fn script_file(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let p = dir.path().join("s.gor");
    std::fs::write(&p, text).unwrap();
    p
}

/// Drops every `*_ms` field.
fn without_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| !k.ends_with("_ms"));
            map.values_mut().for_each(without_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(without_timings),
        _ => {}
    }
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_schema_valid(v: &Value) {
    let errors: Vec<String> = schema().iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn results<'a>(v: &'a Value, command: &str) -> Vec<&'a Value> {
    v["results"].as_array().unwrap().iter().filter(|r| r["command"] == command).map(|r| &r["result"]).collect()
}

#[test]
fn every_example_script_exits_zero() {
    let mut n = 0;
    for entry in std::fs::read_dir(examples()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "gor") {
            let out = gorext(&[p.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{}: {}", p.display(), String::from_utf8_lossy(&out.stdout));
            n += 1;
        }
    }
    assert!(n >= 3);
}

#[test]
fn dual_of_linear_module_has_nonzero_ext4() {
    let (v, code) = json_run(&examples().join("linear-module-dual.gor"), &[]);
    assert_eq!(code, exit::OK);
    assert_schema_valid(&v);
    let betti = results(&v, "betti");
    assert_eq!(betti[0]["projective_dimension"], 1);
    let dual_totals = betti[1]["totals"].as_array().unwrap();
    assert_eq!(dual_totals.len(), 9);
    assert!(dual_totals.iter().all(|b| b.as_u64().unwrap() > 0));
    assert!(betti[1]["projective_dimension"].is_null());
    let scans = results(&v, "scan");
    let tor = &scans[0];
    for e in tor["entries"].as_array().unwrap() {
        if e["index"].as_u64().unwrap() >= 2 {
            assert_eq!(e["dim"], 0, "{e}");
        }
    }
    let ext = &scans[1];
    assert_eq!(ext["family"], "Ext");
    let e4 = ext["entries"].as_array().unwrap().iter().find(|e| e["index"] == 4).unwrap();
    assert!(e4["dim"].as_u64().unwrap() > 0);
}

#[test]
fn koszul_betti_row() {
    let (v, code) = json_run(&examples().join("koszul.gor"), &[]);
    assert_eq!(code, exit::OK);
    let betti = results(&v, "betti");
    assert_eq!(betti[0]["totals"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(betti[0]["projective_dimension"], 3);
    let out = gorext(&[examples().join("koszul.gor").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["total:", "1", "3", "3", "1"]), "{text}");
}

#[test]
fn seeded_search_runs_fifty_trials_without_violations() {
    let (v, code) = json_run(&examples().join("minimal-multiplicity-search.gor"), &["--seed", "7"]);
    assert_eq!(code, exit::OK);
    assert_schema_valid(&v);
    let search = results(&v, "search");
    assert_eq!(search[0]["search"]["trials"].as_array().unwrap().len(), 50);
    assert_eq!(search[0]["search"]["config"]["seed"], 7);
    assert_eq!(search[0]["check"]["violating_trials"], serde_json::json!([]));
    assert_eq!(v["violations"], 0);
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    for (name, seed) in [("minimal-multiplicity-search.gor", "7"), ("linear-module-dual.gor", "0")] {
        let p = examples().join(name);
        let (mut a, _) = json_run(&p, &["--seed", seed]);
        let (mut b, _) = json_run(&p, &["--seed", seed]);
        without_timings(&mut a);
        without_timings(&mut b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{name}");
    }
    let p = examples().join("minimal-multiplicity-search.gor");
    let (a, _) = json_run(&p, &["--seed", "7"]);
    let (b, _) = json_run(&p, &["--seed", "8"]);
    assert_ne!(results(&a, "search")[0]["search"]["trials"], results(&b, "search")[0]["search"]["trials"]);
}

#[test]
fn parse_errors_exit_five_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = script_file(&dir, "ring R = GF(101)[x,y];\nscan ext(k, M, 1..4);\n");
    let out = gorext(&[p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(exit::PARSE));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column 13") && err.contains("`M`"), "{err}");

    let p = script_file(&dir, "ring R = GF(101)[x,y];\nlet M = cyclic(x + q);\n");
    let (v, code) = json_run(&p, &[]);
    assert_eq!(code, exit::PARSE);
    assert_schema_valid(&v);
    assert_eq!((v["error"]["line"].as_u64(), v["error"]["column"].as_u64()), (Some(2), Some(20)));
}

#[test]
fn hypothesis_and_resource_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = script_file(&dir, "ring S = GF(101)[x,y];\ncheck duality(k, k, 5);\n");
    let (v, code) = json_run(&p, &[]);
    assert_eq!(code, exit::HYPOTHESIS);
    assert_eq!(v["error"]["kind"], "hypothesis");
    assert_schema_valid(&v);

    let p = script_file(&dir, "ring S = GF(101)[x,y];\ncheck duality(k, k, 5, bypass);\n");
    let (v, code) = json_run(&p, &[]);
    assert_eq!(code, exit::OK);
    assert_eq!(results(&v, "check")[0]["bypassed"], true);

    let (v, code) = json_run(&examples().join("linear-module-dual.gor"), &["--degree-cap", "1"]);
    assert_eq!(code, exit::RESOURCE);
    assert_eq!(v["error"]["kind"], "resource");
    let (_, code) = json_run(&examples().join("linear-module-dual.gor"), &["--timeout-secs", "0"]);
    assert_eq!(code, exit::RESOURCE);
}

#[test]
fn violations_set_exit_code_three() {
    let mut report = run_source("ring A = GF(101)[x]/(x^2);\ncheck symmetry(k, k, 4);", &Options::default());
    assert_eq!(report.exit_code(), exit::OK);
    report.entries[1].violations = 1;
    assert_eq!(report.exit_code(), exit::VIOLATION);
    assert_eq!(report.to_json()["exit_code"], exit::VIOLATION);
}

#[test]
fn checks_from_scripts() {
    let src = "ring A = GF(101)[x]/(x^2);
let a = k;
ring B = GF(101)[x]/(x^2);
check external-tensor(a, k, 10);
ring S = GF(101)[x,y];
check change-of-rings(S, x^2, cyclic(x), k, 6);
ring T = GF(101)[x,y]/(x^2, y^2);
check dual-symmetry(cyclic(x), cyclic(y), 6);
check symmetry(cyclic(x), k, 6);
check tensor-mcm(cyclic(x), cyclic(y));
ring Q = GF(101)[x,y,z]/(x*y, x*z, y*z, x^2 - y^2, x^2 - z^2);
check low-tor(cyclic(x), cyclic(y, z));
check betti-formulas(cyclic(x));
";
    let report = run_source(src, &Options::default());
    assert!(report.error.is_none(), "{:?}", report.error);
    let v = report.to_json();
    assert_schema_valid(&v);
    let checks = results(&v, "check");
    let names: Vec<&str> = checks.iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["external-tensor", "change-of-rings", "dual-symmetry", "symmetry", "tensor-mcm", "low-tor", "betti-formulas"]
    );
    for c in &checks[..6] {
        assert_eq!(c["verdict"], "consistent", "{c}");
    }
}

#[test]
fn emit_writes_the_report_so_far() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let table = dir.path().join("out.txt");
    let src = format!(
        "ring S = GF(101)[x,y];\nbetti(k, 3);\nemit json {:?};\nemit table {:?};\n",
        out.to_str().unwrap(),
        table.to_str().unwrap()
    );
    let report = run_source(&src, &Options::default());
    assert!(report.error.is_none(), "{:?}", report.error);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_schema_valid(&written);
    assert_eq!(written["results"].as_array().unwrap().len(), 2);
    let text = std::fs::read_to_string(&table).unwrap();
    assert!(text.contains("total: 1 2 1"), "{text}");
}

#[test]
fn coker_infers_generator_degrees() {
    let src = "ring S = GF(101)[x,y];
module M = coker S [[x, y^2], [0, x]];
show M;
module Z = coker S [[x], [x^2]];
";
    let report = run_source(src, &Options::default());
    assert!(report.error.is_none(), "{:?}", report.error);
    let v = report.to_json();
    let module = results(&v, "bind")[0]["module"].as_str().unwrap().to_string();
    assert!(module.starts_with("coker {gens [0, 1], rels [1, 2]}"), "{module}");
    let src = "ring S = GF(101)[x,y];\nmodule M = coker S [[x, y], [x, y^2]];\n";
    let report = run_source(src, &Options::default());
    let e = report.error.clone().unwrap();
    assert_eq!(report.exit_code(), exit::PARSE);
    assert!(e.message.contains("inconsistent degrees"), "{}", e.message);
}

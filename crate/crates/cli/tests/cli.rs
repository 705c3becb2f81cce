use std::path::PathBuf;
use std::process::{Command as Process, Output};

use galcov_cli::config::{from_json, ConfigDoc};
use galcov_cli::{parse_config, run_command, to_config, CliError, Command, Flags, Model};
use galois_cover::error::Error;
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn load(name: &str) -> Model {
    parse_config(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn galcov(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_galcov")).args(args).output().unwrap()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn hyperelliptic_document() {
    let model = load("hyperelliptic6.json");
    let cover = model.cover();
    assert_eq!(cover.branch_points().len(), 6);
    assert_eq!(cover.genus().unwrap(), 2);
    assert_eq!(cover.group_order(), 2);
}

#[test]
fn unramified_double_cover() {
    let cover = load("unramified_double.json").cover().clone();
    assert_eq!(cover.base_genus(), 1);
    assert!(cover.branch_points().is_empty());
    assert_eq!(cover.validate().unwrap().genus, 1);
}

#[test]
fn branching_over_infinity_is_rejected() {
    let text = std::fs::read_to_string(fixture("branched_at_infinity.json")).unwrap();
    assert!(matches!(parse_config(&text), Err(CliError::Model(Error::BranchedAtInfinity(_)))));
    let named = r#"{"mode":"branch-data","base_genus":1,"group":{"cyclic_orders":[2]},
        "branch_points":[{"label":"inf","psi":[1]},{"label":"P","psi":[1]}]}"#;
    assert!(matches!(parse_config(named), Err(CliError::Model(Error::BranchedAtInfinity(_)))));
}

#[test]
fn schema_errors_name_the_field() {
    let bad = r#"{"mode":"equations","equations":[{"m":2,"factors":[{"point":[0,0],"exp":"x"}]}]}"#;
    match parse_config(bad) {
        Err(CliError::Parse { path, message }) => {
            assert_eq!(path, "equations[0].factors[0].exp");
            assert!(message.contains("line 1"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    let unknown = r#"{"mode":"branch-data","group":{"cyclic_orders":[2]},"colour":1}"#;
    assert!(matches!(parse_config(unknown), Err(CliError::Parse { .. })));
    let rational = r#"{"mode":"equations","equations":[{"m":2,"factors":[{"point":["1/0",0],"exp":2}]}]}"#;
    assert!(matches!(parse_config(rational), Err(CliError::Schema(_))));
}

#[test]
fn documents_round_trip() {
    for name in ["hyperelliptic6.json", "klein_four.json", "unramified_double.json", "s3_six_transpositions.json", "z3_curve.json"] {
        let model = load(name);
        let doc = to_config(&model);
        let text = serde_json::to_string(&doc).unwrap();
        let again = parse_config(&text).unwrap();
        assert_eq!(again, model, "{name}");
        let doc_again: ConfigDoc = from_json(&serde_json::to_string(&to_config(&again)).unwrap()).unwrap();
        assert_eq!(doc_again, doc, "{name}");
    }
}

#[test]
fn command_examples() {
    let h6 = load("hyperelliptic6.json");
    let flags = Flags::default();
    assert_eq!(run_command(Command::Genus, &h6, &flags).unwrap(), serde_json::json!({ "genus": 2 }));
    let counting = Flags { count_only: true, ..Flags::default() };
    assert_eq!(run_command(Command::Nonspecial, &h6, &counting).unwrap()["count"], 15);
    assert_eq!(run_command(Command::DegreeGm1, &h6, &counting).unwrap()["count"], 20);
    let k = load("klein_four.json");
    let report = run_command(Command::Jacobian, &k, &flags).unwrap();
    let total: u64 = report["rational_irreps"].as_array().unwrap().iter().map(|w| w["dim_a"].as_u64().unwrap()).sum();
    assert_eq!(total, 1);
    let omega = run_command(Command::Omega, &h6, &flags).unwrap();
    let dims: Vec<u64> = omega["characters"].as_array().unwrap().iter().map(|c| c["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![0, 2]);
    let cw = run_command(Command::ChevalleyWeil, &h6, &Flags { q: 2, ..Flags::default() }).unwrap();
    assert_eq!(cw["weighted_sum"], cw["total"]);
}

#[test]
fn output_is_byte_identical() {
    for command in ["all", "nonspecial", "traces", "jacobian"] {
        for format in ["json", "table"] {
            let a = galcov(&[command, &path("hyperelliptic6.json"), "--format", format]);
            let b = galcov(&[command, &path("hyperelliptic6.json"), "--format", format]);
            assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
            assert_eq!(a.stdout, b.stdout);
        }
    }
}

#[test]
fn streaming_enumeration() {
    let out = galcov(&["degree-gm1", &path("hyperelliptic6.json"), "--stream"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 20);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["p"], -1);
    }
}

#[test]
fn generic_group_with_irrep_file() {
    let out = galcov(&[
        "chevalley-weil",
        &path("s3_six_transpositions.json"),
        "--irrep-file",
        &path("s3_irreps.json"),
        "--q",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mults: Vec<u64> = v["report"]["irreps"].as_array().unwrap().iter().map(|r| r["multiplicity"].as_u64().unwrap()).collect();
    assert_eq!(mults, vec![3, 0, 3]);
    assert_eq!(v["report"]["total"], 9);
}

fn exit_code(args: &[&str]) -> (i32, serde_json::Value) {
    let out = galcov(args);
    let err = serde_json::from_slice(&out.stderr).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap(), err)
}

#[test]
fn exit_codes_by_family() {
    let h6 = path("hyperelliptic6.json");
    assert_eq!(exit_code(&["genus", &h6]).0, 0);
    assert_eq!(exit_code(&["genus", "/nonexistent/config.json"]).0, 1);
    let (code, err) = exit_code(&["genus", &path("branched_at_infinity.json")]);
    assert_eq!((code, err["error"]["code"].as_str()), (2, Some("BranchedAtInfinity")));
    assert_eq!(exit_code(&["frobnicate", &h6]).0, 2);
    let (code, err) = exit_code(&["omega", &h6, "--q", "0"]);
    assert_eq!((code, err["error"]["code"].as_str()), (4, Some("AdmissibilityViolation")));
    let (code, err) = exit_code(&["nonspecial", &h6, "--cap", "3"]);
    assert_eq!((code, err["error"]["code"].as_str()), (5, Some("OutputTooLarge")));
    let (code, err) = exit_code(&["traces", &h6, "--tau", "0"]);
    assert_eq!((code, err["error"]["code"].as_str()), (2, Some("IdentityElement")));
}

#[test]
fn degenerate_cover_is_a_validation_error() {
    let doc = r#"{"mode":"equations","equations":[
        {"m":2,"factors":[{"point":[1,0],"exp":1},{"point":[2,0],"exp":1}]},
        {"m":2,"factors":[{"point":[1,0],"exp":1},{"point":[2,0],"exp":1}]}]}"#;
    let model = parse_config(doc).unwrap();
    let err = run_command(Command::Genus, &model, &Flags::default()).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    assert_eq!(err.code(), "DegenerateCover");
}

fn branch_docs() -> impl Strategy<Value = String> {
    (prop::collection::vec(2u64..6, 1..3), 0u64..3, prop::collection::vec((-20i64..20, 1i64..5), 0..6))
        .prop_map(|(orders, genus, points)| {
            let bps: Vec<String> = points
                .iter()
                .enumerate()
                .map(|(i, (re, d))| {
                    let psi: Vec<String> = orders.iter().map(|m| ((i as u64 + 1) % m).to_string()).collect();
                    format!(r#"{{"label":["{re}/{d}",{i}],"psi":[{}]}}"#, psi.join(","))
                })
                .collect();
            format!(
                r#"{{"mode":"branch-data","base_genus":{genus},"group":{{"cyclic_orders":[{}]}},"branch_points":[{}]}}"#,
                orders.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
                bps.join(",")
            )
        })
}

proptest! {
    #[test]
    fn parse_serialize_is_idempotent(doc in branch_docs()) {
        if let Ok(model) = parse_config(&doc) {
            let text = serde_json::to_string(&to_config(&model)).unwrap();
            let again = parse_config(&text).unwrap();
            prop_assert_eq!(&again, &model);
            prop_assert_eq!(serde_json::to_string(&to_config(&again)).unwrap(), text);
        }
    }
}

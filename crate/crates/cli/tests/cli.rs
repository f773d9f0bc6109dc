use std::path::{Path, PathBuf};
use std::process::Command;

use clap::Parser;
use serde_json::Value;

use relpres_cli::{run, Cli};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// Arguments ending in `.json` name files under `tests/data`.
fn argv(args: &[&str]) -> Vec<String> {
    let mut out = vec!["relpres".to_string()];
    for a in args {
        if a.ends_with(".json") {
            out.push(data().join(a).display().to_string());
        } else {
            out.push(a.to_string());
        }
    }
    out
}

const CASES: &[(&str, i32, &[&str])] = &[
    ("omega_example", 0, &["omega-check", "example_system.json"]),
    ("omega_triangle", 1, &["omega-check", "triangle_system.json"]),
    (
        "sc_fourth_power",
        1,
        &["sc-check", "fourth_power.json", "--lambda", "1/6"],
    ),
    ("sc_commutator", 0, &["sc-check", "commutator.json", "--lambda", "1/3"]),
    ("sc_malformed", 2, &["sc-check", "malformed.json", "--lambda", "1/6"]),
    ("sc_bad_factor", 2, &["sc-check", "bad_factor.json", "--lambda", "1/6"]),
    (
        "analyze_unimodular",
        0,
        &["analyze", "unimodular.json", "--subfamily", "G1"],
    ),
    ("analyze_generalized", 0, &["analyze", "generalized.json"]),
    ("up_z2_full", 1, &["up-check", "z2_full.json"]),
    ("up_z2_subsets", 0, &["up-check", "z2_subsets.json"]),
    (
        "diagram_c_balloon_validate",
        0,
        &["diagram", "validate", "diagram_c_balloon.json"],
    ),
    (
        "diagram_c_balloon_simulate",
        0,
        &["diagram", "simulate", "diagram_c_balloon.json"],
    ),
    (
        "diagram_c_balloon_parity",
        0,
        &["diagram", "parity", "diagram_c_balloon.json"],
    ),
    (
        "diagram_c_balloon_reduce",
        1,
        &["diagram", "reduce", "diagram_c_balloon.json"],
    ),
    (
        "diagram_b_theta_validate",
        0,
        &["diagram", "validate", "diagram_b_theta.json"],
    ),
    (
        "diagram_b_theta_simulate",
        0,
        &["diagram", "simulate", "diagram_b_theta.json"],
    ),
    (
        "diagram_b_theta_parity",
        0,
        &["diagram", "parity", "diagram_b_theta.json"],
    ),
    (
        "diagram_b_theta_reduce",
        0,
        &["diagram", "reduce", "diagram_b_theta.json"],
    ),
    (
        "diagram_b_theta_reduce_e",
        0,
        &["diagram", "reduce", "diagram_b_theta.json", "--edge", "e"],
    ),
    (
        "diagram_w_sandwich_validate",
        0,
        &["diagram", "validate", "diagram_w_sandwich.json"],
    ),
    (
        "diagram_w_sandwich_simulate",
        0,
        &["diagram", "simulate", "diagram_w_sandwich.json"],
    ),
    (
        "diagram_w_sandwich_parity",
        0,
        &["diagram", "parity", "diagram_w_sandwich.json"],
    ),
    (
        "diagram_w_sandwich_reduce",
        0,
        &["diagram", "reduce", "diagram_w_sandwich.json"],
    ),
    (
        "diagram_c_balloon_corrupted_validate",
        1,
        &["diagram", "validate", "diagram_c_balloon_corrupted.json"],
    ),
    (
        "diagram_lone_face_validate",
        1,
        &["diagram", "validate", "diagram_lone_face.json"],
    ),
];

#[test]
fn reports_match_golden_files() {
    for (name, code, args) in CASES {
        let cli = Cli::try_parse_from(argv(args)).unwrap();
        let outcome = run(&cli);
        let golden = std::fs::read_to_string(data().join("golden").join(format!("{name}.json"))).unwrap();
        assert_eq!(outcome.render(), golden, "{name}");
        assert_eq!(outcome.code, *code, "{name}");
    }
}

#[test]
fn schema_errors_carry_pointers() {
    let cli = Cli::try_parse_from(argv(&["sc-check", "bad_factor.json", "--lambda", "1/6"])).unwrap();
    let out = run(&cli);
    assert_eq!(out.report["error"]["class"], "Schema");
    assert_eq!(out.report["error"]["pointer"], "/relators/0/1/factor");
}

#[test]
fn missing_file_is_an_input_error() {
    let cli = Cli::try_parse_from(argv(&["up-check", "no_such_file.json"])).unwrap();
    let out = run(&cli);
    assert_eq!(out.code, 2);
    assert_eq!(out.report["error"]["class"], "Io");
}

#[test]
fn family_arguments_are_checked() {
    for args in [
        &["sc-check", "--lambda", "1/6"][..],
        &[
            "sc-check",
            "commutator.json",
            "--family",
            "distinct-blocks",
            "--lambda",
            "1/6",
        ],
        &["sc-check", "--family", "distinct-blocks", "--l", "2", "--lambda", "1/6"],
        &["sc-check", "commutator.json", "--lambda", "0"],
        &["sc-check", "commutator.json", "--lambda", "x"],
    ] {
        let out = run(&Cli::try_parse_from(argv(args)).unwrap());
        assert_eq!(out.code, 2, "{args:?}");
        assert_eq!(out.report["error"]["class"], "Arguments", "{args:?}");
    }
}

#[test]
fn built_in_families_run_from_flags() {
    let args = [
        "sc-check",
        "--family",
        "shared-letter",
        "--count",
        "2",
        "--blocks",
        "20",
        "--lambda",
        "1/10",
    ];
    let out = run(&Cli::try_parse_from(argv(&args)).unwrap());
    assert_eq!(out.code, 0);
    assert_eq!(out.report["holds"], Value::Bool(true));
    assert_eq!(out.report["source"]["family"], "shared-letter");
}

fn binary(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_relpres"))
        .args(&argv(args)[1..])
        .output()
        .unwrap();
    (out.status.code().unwrap(), out.stdout)
}

#[test]
fn binary_exit_codes_follow_the_report() {
    assert_eq!(binary(&["omega-check", "example_system.json"]).0, 0);
    assert_eq!(binary(&["omega-check", "triangle_system.json"]).0, 1);
    assert_eq!(binary(&["sc-check", "malformed.json", "--lambda", "1/6"]).0, 2);
    assert_eq!(binary(&["diagram", "validate", "diagram_lone_face.json"]).0, 1);
}

#[test]
fn binary_output_is_deterministic() {
    let args = ["diagram", "simulate", "diagram_w_sandwich.json"];
    let (a, b) = (binary(&args), binary(&args));
    assert_eq!(a, b);
    let golden = std::fs::read(data().join("golden/diagram_w_sandwich_simulate.json")).unwrap();
    assert_eq!(a.1, golden);
}

#[test]
fn output_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("relpres-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("report.json");
    let mut args = argv(&["up-check", "z2_subsets.json"]);
    args.push("--output".into());
    args.push(target.display().to_string());
    let status = Command::new(env!("CARGO_BIN_EXE_relpres"))
        .args(&args[1..])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let written = std::fs::read_to_string(&target).unwrap();
    let golden = std::fs::read_to_string(data().join("golden/up_z2_subsets.json")).unwrap();
    assert_eq!(written, golden);
    std::fs::remove_dir_all(&dir).ok();
}

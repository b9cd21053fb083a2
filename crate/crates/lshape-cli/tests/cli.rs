//! End-to-end contract tests: exit codes, output formats, env handling,
//! and determinism, all through the real binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use lshape::closedform::{
    optimize_asym_ratio_box, optimize_sym_fixed_ratio, optimize_sym_ratio_interval, PlanDims,
    RatioInterval,
};
use lshape::geometry::SymRatio;

fn lshape(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lshape"))
        .args(args)
        .env_remove("LSHAPE_FORMAT")
        .output()
        .expect("binary spawns")
}

fn lshape_env(args: &[&str], env: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lshape"))
        .args(args)
        .env("LSHAPE_FORMAT", env)
        .output()
        .expect("binary spawns")
}

fn out(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout is utf-8")
}

fn err(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("stderr is utf-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by exit, not signal")
}

fn fixture(name: &str) -> String {
    let p: PathBuf =
        [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_str().expect("fixture path is utf-8").to_owned()
}

#[test]
fn sym_fixed_ratio_text_output() {
    let o = lshape(&["optimize", "sym", "--volume", "300", "--ratio", "2"]);
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let s = out(&o);
    assert!(s.contains("symmetric fixed-ratio optimum"), "{s}");
    assert!(s.contains("L = 10.22 m"), "{s}");
    assert!(s.contains("B = 5.11 m"), "{s}");
    assert!(s.contains("H = 3.83 m"), "{s}");
    assert!(s.contains("S = 234.89 m²"), "{s}");
    assert!(s.contains("active constraints: none"), "{s}");
    assert!(s.contains("degenerate: no"), "{s}");
}

#[test]
fn sym_json_is_bit_exact() {
    let o = lshape(&["optimize", "sym", "--volume", "300", "--ratio", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let parsed: serde_json::Value = serde_json::from_str(&out(&o)).expect("valid json");
    let expected = optimize_sym_fixed_ratio(300.0, SymRatio::new(2.0).unwrap()).unwrap();
    assert_eq!(parsed["envelope"].as_f64().unwrap().to_bits(), expected.envelope.to_bits());
    assert_eq!(
        parsed["dims"]["B"].as_f64().unwrap().to_bits(),
        match &expected.dims {
            lshape::closedform::PlanDims::Sym(d) => d.b().to_bits(),
            _ => unreachable!(),
        }
    );
    assert_eq!(parsed["scenario"], "sym-fixed-ratio");
}

#[test]
fn ratio_one_is_rejected_with_degenerate_hint() {
    let o = lshape(&["optimize", "sym", "--volume", "300", "--ratio", "1"]);
    assert_eq!(code(&o), 2);
    let e = err(&o);
    assert!(e.contains("lshape degenerate --volume 300"), "{e}");
    assert!(out(&o).is_empty());
}

#[test]
fn negative_volume_is_a_validation_error() {
    let o = lshape(&["optimize", "sym", "--volume", "-1", "--ratio", "2"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("positive"), "{}", err(&o));
}

#[test]
fn ratio_flags_are_mutually_exclusive_and_one_is_required() {
    let missing = lshape(&["optimize", "sym", "--volume", "300"]);
    assert_eq!(code(&missing), 2);
    let both = lshape(&[
        "optimize", "sym", "--volume", "300", "--ratio", "2", "--ratio-range", "2,3",
    ]);
    assert_eq!(code(&both), 2);
}

#[test]
fn sym_interval_reports_the_active_bound() {
    let o = lshape(&["optimize", "sym", "--volume", "200", "--ratio-range", "3,4"]);
    assert_eq!(code(&o), 0);
    let s = out(&o);
    assert!(s.contains("r ∈ [3, 4]"), "{s}");
    assert!(s.contains("active constraints: r at lower bound 3"), "{s}");
    assert!(s.contains("S = 198.12 m²"), "{s}");
}

#[test]
fn asym_fixed_ratios_text_output() {
    let o = lshape(&["optimize", "asym", "--volume", "300", "--ratios", "0.4,0.6"]);
    assert_eq!(code(&o), 0);
    let s = out(&o);
    assert!(s.contains("L1 = 10.13 m"), "{s}");
    assert!(s.contains("B2 = 6.08 m"), "{s}");
    assert!(s.contains("S = 233.86 m²"), "{s}");
}

#[test]
fn asym_ratio_out_of_convention_is_rejected() {
    let o = lshape(&["optimize", "asym", "--volume", "300", "--ratios", "1.2,0.5"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("r1"), "{}", err(&o));
}

#[test]
fn asym_box_reports_both_active_bounds() {
    let o = lshape(&[
        "optimize", "asym", "--volume", "200", "--ratio-ranges", "0.3,0.5,0.2,0.8",
    ]);
    assert_eq!(code(&o), 0);
    let s = out(&o);
    assert!(s.contains("r1 at upper bound 0.5, r2 at upper bound 0.8"), "{s}");
    assert!(s.contains("S = 168.69 m²"), "{s}");
}

#[test]
fn asym_height_requires_fixed_ratios() {
    let o = lshape(&[
        "optimize", "asym", "--volume", "3", "--ratio-ranges", "0.2,0.4,0.2,0.4",
        "--height", "1",
    ]);
    assert_eq!(code(&o), 2);
    let ok = lshape(&[
        "optimize", "asym", "--volume", "3", "--ratios", "0.5,0.5", "--height", "1",
    ]);
    assert_eq!(code(&ok), 0);
    let s = out(&ok);
    assert!(s.contains("L1 = 2.00 m"), "{s}");
    assert!(s.contains("S = 11.00 m²"), "{s}");
}

#[test]
fn malformed_ratio_list_is_rejected() {
    let o = lshape(&["optimize", "asym", "--volume", "300", "--ratios", "0.4"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("--ratios"), "{}", err(&o));
    let o = lshape(&["optimize", "asym", "--volume", "300", "--ratios", "0.4,abc"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("not a number"), "{}", err(&o));
}

#[test]
fn degenerate_prints_cuboid_with_warning() {
    let o = lshape(&["degenerate", "--volume", "300"]);
    assert_eq!(code(&o), 0);
    let s = out(&o);
    assert!(s.contains("L = B = 8.43 m"), "{s}");
    assert!(s.contains("S = 213.41 m²"), "{s}");
    assert!(s.contains("warning"), "{s}");
    assert!(s.contains("L-form is lost"), "{s}");
    let bad = lshape(&["degenerate", "--volume", "-1"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn env_var_sets_the_default_format() {
    let o = lshape_env(&["optimize", "sym", "--volume", "4", "--ratio", "2"], "json");
    assert_eq!(code(&o), 0);
    assert!(out(&o).starts_with('{'), "{}", out(&o));
}

#[test]
fn flag_beats_env_var() {
    let o = lshape_env(
        &["optimize", "sym", "--volume", "4", "--ratio", "2", "--format", "text"],
        "json",
    );
    assert_eq!(code(&o), 0);
    assert!(out(&o).starts_with("symmetric"), "{}", out(&o));
}

#[test]
fn env_var_naming_an_inapplicable_format_falls_back_to_the_default() {
    let o = lshape_env(&["optimize", "sym", "--volume", "4", "--ratio", "2"], "csv");
    assert_eq!(code(&o), 0);
    assert!(out(&o).starts_with("symmetric"), "{}", out(&o));
}

#[test]
fn env_var_naming_no_format_fails() {
    let o = lshape_env(&["optimize", "sym", "--volume", "4", "--ratio", "2"], "bogus");
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("LSHAPE_FORMAT"), "{}", err(&o));
}

#[test]
fn explicit_inapplicable_format_flag_fails() {
    let o = lshape(&["optimize", "sym", "--volume", "4", "--ratio", "2", "--format", "csv"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("csv"), "{}", err(&o));
}

#[test]
fn output_flag_writes_the_file_instead_of_stdout() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("result.txt");
    let o = lshape(&[
        "--output",
        path.to_str().unwrap(),
        "optimize", "sym", "--volume", "300", "--ratio", "2",
    ]);
    assert_eq!(code(&o), 0);
    assert!(out(&o).is_empty(), "stdout should be empty: {}", out(&o));
    let direct = lshape(&["optimize", "sym", "--volume", "300", "--ratio", "2"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out(&direct));
}

#[test]
fn output_to_an_unwritable_path_is_an_internal_error() {
    let o = lshape(&[
        "--output", "/nonexistent-dir/result.txt",
        "optimize", "sym", "--volume", "300", "--ratio", "2",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn analyze_json_and_csv_fixtures_agree() {
    let j = lshape(&["analyze", "--input", &fixture("houses.json")]);
    assert_eq!(code(&j), 0, "stderr: {}", err(&j));
    let c = lshape(&["analyze", "--input", &fixture("houses.csv")]);
    assert_eq!(code(&c), 0, "stderr: {}", err(&c));
    assert_eq!(out(&j), out(&c));
    let s = out(&j);
    assert!(s.contains("House A (survey plan)"), "{s}");
    assert!(s.contains("→ improvable"), "{s}");
    assert!(s.contains("→ near-optimal"), "{s}");
}

#[test]
fn analyze_renders_json_reports() {
    let o = lshape(&["analyze", "--input", &fixture("houses.json"), "--render", "json"]);
    assert_eq!(code(&o), 0);
    let parsed: serde_json::Value = serde_json::from_str(&out(&o)).expect("valid json");
    let reports = parsed.as_array().expect("array of reports");
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["spec"]["name"], "House A");
    assert_eq!(reports[0]["verdict_fixed_ratios"], "improvable");
    assert_eq!(reports[1]["verdict_fixed_height"], "near-optimal");
}

#[test]
fn analyze_threshold_flips_the_verdict() {
    let o = lshape(&[
        "analyze", "--input", &fixture("houses.json"), "--threshold", "20",
    ]);
    assert_eq!(code(&o), 0);
    assert!(!out(&o).contains("→ improvable"), "{}", out(&o));
    let bad = lshape(&[
        "analyze", "--input", &fixture("houses.json"), "--threshold", "-1",
    ]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn analyze_format_mismatch_and_inference_failures() {
    let o = lshape(&["analyze", "--input", &fixture("houses.json"), "--format", "csv"]);
    assert_eq!(code(&o), 2, "json parsed as csv must fail: {}", err(&o));
    let o = lshape(&["analyze", "--input", "/tmp/specs.dat"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("cannot infer"), "{}", err(&o));
    let o = lshape(&["analyze", "--input", "/nonexistent.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sweep_csv_contract() {
    let o = lshape(&["sweep", "--figure", "fig3", "--samples", "11"]);
    assert_eq!(code(&o), 0);
    let s = out(&o);
    assert!(s.starts_with("axis1,axis2,value\n"), "{}", &s[..60.min(s.len())]);
    assert!(s.contains("# closed-form minima\n"), "{s}");
    assert!(!s.contains('\r'), "CSV must use LF line endings");
    let rows = s.lines().count();
    assert_eq!(rows, 1 + 11 * 11 + 1 + 1, "header, grid, comment, one marker");
}

#[test]
fn sweep_reruns_are_byte_identical() {
    let a = lshape(&["sweep", "--figure", "fig2", "--samples", "31"]);
    let b = lshape(&["sweep", "--figure", "fig2", "--samples", "31"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_json_round_trips_the_grid() {
    let o = lshape(&["sweep", "--figure", "fig5", "--samples", "7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let parsed: serde_json::Value = serde_json::from_str(&out(&o)).expect("valid json");
    assert_eq!(parsed["axes"].as_array().unwrap().len(), 2);
    assert_eq!(parsed["values"].as_array().unwrap().len(), 49);
    assert_eq!(parsed["minima"].as_array().unwrap().len(), 1);
}

#[test]
fn sweep_validation_failures() {
    assert_eq!(code(&lshape(&["sweep", "--figure", "fig9"])), 2);
    assert_eq!(code(&lshape(&["sweep", "--figure", "fig3", "--samples", "1"])), 2);
    assert_eq!(code(&lshape(&["sweep", "--figure", "fig3", "--samples", "5000"])), 2);
    assert_eq!(code(&lshape(&["sweep", "--figure", "fig2", "--l-range", "1,2"])), 2);
    assert_eq!(code(&lshape(&["sweep", "--figure", "fig3", "--b-range", "9,1"])), 2);
    assert_eq!(code(&lshape(&["sweep", "--figure", "fig3", "--volume", "-5"])), 2);
}

#[test]
fn sweep_marker_respects_an_overridden_interval() {
    let o = lshape(&[
        "sweep", "--figure", "fig3", "--samples", "5", "--r-range", "2.5,3.5",
    ]);
    assert_eq!(code(&o), 0);
    let s = out(&o);
    let marker = s.lines().last().unwrap();
    let expected =
        optimize_sym_ratio_interval(200.0, RatioInterval::new(2.5, 3.5).unwrap()).unwrap();
    let b = match &expected.dims {
        PlanDims::Sym(d) => d.b(),
        _ => unreachable!(),
    };
    assert_eq!(marker, format!("{b},2.5,{}", expected.envelope));
}

#[test]
fn check_is_reproducible_and_seed_sensitive() {
    let args = ["check", "--trials", "4", "--seed", "42"];
    let a = lshape(&args);
    let b = lshape(&args);
    assert_eq!(code(&a), 0, "stderr: {}", err(&a));
    assert_eq!(a.stdout, b.stdout);
    let c = lshape(&["check", "--trials", "4", "--seed", "43"]);
    assert_eq!(code(&c), 0);
    assert_ne!(a.stdout, c.stdout, "different seeds must sample differently");
}

#[test]
fn check_seed_is_required() {
    let o = lshape(&["check", "--trials", "4"]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("--seed"), "{}", err(&o));
}

#[test]
fn perturbed_check_fails_with_exit_one() {
    let o = lshape(&["check", "--trials", "2", "--seed", "7", "--perturb", "0.02"]);
    assert_eq!(code(&o), 1);
    assert!(out(&o).contains("CHECK FAILED"), "{}", out(&o));
    assert!(out(&o).contains("KKT certification failed"), "{}", out(&o));
}

#[test]
fn check_rejects_bad_selections() {
    assert_eq!(code(&lshape(&["check", "--seed", "1", "--scenario", "nope"])), 2);
    assert_eq!(code(&lshape(&["check", "--seed", "1", "--trials", "0"])), 2);
}

#[test]
fn check_single_scenario_runs_only_that_scenario() {
    let o = lshape(&[
        "check", "--seed", "5", "--trials", "3", "--scenario", "asym-box", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let parsed: serde_json::Value = serde_json::from_str(&out(&o)).expect("valid json");
    let scenarios = parsed["scenarios"].as_array().unwrap();
    assert_eq!(scenarios.len(), 1);
    assert_eq!(scenarios[0]["scenario"], "asym-box");
    assert_eq!(scenarios[0]["kkt_checked"], 3);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&lshape(&["--help"])), 0);
    assert_eq!(code(&lshape(&["--version"])), 0);
    assert_eq!(code(&lshape(&["optimize", "--help"])), 0);
}

#[test]
fn unknown_subcommand_exits_two() {
    assert_eq!(code(&lshape(&["frobnicate"])), 2);
}

#[test]
fn box_solution_matches_the_library_bit_for_bit() {
    let o = lshape(&[
        "optimize", "asym", "--volume", "200", "--ratio-ranges", "0.3,0.5,0.2,0.8",
        "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let parsed: serde_json::Value = serde_json::from_str(&out(&o)).expect("valid json");
    let expected = optimize_asym_ratio_box(
        200.0,
        RatioInterval::new(0.3, 0.5).unwrap(),
        RatioInterval::new(0.2, 0.8).unwrap(),
    )
    .unwrap();
    assert_eq!(parsed["envelope"].as_f64().unwrap().to_bits(), expected.envelope.to_bits());
    assert_eq!(parsed["active_constraints"].as_array().unwrap().len(), 2);
}

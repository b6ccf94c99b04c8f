//! End-to-end tests of the `scs` binary: exit codes, output schemas,
//! rerun determinism, and the oracle cross-check surface.

use std::process::{Command, Output};

fn scs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

/// Drop the timestamp header line, the only line allowed to differ between
/// reruns of the same configuration.
fn without_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("# generated_unix"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn validate_passes_on_fresh_build() {
    let output = scs(&["validate"]);
    assert!(output.status.success(), "validate failed: {output:?}");
    let text = stdout(&output);
    assert!(text.contains("all suites passed"));
    assert!(text.contains("closed-vs-oracle-states"));
    assert!(text.contains("normalization-two-route"));
}

#[test]
fn herald_check_reports_small_residual() {
    let output = scs(&[
        "herald",
        "--k1",
        "2",
        "--k2",
        "2",
        "--squeeze-db",
        "6",
        "--B",
        "0.5",
        "--check",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("source: closed-form"));
    assert!(text.contains("-> OK"), "missing check verdict: {text}");
}

#[test]
fn herald_zero_click_routes_to_oracle() {
    let output = scs(&[
        "herald",
        "--k1",
        "0",
        "--k2",
        "3",
        "--squeeze-db",
        "6",
        "--B",
        "0.5",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(
        text.contains("oracle (zero-click outcome, no closed form)"),
        "zero-click routing note missing: {text}"
    );
    assert!(text.contains("parity: odd"));
}

#[test]
fn herald_vacuum_ancillas_route_to_oracle() {
    let output = scs(&[
        "herald",
        "--k1",
        "2",
        "--k2",
        "2",
        "--squeeze-db",
        "6",
        "--B",
        "0.5",
        "--ancillas",
        "00",
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("oracle (vacuum ancillas)"));
}

#[test]
fn sweep_row_count_is_patterns_times_steps() {
    // Even family over 26 grid points: 3 patterns x 26 = 78 rows.
    let output = scs(&[
        "sweep",
        "--parity",
        "even",
        "--beta-min",
        "0.5",
        "--beta-max",
        "3",
        "--steps",
        "26",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("beta") && !l.is_empty())
        .count();
    assert_eq!(data_rows, 78);
    assert!(text
        .lines()
        .any(|l| l == "beta,k1,k2,b_opt,s_opt_db,fid_max,probability,evaluations,converged"));
}

#[test]
fn sweep_reruns_are_byte_identical_apart_from_timestamp() {
    let args = [
        "sweep",
        "--patterns",
        "2:2",
        "--beta-min",
        "1",
        "--beta-max",
        "2",
        "--steps",
        "3",
    ];
    let first = scs(&args);
    let second = scs(&args);
    assert!(first.status.success() && second.status.success());
    assert_eq!(
        without_timestamp(&stdout(&first)),
        without_timestamp(&stdout(&second))
    );
}

#[test]
fn compare_emits_gain_columns() {
    let output = scs(&[
        "compare",
        "--patterns",
        "22",
        "--baseline-sdb",
        "9",
        "--beta-min",
        "2",
        "--beta-max",
        "3",
        "--steps",
        "2",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text
        .lines()
        .any(|l| l == "beta,k1,k2,fid11,fid00,g_db,p11,p00,j_db,baseline_s_db,feasible"));
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && l.contains(",2,2,"))
        .collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row.ends_with("true"), "expected feasible rows: {row}");
    }
}

#[test]
fn distribution_totals_near_unity() {
    let output = scs(&["distribution", "--squeeze-db", "3", "--B", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let total_line = text
        .lines()
        .find(|l| l.starts_with("# total_probability"))
        .expect("total header present");
    let total: f64 = total_line
        .rsplit('=')
        .next()
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((total - 1.0).abs() < 1e-8, "total probability {total}");
}

#[test]
fn json_output_mirrors_csv_fields() {
    let output = scs(&[
        "sweep",
        "--patterns",
        "2:2",
        "--beta-min",
        "1",
        "--beta-max",
        "1",
        "--steps",
        "1",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid json");
    assert_eq!(value["command"], "sweep");
    assert!(value["config"]["optimizer"]["grid_b"].is_u64());
    let rows = value["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 1);
    for key in [
        "beta",
        "k1",
        "k2",
        "b_opt",
        "s_opt_db",
        "fid_max",
        "probability",
        "evaluations",
        "converged",
    ] {
        assert!(rows[0].get(key).is_some(), "missing field {key}");
    }
}

#[test]
fn domain_errors_exit_two() {
    let output = scs(&[
        "herald",
        "--k1",
        "2",
        "--k2",
        "2",
        "--squeeze-db",
        "6",
        "--B",
        "-1",
    ]);
    assert_eq!(output.status.code(), Some(2));

    let output = scs(&[
        "sweep",
        "--patterns",
        "2:x",
        "--beta-min",
        "1",
        "--beta-max",
        "2",
        "--steps",
        "2",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn truncation_errors_exit_three() {
    let config_path =
        std::env::temp_dir().join(format!("scs-cli-test-{}.json", std::process::id()));
    std::fs::write(&config_path, r#"{"cutoff": 8}"#).unwrap();
    let output = scs(&[
        "--config",
        config_path.to_str().unwrap(),
        "herald",
        "--k1",
        "2",
        "--k2",
        "2",
        "--squeeze-db",
        "10",
        "--B",
        "0.5",
    ]);
    std::fs::remove_file(&config_path).ok();
    assert_eq!(output.status.code(), Some(3), "{output:?}");
}

#[test]
fn config_file_overrides_and_echo() {
    let config_path =
        std::env::temp_dir().join(format!("scs-cli-grid-{}.json", std::process::id()));
    std::fs::write(
        &config_path,
        r#"{"optimizer": {"grid_b": 12, "grid_s": 12}}"#,
    )
    .unwrap();
    let output = scs(&[
        "--config",
        config_path.to_str().unwrap(),
        "sweep",
        "--patterns",
        "22",
        "--beta-min",
        "1",
        "--beta-max",
        "1",
        "--steps",
        "1",
    ]);
    std::fs::remove_file(&config_path).ok();
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(
        text.contains("\"grid_b\":12"),
        "effective config not echoed: {text}"
    );
}

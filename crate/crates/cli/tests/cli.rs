//! End-to-end tests of the binary: golden outputs, the JSON envelope,
//! bound enforcement and exit codes.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bielliptic"));
    // The tests pin the default bounds; the ambient environment must not
    // leak in.
    cmd.env_remove("BIELLIPTIC_MAX_N")
        .env_remove("BIELLIPTIC_MAX_WEIGHT")
        .env_remove("BIELLIPTIC_MAX_D");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn branch_json_envelope_and_golden_terms() {
    let stdout = stdout_of(&["branch", "--l", "1", "--m", "1", "--format", "json"]);
    assert!(
        stdout.contains(r#"{"terms":[{"label":"U0-","twist":0},{"label":"U1-","twist":0}]}"#),
        "golden result substring missing from {stdout}"
    );
    let record: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(record["schema"], 1);
    assert_eq!(record["command"], "branch");
    assert_eq!(record["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(record["parameters"]["l"], 1);
    assert_eq!(record["parameters"]["m"], 1);
    assert_eq!(record["parameters"]["twisted"], false);
    assert!(record.get("timing_ms").is_none(), "timing only when asked");
}

#[test]
fn euler_latex_of_the_unpointed_locus() {
    let stdout = stdout_of(&["euler", "--n", "0", "--format", "latex"]);
    assert_eq!(stdout, "$\\mathbf{L}^2-\\mathbf{L}$\n");
}

#[test]
fn euler_filtered_alternating_coefficient() {
    let stdout = stdout_of(&["euler", "--n", "6", "--filter", "1^6"]);
    assert_eq!(stdout, "S[2,8] - L^4 + 3L + 5\n");
}

#[test]
fn euler_table_through_four_points() {
    let stdout = stdout_of(&["euler", "--n", "4", "--from", "0"]);
    let want = "\
n=0: L^2 - L
n=1: (L^3 - L) s[1]
n=2: (L^4 - L^2 + L) s[2] + (L^3 - L^2 - L + 2) s[1,1]
n=3: (L^5 - 2L^3 + 2L^2 + L - 2) s[3] + (L^4 - L^3 + 2L) s[2,1] + (-L^2 + L + 2) s[1,1,1]
n=4: (L^6 - 2L^4 + L^3 + L^2 - 3L) s[4] + (L^5 - 2L^4 + L^3 + 3L^2 - L - 2) s[3,1] + (L^4 - L^2 - L + 3) s[2,2] + (-L^3 + 5L + 2) s[2,1,1] + (-L^3 - L^2 + L + 3) s[1,1,1,1]
";
    assert_eq!(stdout, want);
}

#[test]
fn euler_empty_range_prints_nothing() {
    let out = run(&["euler", "--n", "2", "--from", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "expected no output");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["euler", "--n", "3", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-equal");
    let record: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let rows = record["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["n"], 3);
    assert_eq!(rows[0]["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn out_flag_matches_stdout() {
    let path = std::env::temp_dir().join(format!("bielliptic-out-{}.json", std::process::id()));
    let direct = stdout_of(&["dims", "--group", "gamma0(2)", "--weight", "8", "--format", "json"]);
    let out = run(&[
        "dims",
        "--group",
        "gamma0(2)",
        "--weight",
        "8",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "--out redirects away from stdout");
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, direct);
}

#[test]
fn verification_suites_pass() {
    let stdout = stdout_of(&["verify", "sl2", "--d", "3"]);
    assert!(stdout.contains("PASS sl2"), "got {stdout}");
    let stdout = stdout_of(&["verify", "--suite", "gysin", "--format", "json"]);
    let record: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(record["result"]["passed"], true);
    assert_eq!(record["result"]["suites"][0]["name"], "gysin");
}

#[test]
fn usage_errors_exit_with_code_two() {
    let cases: &[&[&str]] = &[
        &["verify", "nonsense"],
        &["euler", "--n", "9"],
        &["euler", "--n", "3", "--filter", "2,2"],
        &["branch", "--wreath", "U9,1", "--max-weight", "9"],
        &["ec", "--space", "m", "--system", "W[0,1]"],
        &["branch", "--twisted"],
        &["dims", "--group", "gamma0(8)", "--weight", "8"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "exit code for {args:?}");
        assert!(!out.stderr.is_empty(), "diagnostic for {args:?}");
    }
}

#[test]
fn env_variables_set_the_default_bounds() {
    let out = bin()
        .env("BIELLIPTIC_MAX_N", "2")
        .args(["euler", "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .env("BIELLIPTIC_MAX_N", "9")
        .args(["euler", "--n", "9"])
        .output()
        .unwrap();
    assert!(out.status.success(), "raised bound admits n = 9");
}

#[test]
fn twisted_pullbacks_are_weight_homogeneous_in_the_output() {
    let stdout = stdout_of(&["branch", "--l", "3", "--m", "1", "--twisted"]);
    assert_eq!(stdout, "L U2,0 + U3,1 + L U1- + U2-\n");
    let stdout = stdout_of(&["branch", "--wreath", "U2+", "--twisted"]);
    assert_eq!(stdout, "V4+ + L V2- + L^2 V0+\n");
}

#[test]
fn stratum_classes_render_in_all_formats() {
    assert_eq!(
        stdout_of(&["ec", "--space", "m", "--system", "W[6,0]"]),
        "S[2,8] + L^2 + 5\n"
    );
    assert_eq!(
        stdout_of(&["ec", "--space", "m", "--system", "6,0", "--format", "latex"]),
        "$\\mathbf{S}_8(\\Gamma_0(2))+\\mathbf{L}^2+5$\n"
    );
    assert_eq!(
        stdout_of(&["ec", "--space", "delta", "--system", "U2+"]),
        "L^3 - 1\n"
    );
    let y2 = stdout_of(&["ec", "--space", "y2", "--system", "V6"]);
    assert_eq!(y2, "s3: even 0, odd 1\ns21: even 0, odd S[2,8] + 1\ns111: even 0, odd 0\n");
}

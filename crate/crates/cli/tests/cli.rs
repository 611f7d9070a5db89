use std::process::Command;

use clap::Parser;
use sylwave::numerics::scalar_parse;
use sylwave::PrecisionContext;
use sylwave_cli::{cli_main, exit_code, run, Cli, EXIT_OK, EXIT_PRECISION, EXIT_USAGE};

fn out(args: &[&str]) -> String {
    let mut argv = vec!["sylwave"];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).expect("arguments parse");
    match run(&cli) {
        Ok(s) => s,
        Err(f) => panic!("{args:?}: {}", f.error),
    }
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sylwave")).args(args).output().unwrap()
}

#[test]
fn wave_polynomials_print_over_common_denominator() {
    assert_eq!(out(&["wave", "--k", "2", "--N", "5", "--poly"]), "[2n+15, -2n-15]/128\n");
    assert_eq!(out(&["wave", "--k", "1", "--N", "1", "--poly"]), "[1]\n");
}

#[test]
fn dilog_zero_prints_thirty_figures_at_forty_digits() {
    let s = out(&["--digits", "40", "dilog-zero", "--A", "0", "--B", "-1"]);
    let text = s.trim().trim_start_matches('~');
    assert!(text.starts_with("0.9161978162"), "{text}");
    let c = PrecisionContext::new(40).unwrap();
    let w = scalar_parse(text, &c).unwrap();
    assert!((w.im.to_f64() + 0.1824588972).abs() < 1e-10);
    let mantissa: String = text.split(['+', '-']).next().unwrap().chars().filter(char::is_ascii_digit).collect();
    assert_eq!(mantissa.trim_start_matches('0').len(), 30);
}

#[test]
fn identity_passes() {
    let s = out(&["identity", "--N", "150", "--n", "150"]);
    assert!(s.starts_with("PASS residual="), "{s}");
    assert!(s.contains("farey_count"));
}

#[test]
fn verify_marks_values_and_unverified_values_carry_a_tilde() {
    let plain = out(&["wave", "--k", "1", "--N", "8", "--n", "8"]);
    assert!(plain.starts_with("~21.41"), "{plain}");
    let checked = out(&["--verify", "wave", "--k", "1", "--N", "8", "--n", "8"]);
    assert!(checked.starts_with("21.41"), "{checked}");
    let csv = out(&["--verify", "--format", "csv", "wave", "--k", "1", "--N", "8", "--n", "8"]);
    assert!(csv.ends_with(",verified\n"), "{csv}");
}

#[test]
fn csv_and_json_layouts() {
    let csv = out(&["--format", "csv", "coeffs", "--family", "a", "--lambda", "1", "--m", "2"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,coefficient,precision");
    assert_eq!(lines.len(), 3);
    let json = out(&["--format", "json", "pn", "--n", "100", "--hrr", "3"]);
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["p(n)"], "190569292");
    assert!(v["hrr"].as_str().unwrap().starts_with("1905692"));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["p(n)", "hrr", "precision"]);
}

#[test]
fn tables_are_byte_stable() {
    let args = ["--format", "csv", "table", "a1_approx", "--rows", "300", "--lambdas", "1,2", "--m", "1,2"];
    let a = out(&args);
    let b = out(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("N,lambda,m=1,m=2,"), "{a}");
    assert_eq!(a.lines().count(), 3);
}

#[test]
fn slow_cells_are_skipped_without_the_flag() {
    let s = out(&["--format", "json", "table", "first_wave_sizes", "--rows", "1500"]);
    let v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
    assert!(v["W_1(n,n)"].is_null());
    let s = out(&["table", "first_wave_sizes", "--rows", "1500"]);
    assert!(s.contains("(slow)"));
}

#[test]
fn ratio_table_routes_agree() {
    let fast = out(&["--format", "csv", "table", "w1_ratio", "--rows", "275"]);
    let exact = out(&["--format", "csv", "--sig", "6", "table", "w1_ratio", "--rows", "275", "--exact"]);
    let cell = |s: &str| s.lines().nth(1).unwrap().split(',').nth(1).unwrap().to_string();
    assert_eq!(cell(&fast), "-4.17495e0");
    assert_eq!(cell(&exact), "-4.17495e0");
}

#[test]
fn exit_codes() {
    assert_eq!(cli_main(["sylwave", "--help"]), EXIT_OK);
    assert_eq!(cli_main(["sylwave", "frobnicate"]), EXIT_USAGE);
    assert_eq!(cli_main(["sylwave", "wave", "--k", "3"]), EXIT_USAGE);
    assert_eq!(cli_main(["sylwave", "--digits", "20", "pn", "--n", "5"]), EXIT_USAGE);
    assert_eq!(cli_main(["sylwave", "table", "nonsense"]), EXIT_USAGE);
    assert_eq!(cli_main(["sylwave", "dilog-zero", "--A", "1", "--B", "-1"]), EXIT_USAGE);
    assert_eq!(cli_main(["sylwave", "identity", "--N", "50", "--n", "3"]), EXIT_USAGE);
    assert_eq!(exit_code(&sylwave::Error::IdentityFailure("x".into())), EXIT_PRECISION);
    assert_eq!(exit_code(&sylwave::Error::Precision("x".into())), EXIT_PRECISION);
}

#[test]
fn binary_reports_errors_on_stderr() {
    let ok = binary(&["prestricted", "--N", "3", "--n", "-10"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "4\n");
    let bad = binary(&["saddle", "--m", "0", "--d", "0"]);
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("sylwave: "));
}

#[test]
fn digits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sylwave"))
        .args(["dilog-zero", "--A", "0", "--B", "-1"])
        .env("SYLWAVE_DIGITS", "35")
        .output()
        .unwrap();
    let s = String::from_utf8_lossy(&o.stdout);
    let re: String = s.trim().trim_start_matches('~').split(['+', '-']).next().unwrap().into();
    assert_eq!(re.len(), "0.".len() + 25, "{s}");
}

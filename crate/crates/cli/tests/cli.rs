//! End-to-end tests of the `qmac` binary: exit codes, output schemas,
//! flag handling, and determinism under parallel execution.

use std::process::{Command, Output};

fn qmac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmac"))
        .args(args)
        .env_remove("QMAC_ORDER")
        .output()
        .expect("binary runs")
}

fn qmac_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qmac"));
    cmd.args(args).env_remove("QMAC_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn coeffs_text_table() {
    let o = qmac(&["coeffs", "inv(theta6)", "-N", "6"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for v in ["1", "5", "18", "55", "149", "371", "867"] {
        assert!(out.contains(v), "missing {v} in:\n{out}");
    }
}

#[test]
fn coeffs_empty_table_is_success() {
    // q truncated to order 0 retains nothing: empty table, exit 0
    let o = qmac(&["coeffs", "q", "--order", "0"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1, "only the header:\n{out}");
}

#[test]
fn coeffs_laurent_inverse_of_q() {
    let o = qmac(&["coeffs", "inv(q)", "-N", "0"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2, "{out}"); // exponents -1 and 0
    assert!(rows[0].trim().starts_with("-1"));
    assert!(rows[0].trim().ends_with('1'));
}

#[test]
fn coeffs_errors_exit_2_with_diagnostics() {
    let o = qmac(&["coeffs", "q@", "-N", "5"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("at 1..2") && err.contains("illegal character"), "{err}");

    let o = qmac(&["coeffs", "inv(0)", "-N", "5"]);
    assert_eq!(code(&o), 2);

    let o = qmac(&["coeffs", "poch(0, 0)", "-N", "5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn coeffs_json_uses_decimal_strings() {
    let o = qmac(&["coeffs", "inv(poch(1,1)^3)", "-N", "4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid json");
    assert_eq!(v["order"], 4);
    let rows = v["coefficients"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[3]["exponent"], 3);
    assert_eq!(rows[3]["coefficient"], "22");
}

#[test]
fn coeffs_csv_schema() {
    let o = qmac(&["coeffs", "theta6", "-N", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("exponent,coefficient"));
    assert_eq!(lines.next(), Some("0,1"));
    assert_eq!(lines.next(), Some("1,-5"));
    assert_eq!(lines.next(), Some("2,7"));
}

#[test]
fn verify_passes_and_reports() {
    let o = qmac(&["verify", "THM-QUIN", "--n", "-1..1", "-N", "25"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("exact-to-order").count(), 3);

    let o = qmac(&["verify", "LEM-QUIN", "--n", "1..3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("valid-to-claimed-order").count(), 3);
}

#[test]
fn verify_domain_errors_exit_2() {
    let o = qmac(&["verify", "THM16", "--l", "1", "--n", "1"]);
    assert_eq!(code(&o), 2);

    let o = qmac(&["verify", "NO-SUCH-ID"]);
    assert_eq!(code(&o), 2);

    let o = qmac(&["verify", "LEM-QUIN", "--n", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_json_schema_and_ordering() {
    let o = qmac(&[
        "verify", "JTP1", "--beta", "0..1", "--k", "0..1", "-N", "20", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid json");
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for key in ["identity", "params", "order", "outcome", "first_mismatch", "millis", "variant"] {
        assert!(rows[0].get(key).is_some(), "missing key {key}");
    }
    assert_eq!(rows[0]["identity"], "JTP1");
    assert_eq!(rows[0]["outcome"], "exact-to-order");
    assert_eq!(rows[0]["first_mismatch"], serde_json::Value::Null);
    // sorted by parameters: (beta, k) ascending
    let cells: Vec<(i64, i64)> = rows
        .iter()
        .map(|r| (r["params"]["beta"].as_i64().unwrap(), r["params"]["k"].as_i64().unwrap()))
        .collect();
    assert_eq!(cells, [(0, 0), (0, 1), (1, 0), (1, 1)]);
}

#[test]
fn verify_csv_schema() {
    let o = qmac(&["verify", "OS1", "--k", "0..1", "-N", "20", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("identity,params,order,outcome,first_mismatch,millis,variant\n"));
    assert!(out.contains("OS1,k=0,20,exact-to-order"), "{out}");
}

#[test]
fn verify_parallel_output_is_deterministic() {
    let args = ["verify", "JTP2", "--gamma", "0..1", "--k", "0..2", "-N", "20", "--format", "csv"];
    let seq = qmac(&args);
    let mut par_args: Vec<&str> = args.to_vec();
    par_args.extend(["--jobs", "4"]);
    let par = qmac(&par_args);
    assert_eq!(code(&seq), 0);
    assert_eq!(code(&par), 0);
    // timings differ between runs; compare everything but the millis column
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                let cols: Vec<&str> = l.split(',').collect();
                cols.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != 5)
                    .map(|(_, c)| *c)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    assert_eq!(strip(&stdout(&seq)), strip(&stdout(&par)));
}

#[test]
fn env_var_sets_default_order_and_flag_wins() {
    let o = qmac_env(&["verify", "THM-QUIN", "--n", "0"], &[("QMAC_ORDER", "22")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order=22"), "{}", stdout(&o));

    let o = qmac_env(&["verify", "THM-QUIN", "--n", "0", "-N", "30"], &[("QMAC_ORDER", "22")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order=30"), "{}", stdout(&o));
}

#[test]
fn verify_bivariate_ids() {
    let o = qmac(&["verify", "QUINTUPLE", "-N", "30"]);
    assert_eq!(code(&o), 0);
    let o = qmac(&["verify", "JTP-EVEN", "-N", "30"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn corollary_tables() {
    let o = qmac(&["corollary", "quin", "--n", "6"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("867"), "{out}");
    assert!(!out.contains("NO"), "{out}");

    let o = qmac(&["corollary", "sept14", "--n", "5", "--m", "0..5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for v in ["6", "26", "91", "282", "793"] {
        assert!(out.contains(v), "{out}");
    }

    let o = qmac(&["corollary", "sept23", "--n", "5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("5,597,597,true"), "{}", stdout(&o));

    // m beyond n is a usage error
    let o = qmac(&["corollary", "quin", "--n", "2", "--m", "0..3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bench_runs() {
    let o = qmac(&["bench", "--orders", "60"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("invert_ms"));

    let o = qmac(&["bench", "--orders", "40", "--n100", "--m-max", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("11 index pairs k=90..110"), "{out}");
    assert!(out.contains("a(  4) = 149"), "{out}");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qmac-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.csv");
    let o = qmac(&[
        "coeffs",
        "A(1)",
        "-N",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("1,1\n2,3\n3,4"), "{content}");
    std::fs::remove_dir_all(&dir).ok();
}

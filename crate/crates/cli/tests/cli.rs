use std::process::{Command, Output};

fn qlogistic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlogistic")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
        .to_string()
}

#[test]
fn constants() {
    let out = qlogistic(&["constants"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q0 = 10.346651929052\nq1 = 6.025724834505\n");
}

#[test]
fn horseshoe_entropy() {
    let out = qlogistic(&["entropy", "--chain", "0.5", "--r", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let h: f64 = field(&text, "entropy").parse().unwrap();
    assert!((h - std::f64::consts::LN_2).abs() <= 2e-4);
    assert_eq!(field(&text, "status"), "CONVERGED");
}

#[test]
fn eval_identity_chain() {
    let out = qlogistic(&["eval", "--chain", "1", "--r", "2.5", "--x", "0.6"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "value"), "0.600000");
}

#[test]
fn chain_order_is_application_order() {
    let a = stdout(&qlogistic(&["eval", "--chain", "3,0.5", "--r", "3.7", "--x", "0.3"]));
    let b = stdout(&qlogistic(&["eval", "--chain", "0.5,3", "--r", "3.7", "--x", "0.3"]));
    assert_ne!(a, b);
    let single = stdout(&qlogistic(&["eval", "--q", "0.5", "--r", "3.7", "--x", "0.3"]));
    assert_eq!(field(&single, "value"), "0.832842");
}

#[test]
fn fixed_points_report() {
    let text = stdout(&qlogistic(&["fixed-points", "--chain", "1", "--r", "2.5"]));
    assert_eq!(field(&text, "gas"), "0.600000");
    assert_eq!(field(&text, "scenario"), "NONZERO_GAS");
}

#[test]
fn lyapunov_and_laps() {
    let text = stdout(&qlogistic(&["lyapunov", "--r", "4"]));
    assert_eq!(field(&text, "lyapunov"), "1.38629");
    let text = stdout(&qlogistic(&["lyapunov", "--r", "2"]));
    assert_eq!(field(&text, "lyapunov"), "-inf");
    let text = stdout(&qlogistic(&["lap-oracle", "--r", "4", "--n", "10"]));
    assert_eq!(field(&text, "c_10"), "1024");
    assert_eq!(field(&text, "estimate"), "0.693147");
}

#[test]
fn exit_codes() {
    assert_eq!(qlogistic(&["entropy", "--r", "5"]).status.code(), Some(3));
    assert_eq!(qlogistic(&["eval", "--chain=-1", "--r", "3", "--x", "0.5"]).status.code(), Some(3));
    assert_eq!(qlogistic(&["lap-oracle", "--r", "4", "--n", "26"]).status.code(), Some(4));
    assert_eq!(qlogistic(&["entropy"]).status.code(), Some(2));
    assert_eq!(qlogistic(&["frobnicate"]).status.code(), Some(2));
    let out = qlogistic(&[
        "sweep",
        "--quantity",
        "entropy",
        "--pattern",
        "q1q2",
        "--axis1",
        "0..1:0.5",
        "--axis2",
        "0..1:0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn sweep_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let manifest = dir.path().join("grid.txt");
    let out = qlogistic(&[
        "sweep",
        "--quantity",
        "entropy",
        "--axis1",
        "0..1:0.5",
        "--axis2",
        "3.9..=4:0.1",
        "--mask-threshold",
        "0.6",
        "--out",
        csv.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text, "axis1,axis2,value\n0.5,3.9,0\n0.5,4,1\n");
    let m = std::fs::read_to_string(&manifest).unwrap();
    assert!(m.contains("pattern = single"));
    assert!(m.contains("entropy_tolerance = 0.0001"));
}

#[test]
fn sweep_is_reproducible() {
    let args = [
        "sweep",
        "--quantity",
        "lyapunov",
        "--pattern",
        "k2",
        "--axis1",
        "0..2:0.25",
        "--axis2",
        "3.5..=4:0.1",
    ];
    let a = qlogistic(&args);
    let mut with_threads = args.to_vec();
    with_threads.extend(["--threads", "3"]);
    let b = qlogistic(&with_threads);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 7 * 6);
}

#[test]
fn bifurcation_csv() {
    let out = qlogistic(&[
        "bifurcation",
        "--chain-template",
        "1",
        "--from",
        "2.5",
        "--to",
        "2.7",
        "--step",
        "0.1",
        "--tail",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "param,iterate_index,x");
    assert_eq!(lines.len(), 1 + 3 * 2);
    assert!(lines[1].starts_with("2.5,9999,5.99999"));
    assert!(lines[6].starts_with("2.7,10000,"));

    let out = qlogistic(&[
        "bifurcation",
        "--chain-template",
        "q",
        "--param",
        "q",
        "--from",
        "0.5",
        "--to",
        "0.5",
        "--step",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2), "fixed r is required");
}

#[test]
fn help_documents_defaults() {
    let text = stdout(&qlogistic(&["bifurcation", "--help"]));
    assert!(text.contains("[default: 100]"));
    assert!(text.contains("[default: 0.45]"));
    let text = stdout(&qlogistic(&["entropy", "--help"]));
    assert!(text.contains("[default: 0.0001]"));
}

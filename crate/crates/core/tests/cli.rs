use std::process::{Command, Output};

use galois2::certifier::{Certificate, Reason, Status};
use serde_json::Value;

fn galois2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois2"))
        .args(args)
        .env_remove("GALOIS2_FACTOR_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn certify_single_parameter() {
    let o = galois2(&["certify", "--f", "x^3-2", "--lambda", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let c = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!(c.gamma_level.as_deref(), Some("4"));
}

#[test]
fn certify_roots() {
    let o = galois2(&["certify", "--roots", "0,1,6"]);
    assert_eq!(o.status.code(), Some(0));
    let c = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!(c.status, Status::Certified);
    assert_eq!(
        c.witnesses.iter().map(|w| (w.p.as_str(), w.m)).collect::<Vec<_>>(),
        [("3", 1), ("5", 1)]
    );
}

#[test]
fn certify_reducible_exits_one() {
    let o = galois2(&["certify", "--f", "x^2-1", "--lambda", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let c = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!(c.status, Status::NotCertified(Reason::Reducible));
}

#[test]
fn printed_certificates_round_trip_byte_identically() {
    for args in [
        &["certify", "--f", "x^3-2", "--lambda", "3"][..],
        &["certify", "--f", "x^3-2", "--lambda", "3", "--lambda2", "10"],
        &["certify", "--roots", "0,1,2"],
    ] {
        let text = stdout(&galois2(args));
        let c = Certificate::from_json(&text).unwrap();
        assert_eq!(c.to_json() + "\n", text);
    }
}

#[test]
fn human_output_states_the_criterion() {
    let o = galois2(&["--format", "human", "certify", "--f", "x^3-2", "--lambda", "3"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("criterion: ")), "{text}");
    assert!(text.contains("Gamma(4)"));
}

#[test]
fn negative_parameters_and_big_inputs() {
    let o = galois2(&["certify", "--f", "x^3-2", "--lambda", "-172"]);
    assert_eq!(o.status.code(), Some(0));
    let big = "123456789012345678901234567890";
    let o = galois2(&["certify", "--roots", &format!("0,1,{big}")]);
    assert!(matches!(o.status.code(), Some(0 | 1 | 3)), "{o:?}");
}

#[test]
fn verify_suites() {
    let o = galois2(&["verify", "lemma33", "--g", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["rank"], 10);
    assert_eq!(v["report"]["dimension"], 10);

    let o = galois2(&["verify", "prop32", "--g", "1", "--n", "1", "--nprime", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["contained"], true);
    assert_eq!(v["report"]["strict"], true);
    assert_eq!(v["report"]["level"], 3);

    let o = galois2(&["verify", "prop34", "--n", "1", "--layers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["generated_order"], 64);

    let o = galois2(&["verify", "cclass", "--g", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["even_discrepancies"], serde_json::json!([2, 4]));

    let o = galois2(&["verify", "moebius", "--roots", "0,1,6", "--p", "5", "--beta", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["shifted"], serde_json::json!(["0", "3/2", "-6"]));
}

#[test]
fn verify_aliases() {
    assert_eq!(galois2(&["verify", "sp-basis", "--g", "1"]).status.code(), Some(0));
    assert_eq!(
        galois2(&["verify", "degree-four", "--n", "2", "--layers", "1"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn cap_exceeded_exits_two() {
    let o = galois2(&[
        "verify", "prop32", "--g", "2", "--n", "1", "--nprime", "1", "--cap", "1000",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn scan_reports() {
    let o = galois2(&["scan", "--f", "x^3-2", "--from", "-50", "--to", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let non: Vec<&str> = v["non_certified"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    for l in ["0", "1", "2"] {
        assert!(non.contains(&l));
    }
    assert_eq!(v["counts"]["total"], 101);

    let v = json(&galois2(&["scan", "--f", "x^2+1", "--from", "0", "--to", "10"]));
    assert_eq!(v["entries"][0]["outcome"], "UnitValue");

    let v = json(&galois2(&["scan", "--f", "x^2+1", "--from", "3", "--to", "2"]));
    assert_eq!(v["counts"]["total"], 0);
    assert_eq!(v["entries"], serde_json::json!([]));
}

#[test]
fn disc_and_factor() {
    let v = json(&galois2(&["disc", "--f", "[1,1,0,0,1]"]));
    assert_eq!(v["discriminant"], "229");
    let v = json(&galois2(&["factor", "600851475143"]));
    assert_eq!(v["factors"][3]["p"], "6857");
}

#[test]
fn factoring_budget_from_environment() {
    // Product of two primes above the tiny trial bound.
    let n = "1000000000039000000000319";
    let o = Command::new(env!("CARGO_BIN_EXE_galois2"))
        .args(["factor", n])
        .env("GALOIS2_FACTOR_BUDGET", "10,1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["status"], "Abstained");
    assert_eq!(galois2(&["factor", n]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        galois2(&["certify", "--f", "2x^3", "--lambda", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(galois2(&["certify", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(galois2(&["certify", "--roots", "0,1,x"]).status.code(), Some(2));
    assert_eq!(galois2(&["bogus"]).status.code(), Some(2));
    assert_eq!(galois2(&["--help"]).status.code(), Some(0));
}

//! End-to-end tests of the `quintic` binary: output formats and the
//! documented exit-code contract (0 success, 1 verification failure,
//! 2 usage error).

use std::process::Command;

use quintic_core::arith::{int, Int};
use quintic_core::mpoly::MPoly;
use quintic_core::quintics::QuinticEquation;
use quintic_core::search::verify_solution;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_quintic"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn family_json_evaluates_to_the_known_point() {
    let (stdout, _, code) = run(&["family", "--name", "bremner", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(doc["name"], "bremner");
    assert_eq!(doc["verified"], true);
    let at_one = |key: &str| -> Int {
        let poly = MPoly::parse(doc["sols"][key].as_str().unwrap(), None).unwrap();
        poly.eval(&[("u", int(1))]).unwrap()
    };
    assert_eq!(at_one("x1"), int(68));
    assert_eq!(at_one("x2"), int(20));
    assert_eq!(at_one("x3"), int(81));
    let t = MPoly::parse(doc["t"].as_str().unwrap(), None)
        .unwrap()
        .eval(&[("u", int(1))])
        .unwrap();
    assert_eq!(&t * &t, int(70313) * int(70313));
}

#[test]
fn family_with_rational_parameter() {
    let (stdout, _, code) = run(&["family", "--name", "four-fifth", "--n", "3/2", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["params"]["n"], "3/2");
}

#[test]
fn verify_symbolic_quadratic_family_passes() {
    let (stdout, _, code) = run(&["verify", "--family", "pos1", "--symbolic"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("PASS pos1"));
}

#[test]
fn verify_exit_code_signals_failure() {
    // Forcing an untrue content claim makes the divisibility clause fail:
    // exit 1, not a usage error.
    let (stdout, _, code) =
        run(&["verify", "--family", "mostafa", "--claim-content", "1"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL mostafa"));
}

#[test]
fn valuation_table_rows() {
    let (stdout, _, code) = run(&["fn-val", "--n-max", "2", "--p-max", "5", "--csv"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().next().unwrap().starts_with("n,p,"));
    assert!(stdout.contains("2,2,4,4,true"));
    assert!(stdout.contains("2,5,1,1,true"));
    // Plain mode carries the same numbers in aligned columns.
    let (plain, _, code) = run(&["fn-val", "--n-max", "2", "--p-max", "5"]);
    assert_eq!(code, 0);
    assert!(plain.lines().any(|l| l.split_whitespace().eq(["2", "5", "1", "1", "true"])));
}

#[test]
fn reduce_prints_the_pencil_and_residual_cubic() {
    let (stdout, _, code) = run(&[
        "reduce",
        "--coeffs",
        "2,-2,1,-1",
        "--null",
        "1,1,1,1",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("C1 = 10*p - 10*q + 5*r - 5*s"));
    assert!(stdout.contains("eliminated: r = (-p + 3*q) / 2, s = (3*p - q) / 2"));
    assert!(stdout.contains("H = "));
    // A non-null point is a domain error: exit 2.
    let (_, stderr, code) = run(&["reduce", "--coeffs", "1,1,1,1", "--null", "1,1,1,1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not zero"));
}

#[test]
fn pell_emits_verified_iterates() {
    let (stdout, _, code) = run(&["pell", "--n", "2", "--c", "1", "--count", "5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "k,x,y,z,t,primitive");
    assert_eq!(lines[1], "1,2,2,1,12,true");
    assert_eq!(lines.len(), 6);
    for line in &lines[1..] {
        assert!(line.ends_with(",true"));
    }
}

#[test]
fn search_rows_reverify() {
    let (stdout, stderr, code) = run(&[
        "search",
        "--coeffs",
        "1,1,1,0",
        "--bound",
        "33",
        "--bound-kind",
        "abs-sum",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "a,b,c,d,X1,X2,X3,X4,T,norm,primitive,wall_ms"
    );
    let eq = QuinticEquation::new(
        int(1),
        int(1),
        int(1),
        int(0),
        quintic_core::arith::Rat::from_integer(int(1)),
    )
    .unwrap();
    let mut rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 12);
        let xs: Vec<Int> = cells[4..7]
            .iter()
            .map(|s| s.parse::<i64>().unwrap())
            .map(int)
            .collect();
        let t: Int = int(cells[8].parse::<i64>().unwrap());
        assert!(verify_solution(&eq, &xs, &t), "row fails: {line}");
        rows += 1;
    }
    // (-4, 9, 20) with T = 1805 lives on the |x|+|y|+|z| = 33 shell.
    assert!(stdout.contains("1,1,1,0,-4,9,20,0,1805,33,true"));
    assert!(rows >= 1);
    assert!(stderr.contains("complete=true"));
}

#[test]
fn sweep_rows_and_summary() {
    let (stdout, stderr, code) = run(&[
        "sweep",
        "--a-max",
        "1",
        "--d-max",
        "0",
        "--bound",
        "25",
        "--budget",
        "600000",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "a,b,c,d,X1,X2,X3,X4,T,norm,primitive,wall_ms");
    assert_eq!(lines.len(), 2, "one weight tuple expected");
    assert!(lines[1].starts_with("1,1,1,0,"));
    assert!(stderr.contains("tuples=1"));
}

#[test]
fn usage_errors_exit_2() {
    let (_, _, code) = run(&["no-such-subcommand"]);
    assert_eq!(code, 2);
    let (_, stderr, code) = run(&["verify", "--family", "nosuch"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown family"));
    let (_, _, code) = run(&["search", "--coeffs", "0,0,0,0", "--bound", "5"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["family", "--name", "four-fifth"]); // missing --n
    assert_eq!(code, 2);
    let (_, _, code) = run(&["fn-val", "--n-max", "0"]);
    assert_eq!(code, 2);
}

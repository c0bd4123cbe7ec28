use std::process::{Command, Output};

use gcditer::cyclo::CycloElt;
use gcditer::matgcd::{IntMat, PolyMat};
use gcditer::polyarith::{format_rational, parse_rational};
use gcditer::{BigInt, RatPoly, Rational};
use proptest::prelude::*;
use serde_json::Value;

fn gcditer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcditer"))
        .args(args)
        .env_remove("GCDITER_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn intgcd_csv_example() {
    let out = gcditer(&["intgcd", "--a", "2", "--b", "3", "--k-max", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,gcd,is_coprime,log_ratio");
    assert_eq!(lines.len(), 11);
    assert!(lines[4].starts_with("4,5,false,"));
}

#[test]
fn polygcd_json_example() {
    let out = gcditer(&["polygcd", "--f", "t", "--g", "t+1", "--k-max", "36"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h_candidate"], "t^2+t+1");
    assert_eq!(v["progressions"], serde_json::json!([6]));
    assert_eq!(v["stabilized"], true);
}

#[test]
fn cyclo_json_example() {
    let out = gcditer(&["cyclo", "--p", "5", "--unit", "2", "--k-max", "25"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["primitive_count"], 22);
    assert_eq!(v["exceptional"], serde_json::json!([10, 15, 20]));
    assert_eq!(v["x"], 3);

    let out = gcditer(&["cyclo", "--p", "5", "--coeffs", "1,1,0,0", "--k-max", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("k,content,is_primitive,k_divisible_by_p\n"));
}

#[test]
fn other_commands_run() {
    let out = gcditer(&["matgcd", "--matrix", "2,1;1,1", "--k-max", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let contents: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(contents, ["1", "1", "4", "3", "11", "8"]);

    let out = gcditer(&["hyperbolic", "--matrix", "2,1;1,1", "--k-max", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let slope = json(&out)["fitted_slope"].as_f64().unwrap();
    assert!((slope - 0.4812).abs() < 0.05);

    let out = gcditer(&["polymat", "--matrix", "t,0;0,t+1", "--k-max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h"], "t^2+t+1");
    assert_eq!(v["eigen"]["verdict"]["kind"], "independent_pair");
}

#[test]
fn exit_codes() {
    let out = gcditer(&["intgcd", "--a", "2", "--b", "x", "--k-max", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--b"));

    let out = gcditer(&["intgcd", "--a", "1", "--b", "3", "--k-max", "5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gcditer(&["hyperbolic", "--matrix", "0,-1;1,0", "--k-max", "5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gcditer(&["cyclo", "--p", "5", "--coeffs", "0,0,1,1", "--k-max", "5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gcditer(&["intgcd", "--a", "2", "--b", "3", "--k-max", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = gcditer(&["intgcd", "--a", "2", "--b", "3", "--k-max", "5", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_path_and_worker_env() {
    let dir = std::env::temp_dir().join(format!("gcditer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = gcditer(&[
        "polygcd", "--f", "t", "--g", "-t", "--k-max", "12", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();

    let env_run = Command::new(env!("CARGO_BIN_EXE_gcditer"))
        .args(["polygcd", "--f", "t", "--g", "-t", "--k-max", "12"])
        .env("GCDITER_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(env_run.status.code(), Some(0));
    assert_eq!(env_run.stdout, written);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_examples() {
    assert_eq!("t^2+t+1".parse::<RatPoly>().unwrap(), RatPoly::from_ints(&[1, 1, 1]));
    assert_eq!("2,1;1,1".parse::<IntMat>().unwrap().to_string(), "2,1;1,1");
    assert_eq!(
        parse_rational("-3/2").unwrap(),
        Rational::new(BigInt::from(-3), BigInt::from(2))
    );
}

proptest! {
    #[test]
    fn poly_matrix_round_trip(entries in prop::collection::vec(prop::collection::vec(-5i64..=5, 0..4), 4)) {
        let rows: Vec<Vec<RatPoly>> = entries
            .chunks(2)
            .map(|r| r.iter().map(|c| RatPoly::from_ints(c)).collect())
            .collect();
        let m = PolyMat::from_rows(rows).unwrap();
        let text = m.to_string();
        let back: PolyMat = text.parse().unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn rational_and_cyclo_round_trip(n in -1000i64..1000, d in 1i64..50, c in prop::collection::vec(-9i64..=9, 6)) {
        let r = Rational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        let u = CycloElt::from_ints(7, &c).unwrap();
        prop_assert_eq!(CycloElt::parse(7, &u.to_string()).unwrap(), u);
    }
}

use std::process::{Command, Output};

use klein_core::analysis::canonical_period;

fn klein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klein")).args(args).output().expect("run klein")
}

fn stdout(args: &[&str]) -> String {
    let out = klein(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    klein(args).status.code().unwrap()
}

const TABLE: [(&str, &str); 25] = [
    ("1,1", "0 1; -1 3"),
    ("1,2", "0 1; -1 4"),
    ("2,1", "1 2; 1 3"),
    ("1,3", "0 1; -1 5"),
    ("3,1", "1 3; 1 4"),
    ("1,4", "0 1; -1 6"),
    ("4,1", "1 4; 1 5"),
    ("2,2", "1 2; 2 5"),
    ("1,5", "0 1; -1 7"),
    ("5,1", "1 5; 1 6"),
    ("1,1,1,1", "2 3; 3 5"),
    ("1,6", "0 1; -1 8"),
    ("6,1", "1 6; 1 7"),
    ("2,3", "1 2; 3 7"),
    ("3,2", "1 3; 2 7"),
    ("1,7", "0 1; -1 9"),
    ("7,1", "1 7; 1 8"),
    ("1,8", "0 1; -1 10"),
    ("8,1", "1 8; 1 9"),
    ("2,4", "1 2; 4 9"),
    ("4,2", "1 4; 2 9"),
    ("1,1,1,2", "2 3; 5 8"),
    ("2,1,1,1", "2 5; 3 8"),
    ("1,2,1,1", "3 4; 5 7"),
    ("1,1,2,1", "3 5; 4 7"),
];

#[test]
fn period_examples() {
    assert_eq!(stdout(&["period", "7 18; 5 13"]), "(2,1,1,3)\ncanonical: (1,1,2,3)\n");
    assert_eq!(stdout(&["period", "[[7,18],[5,13]]"]).lines().next(), Some("(2,1,1,3)"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "period", "2 1; 1 1"])).unwrap();
    assert_eq!(json["period"], serde_json::json!([1, 1]));
}

#[test]
fn table_operators_have_their_labels() {
    for (label, m) in TABLE {
        let out = stdout(&["period", m]);
        let got = out.lines().nth(1).unwrap().trim_start_matches("canonical: ").to_string();
        let word: Vec<i64> = label.split(',').map(|t| t.parse().unwrap()).collect();
        let want = canonical_period(&word).unwrap().to_string();
        assert_eq!(got, want, "{m}");
    }
}

#[test]
fn reduce_and_construct() {
    let out = stdout(&["reduce", "--trace", "7 18; 5 13"]);
    assert!(out.contains("reduced: 2 7; 5 18"), "{out}");
    assert!(out.starts_with("S2"));
    assert_eq!(stdout(&["reduce", "0 1; -1 4"]).lines().next(), Some("reduced: 0 -1; 1 4"));
    assert_eq!(stdout(&["construct", "--prefix", "2,1,1", "--lambda", "3"]), "2 7; 5 18\n");
    assert_eq!(stdout(&["construct", "--lambda", "3"]), "0 -1; 1 4\n");
    assert_eq!(stdout(&["construct", "--lambda", "-5"]), "0 -1; 1 -4\nperiod: (1,2)\n");
    let round = stdout(&["period", "2 7; 5 18"]);
    assert!(round.starts_with("(2,1,1,3)"));
}

#[test]
fn numeric_commands() {
    assert_eq!(stdout(&["gk", "1"]), "0.415037499279\n");
    let out = stdout(&["mincomplexity", "1,2,3"]);
    assert_eq!(out.lines().count(), 3);
    let sail: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "sail", "2 1; 1 1"])).unwrap();
    assert_eq!(sail.as_array().unwrap().len(), 4);
}

#[test]
fn census_formats() {
    let csv = stdout(&["--format", "csv", "census", "--bound", "6", "--workers", "2"]);
    assert!(csv.starts_with("period,trace,count,N\n"), "{csv}");
    assert!(csv.contains("\"(1,1)\",3,") || csv.contains("(1,1),3,"), "{csv}");
    let one = stdout(&["--format", "json", "census", "--bound", "6", "--workers", "1"]);
    let four = stdout(&["--format", "json", "census", "--bound", "6", "--workers", "4"]);
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["period", "not a matrix"]), 2);
    assert_eq!(code(&["period", "1 2; 3"]), 2);
    assert_eq!(code(&["gk", "1,x"]), 2);
    assert_eq!(code(&["period", "1 1; 0 1"]), 3);
    assert_eq!(code(&["period", "2 0; 0 1"]), 3);
    assert_eq!(code(&["gk", "1,2"]), 3);
    assert_eq!(code(&["construct", "--lambda", "-3"]), 3);
    assert_eq!(code(&["--format", "svg", "period", "2 1; 1 1"]), 2);
    assert_eq!(code(&["bogus"]), 2);
}

#[test]
fn render_is_bit_stable() {
    let a = stdout(&["render", "2 1; 1 1"]);
    let b = stdout(&["--format", "svg", "render", "2 1; 1 1"]);
    assert_eq!(a, b);
    let golden = include_str!("data/render_2_1_1_1.svg");
    assert_eq!(a, golden);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.svg");
    stdout(&["render", "7 18; 5 13", "--window", "12", "-o", path.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    assert_eq!(svg.matches("class=\"sail\"").count(), 4);
}

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn keller(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keller"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = keller(&all);
    (
        out.status.code().unwrap(),
        serde_json::from_slice(&out.stdout).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(
        keller(&["check-a", "--poly", "y^2 + x"]).status.code(),
        Some(0)
    );
    assert_eq!(
        keller(&["check-b", "--poly", "y^2 + x^2"]).status.code(),
        Some(1)
    );
    assert_eq!(keller(&["check-a", "--poly", "y^"]).status.code(), Some(2));
    assert_eq!(keller(&["check-a"]).status.code(), Some(2));
    assert_eq!(
        keller(&["frobnicate", "--poly", "y^2"]).status.code(),
        Some(2)
    );
    assert_eq!(keller(&["m3", "--poly", "y^2 + x"]).status.code(), Some(2));
    assert_eq!(
        keller(&["check-a", "--poly", "y^2", "--file", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        keller(&["check-a", "--file", "/nonexistent/curve.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(keller(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_verdicts_are_not_usage_errors() {
    for poly in [
        "y^2 + x^2",
        "y^2 + x*y",
        "y^3 + x^2*y + x",
        "y^2",
        "y^2 + 1",
    ] {
        for cmd in [
            "check-a",
            "check-b",
            "oracle-a",
            "oracle-b",
            "associate",
            "report",
            "detres",
        ] {
            let out = keller(&[cmd, "--poly", poly]);
            assert_ne!(
                out.status.code(),
                Some(2),
                "{cmd} {poly}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
    }
}

#[test]
fn syntax_error_reports_offset() {
    let out = keller(&["report", "--poly", "3x + y^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 1"));
    assert!(out.stdout.is_empty());
}

#[test]
fn report_is_deterministic() {
    for args in [
        ["report", "--poly", "y^3 + 3*x*y + x", "--json"],
        ["report", "--poly", "y^2 + 2*x*y + x^2 + x", ""],
    ] {
        let args: Vec<&str> = args.into_iter().filter(|a| !a.is_empty()).collect();
        let first = keller(&args);
        let second = keller(&args);
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn report_keys_are_always_present() {
    let keys = [
        "command",
        "input",
        "assumptions",
        "normalized",
        "matrix",
        "detres",
        "identities",
        "q",
        "associated",
        "oracle_b",
        "m3",
        "scan",
        "verdict",
        "warnings",
    ];
    for args in [
        vec!["check-a", "--poly", "y^2 + x"],
        vec!["report", "--poly", "y^3 + x"],
        vec!["scan", "--m", "2", "--exhaustive"],
    ] {
        let (_, v) = json(&args);
        let obj = v.as_object().unwrap();
        for key in keys {
            assert!(obj.contains_key(key), "{key} missing for {args:?}");
        }
    }
}

#[test]
fn report_sections() {
    let (code, v) = json(&["report", "--poly", "y^2 + 2*x*y + x^2 + x"]);
    assert_eq!(code, 0);
    assert_eq!(v["input"], "y^2 + 2*x*y + x^2 + x");
    assert_eq!(v["normalized"], "y^2 + x");
    assert_eq!(v["q"]["Q"], "-2*v + 2*u - 2");
    assert_eq!(v["associated"]["b"][0], "1");
    assert_eq!(v["oracle_b"]["g"], "y + x");
    assert_eq!(v["assumptions"]["reduced"], true);
    assert_eq!(v["detres"]["status"], "checked");
    assert!(v["m3"].is_null());
    assert!(v["warnings"].as_array().unwrap().is_empty());

    let (code, v) = json(&["report", "--poly", "y^2 + x*y"]);
    assert_eq!(code, 1);
    assert_eq!(v["assumptions"]["reduced"], true);

    let (_, v) = json(&["report", "--poly", "y^2 + 2*x*y + x^2"]);
    assert_eq!(v["assumptions"]["reduced"], false);
    assert_eq!(v["assumptions"]["bad_lambda_rational_roots"][0], "0");
    assert!(!v["warnings"].as_array().unwrap().is_empty());

    let (code, v) = json(&["detres", "--poly", "y^2 + 1"]);
    assert_eq!(code, 1);
    assert_eq!(v["detres"]["status"], "skipped");
}

#[test]
fn cubic_closed_forms() {
    let (code, v) = json(&["m3", "--poly", "y^3 + x"]);
    assert_eq!(code, 0);
    assert_eq!(v["m3"]["shared"], "0");
    let (code, v) = json(&["m3", "--poly", "y^3 + x^3"]);
    assert_eq!(code, 1);
    assert_eq!(v["m3"]["a3_third"], "6");
    let (_, v) = json(&["m3", "--poly", "y^3 + 3*x*y^2 + x"]);
    assert_eq!(v["m3"]["a2"], "-3*x^2");
}

#[test]
fn text_output() {
    let out = keller(&["check-a", "--poly", "y^2 + x^2"]);
    let text = stdout(&out);
    assert!(
        text.contains("identity A(k=1, i=0, j=0): fails residual -4"),
        "{text}"
    );
    assert!(
        text.ends_with("verdict: false\nwarning: deg_y f_x = 0\n"),
        "{text}"
    );

    let text = stdout(&keller(&["associate", "--poly", "2*y^2 + 2*x"]));
    assert!(text.contains("g: y"), "{text}");
    assert!(
        text.contains("warning: leading y-coefficient 2 divided out"),
        "{text}"
    );
}

#[test]
fn file_input() {
    let dir = tempfile::tempdir().unwrap();
    let expr = dir.path().join("curve.txt");
    writeln!(
        std::fs::File::create(&expr).unwrap(),
        "y^2 + 2*x*y + x^2 + x"
    )
    .unwrap();
    let (code, v) = json(&["associate", "--file", expr.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["associated"]["g"], "y + x");

    let js = dir.path().join("curve.json");
    std::fs::write(&js, r#"{"m": 2, "a": [["0", "2"], ["0", "1", "1"]]}"#).unwrap();
    let (code, v) = json(&["associate", "--file", js.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["input"], "y^2 + 2*x*y + x^2 + x");

    std::fs::write(&js, r#"{"m": 2, "a": [[]]}"#).unwrap();
    assert_eq!(
        keller(&["check-a", "--file", js.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn scans() {
    let (code, v) = json(&["scan", "--m", "2", "--range=-2:2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["scan"]["tested"], "125");
    assert_eq!(v["scan"]["mode"], "exhaustive");

    let (code, v) = json(&["scan", "--m", "3", "--samples", "20", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["scan"]["tested"], "20");
    let (_, again) = json(&["scan", "--m", "3", "--samples", "20", "--seed", "7"]);
    assert_eq!(v, again);

    assert_eq!(keller(&["scan"]).status.code(), Some(2));
    assert_eq!(
        keller(&["scan", "--m", "3", "--range", "-9:9", "--exhaustive"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_bounds() {
    let (code, v) = json(&[
        "oracle-b",
        "--poly",
        "y^2 + 2*x*y + x^2 + x",
        "--bounds",
        "1:8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["oracle_b"]["degy_g"], "1");
    assert_eq!(v["oracle_b"]["g"], "y + x");
    let (code, v) = json(&[
        "oracle-b",
        "--poly",
        "y^2 + 2*x*y + x^2 + x",
        "--bounds",
        "0:8",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["oracle_b"]["found"], false);
    assert_eq!(
        keller(&["oracle-b", "--poly", "y^2", "--bounds", "1"])
            .status
            .code(),
        Some(2)
    );
}

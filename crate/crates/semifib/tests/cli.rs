use std::process::{Command, Output};

fn semifib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semifib")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn eval_prints_twelve_digits() {
    let o = semifib(&["eval", "(1,2,3)*(4,5,6)", "--kind", "II"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(14,13,15)\n");

    let o = semifib(&["eval", "inv((2,1,4))"]);
    assert_eq!(stdout(&o), "(0.666666666667,-0.333333333333,-1.33333333333)\n");

    // base coordinate x2/(x0 + x1)
    let o = semifib(&["eval", "pi1((2,1,4))"]);
    assert_eq!(stdout(&o), "1.33333333333\n");

    let o = semifib(&["eval", "(0,1,0)*(0,1,0)", "--kind", "I"]);
    assert_eq!(stdout(&o), "(0,0,1)\n");
}

#[test]
fn eval_exit_codes() {
    let o = semifib(&["eval", "(1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());

    assert_eq!(semifib(&["eval", "inv((1,1,5))"]).status.code(), Some(3));
    assert_eq!(semifib(&["eval", "conj((1,2,3))", "--kind", "I"]).status.code(), Some(3));
    assert_eq!(semifib(&["eval", "(1,2,3)", "--kind", "IV"]).status.code(), Some(2));
    assert_eq!(semifib(&["eval", "(1,2,3)", "--bogus"]).status.code(), Some(2));
}

#[test]
fn verify_single_suite_and_unknown() {
    let o = semifib(&["verify", "algebra.associativity", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json report");
    assert_eq!(v["suites"].as_array().map(Vec::len), Some(1));
    assert_eq!(v["suites"][0]["suite"], "algebra.associativity");
    assert_eq!(v["failures"], 0);

    assert_eq!(semifib(&["verify", "bogus.suite"]).status.code(), Some(2));
}

#[test]
fn verify_writes_json_file() {
    let path = std::env::temp_dir().join(format!("semifib-cli-{}.json", std::process::id()));
    let p = path.to_str().expect("utf-8 temp path");
    let o = semifib(&["verify", "--all", "--trials", "100", "--seed", "7", "--json", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["failures"], 0);
    let listed = stdout(&semifib(&["verify", "--list"]));
    assert_eq!(v["suites"].as_array().unwrap().len(), listed.lines().count());
}

#[test]
fn sample_geodesics() {
    let o = semifib(&["sample", "geodesics", "--A", "1", "--B", "0", "--range", "-2", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("A,B,x1,x2"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r[3], r[2] * r[2] - 1.0);
    }
}

#[test]
fn sample_fibers() {
    let text = stdout(&semifib(&["sample", "fibers-conformal", "--c", "0", "--n", "3"]));
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap() == 0.0));

    let text = stdout(&semifib(&["sample", "fibers-projective", "--v", "2", "--n", "3", "--range", "-2", "0"]));
    assert_eq!(text, "v,x1,x2\n2,-2,-1\n2,-1,-0\n2,0,-1\n");

    let text = stdout(&semifib(&["sample", "sphere", "--u", "0,1", "--n", "2"]));
    assert_eq!(text.lines().count(), 1 + 2 * 2 * 2);
    assert!(!text.contains('\r'));
}

#[test]
fn sample_rejects_bad_ranges() {
    assert_eq!(semifib(&["sample", "geodesics", "--A", "1", "--B", "0", "--range", "2", "-2"]).status.code(), Some(2));
    assert_eq!(semifib(&["sample", "fibers-conformal", "--c", "1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(semifib(&["sample", "fibers-conformal", "--c", "1", "--xmin", "3"]).status.code(), Some(2));
}

#[test]
fn table_print_and_check() {
    let text = stdout(&semifib(&["table", "--kind", "III"]));
    let path = std::env::temp_dir().join(format!("semifib-cli-{}.tbl", std::process::id()));
    std::fs::write(&path, &text).unwrap();
    let o = semifib(&["table", "--check", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "type III\n");
}

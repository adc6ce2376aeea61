use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightcurve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_errors(report: &Value) -> Vec<String> {
    let schema: Value = serde_json::from_str(include_str!("../report.schema.json")).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    v.iter_errors(report).map(|e| e.to_string()).collect()
}

fn json_of(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

const CUBIC: [&str; 6] = ["--curve", "x^3+y^3+z^3", "--ideal", "x^2,y^2,z^2", "--element", "x*y*z"];

#[test]
fn singular_fermat_is_refused() {
    let o = run(&[&["decide", "--char", "3"][..], &CUBIC].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("divides the degree"));
}

#[test]
fn fermat_cubic_xyz_decide() {
    let o = run(&[&["decide", "--char", "7"][..], &CUBIC].concat());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("x*y*z: InClosure [also plus closure]"), "{text}");
    assert!(text.contains("primary-syzygy/strongly-semistable"));
    let v = json_of(&[&["decide", "--char", "7", "--format", "json"][..], &CUBIC].concat());
    assert_eq!(v["verdict"]["status"], "InClosure");
    assert!(schema_errors(&v).is_empty(), "{:?}", schema_errors(&v));
}

#[test]
fn quartic_tenth_powers_table() {
    let v = json_of(&["analyze", "--char", "0", "--curve", "x^4+y^4-z^4", "--ideal", "x^10,y^10,z^10", "--degrees", "0..30", "--format", "json"]);
    assert!(schema_errors(&v).is_empty(), "{:?}", schema_errors(&v));
    let rows = v["degree_table"].as_array().unwrap();
    assert_eq!(rows.len(), 31);
    for r in rows {
        let m = r["m"].as_i64().unwrap();
        if m <= 13 {
            assert_eq!(r["kind"], "IffIdeal", "m = {m}");
        }
        if m >= 16 {
            assert_eq!(r["kind"], "AllIn", "m = {m}");
        }
    }
    let text = stdout(&run(&["analyze", "--curve", "x^4+y^4-z^4", "--ideal", "x^10,y^10,z^10", "--degrees", "0..30"]));
    assert!(text.contains("m =  16  AllIn"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["analyze", "--char", "5", "--curve", "x^4+y^4+z^4", "--ideal", "x^2,y^2,z^2", "--format", "json", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert!(schema_errors(&v).is_empty());
}

#[test]
fn syzygies_and_frobtest() {
    let v = json_of(&["syzygies", "--char", "5", "--curve", "x^3+y^3+z^3", "--ideal", "x^2,y^2,z^2", "--format", "json"]);
    assert!(schema_errors(&v).is_empty(), "{:?}", schema_errors(&v));
    assert_eq!(v["min_syzygy_degree"], 3);
    let dims: Vec<i64> = v["syzygy_table"].as_array().unwrap().iter().map(|r| r["dim"].as_i64().unwrap()).collect();
    // Syz(k) is an extension of O(k-3) by O(k-3) on the elliptic curve
    assert_eq!(dims, vec![0, 0, 0, 1, 6, 12, 18]);
    let v = json_of(&[&["frobtest", "--char", "7", "--emax", "1", "--format", "json"][..], &CUBIC].concat());
    assert!(schema_errors(&v).is_empty(), "{:?}", schema_errors(&v));
    assert_eq!(v["oracle"][0]["oracle"]["result"], "Inconclusive");
    let o = run(&[&["frobtest", "--char", "0"][..], &CUBIC].concat());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let o = run(&["decide", "--curve", "x^2+y^3", "--ideal", "x,y,z", "--element", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inhomogeneous"));
    let o = run(&["decide", "--curve", "x^3+y^3+z^3", "--ideal", "x^2,y^2,z^2", "--element", "x*(y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    let o = run(&["analyze", "--char", "4", "--curve", "x^3+y^3+z^3", "--ideal", "x,y,z"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["analyze", "--curve", "x^3+y^3+z^3", "--ideal", "x,y,z", "--degrees", "5..2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["decide", "--curve", "x^3+y^3+z^3", "--ideal", "x,y,z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strict_unknown_exits_three() {
    // a non-primary ideal gets no closure rules, only membership
    let args = ["decide", "--curve", "x^3+y^3+z^3", "--ideal", "x^2,x*y", "--element", "y^2"];
    assert_eq!(run(&args).status.code(), Some(0));
    let strict: Vec<&str> = args.iter().copied().chain(["--strict"]).collect();
    assert_eq!(run(&strict).status.code(), Some(3));
}

#[test]
fn scan_writes_json_lines() {
    let dir = std::env::temp_dir().join(format!("tightcurve-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.jsonl");
    let o = run(&["scan", "--primes", "5,7", "--deltas", "3", "--powers", "2", "--emax", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<Value> = std::fs::read_to_string(&path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    for cell in &lines {
        for key in ["p", "delta", "a", "degree_table", "certificates", "seed", "ms"] {
            assert!(cell.get(key).is_some(), "{key}");
        }
        assert_eq!(cell["consistent"], true);
    }
    let o = run(&["scan", "--primes", "", "--deltas", "3", "--powers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = run(&["scan", "--primes", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

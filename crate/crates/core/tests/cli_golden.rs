//! Golden corpus for the command line: exit codes and JSON well-formedness.

use std::process::Command;

use orbiseif::cli::run_with_bound_var;
use serde_json::Value;

const GOLDEN: &[(&str, i32)] = &[
    // parse / euler
    ("parse S2(2,3,6)", 0),
    ("parse D(3;2,5)", 0),
    ("parse D(;2,3,5)", 0),
    ("parse S2(2,3", 2),
    ("parse S2(1,3)", 2),
    ("parse P2(2;3)", 2),
    ("euler S2(2,3,7)", 0),
    ("euler D(3;2)", 0),
    ("euler Q(2)", 2),
    // check
    ("check S2(2,3,6)", 0),
    ("check S2(2,3,11)", 0),
    ("check S2(2,3,5)", 1),
    ("check D(3;2)", 1),
    ("check D(;2,3,5)", 1),
    ("check S2(6,10,14)", 1),
    ("check P2(3,4,5)", 0),
    ("check P2(2,4)", 1),
    ("check D(3,5)", 0),
    // realize
    ("realize S2(3,2,6)", 0),
    ("realize P2(2,3)", 0),
    ("realize D(3,5)", 0),
    ("realize S2(2,2,3,3)", 0),
    ("realize S2(2,3,11)", 1),
    ("realize S2(2,3,5)", 1),
    ("realize S2(", 2),
    // verify
    (r#"verify S2(3,2,6) --exponents {"a":"2","b":"1","c":"-7"}"#, 0),
    (r#"verify S2(3,2,6) --exponents {"a":"1","b":"1","c":"1"}"#, 1),
    (r#"verify S2(3,2,6) --exponents {"a":"2"}"#, 2),
    // enumerate and usage
    ("enumerate --base P2 --max-order 5 --max-points 3", 0),
    ("enumerate --base S2 --max-order 6 --max-points 2", 2),
    ("enumerate --max-order 0 --max-points 2", 2),
    ("frobnicate S2(2,3,6)", 2),
];

fn argv(cmd: &str) -> Vec<String> {
    // the only argument containing spaces is the JSON after --exponents, which has none here
    std::iter::once("orbiseif".to_string()).chain(cmd.split(' ').map(String::from)).collect()
}

fn run(args: &[String], json: bool) -> (i32, String, String) {
    let mut args = args.to_vec();
    if json {
        args.push("--json".into());
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_bound_var(args, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn golden_exit_codes() {
    assert!(GOLDEN.len() >= 30);
    for &(cmd, expected) in GOLDEN {
        for json in [false, true] {
            let (code, out, err) = run(&argv(cmd), json);
            assert_eq!(code, expected, "`{cmd}` (json = {json}): stdout {out:?} stderr {err:?}");
            if expected == 2 {
                assert!(!err.is_empty(), "`{cmd}` should explain the usage error");
            }
            if json && expected != 2 {
                for line in out.lines() {
                    let v: Result<Value, _> = serde_json::from_str(line);
                    assert!(v.is_ok(), "`{cmd}` printed invalid JSON {line:?}");
                }
                assert!(!out.trim().is_empty());
            }
        }
    }
}

#[test]
fn json_schema_is_stable() {
    let keys = |cmd: &str| -> Vec<String> {
        let (_, out, _) = run(&argv(cmd), true);
        let v: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
        let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
        k.sort();
        k
    };
    assert_eq!(keys("check S2(2,3,6)"), keys("check D(3;2)"));
    assert_eq!(keys("check S2(2,3,6)"), ["admissible", "case", "chi", "class", "detail", "reason", "sig"]);
    let (_, out, _) = run(&argv("check D(3;2)"), true);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reason"], "spherical-excluded");
    // integers travel as strings
    let (_, out, _) = run(&argv("realize S2(3,2,6)"), true);
    let v: Value = serde_json::from_str(&out).unwrap();
    for k in ["a", "b", "c", "p", "q", "r"] {
        assert!(v[k].is_string(), "{k} in {v}");
    }
    assert_eq!((v["a"].as_str(), v["b"].as_str(), v["c"].as_str()), (Some("2"), Some("1"), Some("-7")));
}

#[test]
fn binary_honours_coset_bound_variable() {
    let bin = env!("CARGO_BIN_EXE_orbiseif");
    let status = |bound: Option<&str>, args: &[&str]| {
        let mut c = Command::new(bin);
        c.args(args);
        match bound {
            Some(b) => c.env("ORBISEIF_COSET_BOUND", b),
            None => c.env_remove("ORBISEIF_COSET_BOUND"),
        };
        c.output().unwrap()
    };
    let ok = status(None, &["realize", "S2(3,2,6)"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = status(Some("lots"), &["realize", "S2(3,2,6)"]);
    assert_eq!(bad.status.code(), Some(2));
    // a bound of one coset cannot even close the trivial group's table when
    // the collapse needs intermediate cosets
    let tight = status(Some("1"), &["--json", "verify", "S2(3,2,6)", "--exponents", r#"{"a":"2","b":"1","c":"-7"}"#]);
    let v: Value = serde_json::from_slice(&tight.stdout).unwrap();
    assert_eq!(tight.status.code(), Some(1));
    assert_eq!(v["verdict"], "inconclusive");
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use regloc::homalg::QuotientRing;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regloc")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn sing_locus_of_the_cusp() {
    let out = run(&["sing-locus", "--ring", "Q[x,y]/(y^2-x^3)"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let r = QuotientRing::parse("Q[x,y]").unwrap();
    let gens: Vec<_> = v["defining_ideal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| r.parse_poly(g.as_str().unwrap()).unwrap())
        .collect();
    let got = regloc::groebner::Ideal::new(r.ambient(), gens).unwrap();
    let want = regloc::groebner::Ideal::new(r.ambient(), vec![r.parse_poly("x").unwrap(), r.parse_poly("y").unwrap()]).unwrap();
    assert!(got.same_radical(&want).unwrap());
}

#[test]
fn gen_for_the_node_with_primes() {
    let out = run(&["gen", "--ring", "Q[x,y]/(x*y)", "--primes", "(x);(y)"]);
    assert!(out.status.success());
    let v = json(&out);
    let g: Vec<&str> = v["generator"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(
        g,
        vec![
            "module G over Q[x,y]/(x*y) gens 1 relations [[x]]",
            "module G over Q[x,y]/(x*y) gens 1 relations [[y]]"
        ]
    );
    assert_eq!(v["trace"]["case"], "components");
}

#[test]
fn check_reports_the_failing_step() {
    let out = run(&["check", data("bad_cert.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["fail_step"], 2);
    assert!(v["reason"].as_str().unwrap().starts_with("not exact at position 1"));
}

#[test]
fn certify_then_check() {
    let dir = std::env::temp_dir().join(format!("regloc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("m.json");
    let out = run(&["certify", "--input", data("cusp.txt").to_str().unwrap(), "--module", "m"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::write(&cert, &out.stdout).unwrap();
    let out = run(&["check", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn input_errors_and_cutoffs_have_their_own_codes() {
    let out = run(&["gb", "--ring", "Q[x,y"]);
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "parse");
    assert_eq!(e["error"]["line"], 1);
    assert_eq!(e["error"]["column"], 6);

    let out = run(&["--max-pairs", "1", "gb", "--ring", "Q[x,y,z]", "--polys", "x^2-y*z, y^2-x*z, z^2-x*y"]);
    assert_eq!(out.status.code(), Some(3));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "cutoff");

    let out = run(&["ext", "--input", data("dual.txt").to_str().unwrap(), "--module", "nope", "--target", "k", "-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_flags() {
    let dir = std::env::temp_dir().join(format!("regloc-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"order": "lex", "max_degree": 50}"#).unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "gb", "--ring", "Q[x,y]", "--polys", "x^2-y, x*y"]);
    let v = json(&out);
    assert_eq!(v["config"]["order"], "lex");
    assert_eq!(v["config"]["max_degree"], 50);
    let out = run(&["--config", cfg.to_str().unwrap(), "--order", "grevlex", "gb", "--ring", "Q[x,y]"]);
    assert_eq!(json(&out)["config"]["order"], "grevlex");
    std::fs::write(&cfg, r#"{"colour": 1}"#).unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "gb", "--ring", "Q[x]"]).status.code(), Some(2));
}

#[test]
fn embedded_inputs_reparse() {
    for ring in ["Q[x,y]/(y^2-x^3)", "F101[a,b,c]/(a*b-c^2)", "Q[x]"] {
        let v = json(&run(&["sing-locus", "--ring", ring]));
        let echoed = v["ring"].as_str().unwrap();
        let a = QuotientRing::parse(ring).unwrap();
        let b = QuotientRing::parse(echoed).unwrap();
        assert!(QuotientRing::same(&a, &b), "{ring} vs {echoed}");
    }
    let v = json(&run(&["nf", "--ring", "Q[x,y]/(x^2)", "--poly", "x^3 + y"]));
    assert_eq!(v["normal_form"], "y");
}

#[test]
fn text_format() {
    let out = run(&["--format", "text", "j0", "--ring", "Q[x,y]/(y^2-x^3)", "--domain"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l == "witness: y"), "{s}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cusp = data("cusp.txt");
    let node = data("node.txt");
    let dual = data("dual.txt");
    let koszul = data("koszul.txt");
    let bad = data("bad_cert.json");
    let bad = bad.to_str().unwrap();
    let (cusp, node, dual, koszul) = (cusp.to_str().unwrap(), node.to_str().unwrap(), dual.to_str().unwrap(), koszul.to_str().unwrap());
    let cases: Vec<Vec<&str>> = vec![
        vec!["gb", "--ring", "Q[x,y,z]", "--polys", "x^2-y*z, y^2-x*z"],
        vec!["nf", "--ring", "F7[x,y]/(x^2-y)", "--poly", "x^5"],
        vec!["resolve", "--input", cusp, "--module", "k"],
        vec!["ext", "--input", dual, "--module", "k", "--target", "k", "-n", "2"],
        vec!["sing-locus", "--ring", "Q[x,y]/(x*y)"],
        vec!["perf-locus", "--input", node, "--name", "Rx"],
        vec!["perf-locus", "--input", koszul, "--name", "K"],
        vec!["j0", "--ring", "Q[x,y]/(y^2-x^3)", "--domain"],
        vec!["nagata", "--ring", "Q[x,y]/(x*y)", "--primes", "(x);(y)"],
        vec!["gen", "--ring", "Q[x,y]/(y^2-x^3)"],
        vec!["certify", "--input", cusp, "--module", "k"],
        vec!["check", bad],
    ];
    for args in &cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert!(!a.stdout.is_empty(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
    }
}

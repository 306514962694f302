use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("corpus");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn mixvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixvol")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

const GOLDEN: &[(&str, &str, &[&str], &str)] = &[
    ("collection-mult", "exadet.json", &[], r#"{"value":"34"}"#),
    ("milnor", "cusp.json", &[], r#"{"value":"2"}"#),
    ("prism-mv", "thint_case.json", &["--via", "lattice"], r#"{"value":"1"}"#),
    ("prism-mv", "thint_case.json", &["--via", "direct"], r#"{"value":"1"}"#),
    ("prism-mv", "prism_polytopes.json", &["--via", "lattice"], r#"{"value":"1"}"#),
    ("milnor", "two_conics.json", &[], r#"{"value":"3"}"#),
    ("gz-index", "gz_cusp.json", &[], r#"{"value":"3"}"#),
    ("det-mult", "det_simplex.json", &[], r#"{"value":"3"}"#),
    ("resultant-support", "resultant_linear.json", &[], r#"{"value":"1"}"#),
    ("resultant-support", "resultant_linear.json", &["--max-convention"], r#"{"value":"8"}"#),
    ("chi-faces", "chi_cusp.json", &[], r#"{"value":"-1"}"#),
    ("stable", "stable_axes.json", &[], r#"{"value":"1/2"}"#),
    ("run", "run_pairs.json", &[], r#"{"value":"3"}"#),
];

#[test]
fn golden_corpus() {
    for (cmd, file, flags, expected) in GOLDEN {
        let path = corpus(file);
        let mut args = vec![*cmd];
        args.extend_from_slice(flags);
        args.push(&path);
        let out = mixvol(&args);
        assert_eq!(out.status.code(), Some(0), "{cmd} {file}");
        assert_eq!(stdout(&out), *expected, "{cmd} {file}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    for (cmd, file, flags, _) in GOLDEN {
        let path = corpus(file);
        let mut args = vec!["--explain", *cmd];
        args.extend_from_slice(flags);
        args.push(&path);
        assert_eq!(mixvol(&args).stdout, mixvol(&args).stdout, "{cmd} {file}");
    }
}

#[test]
fn prism_routes_agree_on_the_corpus() {
    for file in ["thint_case.json", "prism_polytopes.json"] {
        let path = corpus(file);
        let lattice = mixvol(&["prism-mv", "--via", "lattice", &path]);
        let direct = mixvol(&["prism-mv", "--via", "direct", &path]);
        assert_eq!(stdout(&lattice), stdout(&direct), "{file}");
    }
}

#[test]
fn explain_prints_terms() {
    let out = mixvol(&["--explain", "milnor", &corpus("cusp.json")]);
    assert_eq!(
        stdout(&out),
        r#"{"value":"2","terms":[{"label":"axes {1}","value":"-2"},{"label":"axes {2}","value":"-3"},{"label":"axes {1,2}","value":"6"},{"label":"constant","value":"1"}]}"#
    );
}

#[test]
fn configurations_from_flags() {
    let sigmas = r#"{"N":1,"sigmas":[[[0],[1]],[[0],[1]]]}"#;
    assert_eq!(stdout(&mixvol(&["essential", "--sigmas", sigmas])), r#"{"value":[1,2],"codim":1}"#);
    assert_eq!(stdout(&mixvol(&["codim", "--sigmas", sigmas])), r#"{"value":1,"resultantal":1}"#);
    let out = mixvol(&["resultant-support", "--sigmas", sigmas, "--gamma", "[[3,-1],[2,5]]"]);
    assert_eq!(stdout(&out), r#"{"value":"1"}"#);
}

#[test]
fn expression_flag() {
    // X_1 X_2 on the two simplex complement pairs of the corpus file
    let expr = r#"{"vars":2,"numerator":[[[1,1],1]]}"#;
    let payload = r#"{"bindings":[
        {"A":{"newton":{"exponents":[[0,0]]}},"B":{"newton":{"exponents":[[2,0],[0,2]]}}},
        {"A":{"newton":{"exponents":[[0,0]]}},"B":{"newton":{"exponents":[[3,0],[0,3]]}}}]}"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_mixvol"))
        .args(["eval-pair-fn", "--expr", expr, "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(payload.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), r#"{"value":"3"}"#);
}

#[test]
fn exit_codes() {
    let missing = mixvol(&["milnor", "no-such-file.json"]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(stdout(&missing).starts_with(r#"{"error":{"code":"schema""#));

    let unknown = mixvol(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(3));

    let bad_method = mixvol(&["pair-mixed-volume", "--method", "guess", &corpus("cusp.json")]);
    assert_eq!(bad_method.status.code(), Some(3));

    // the difference between the orthant and x + orthant is an unbounded strip
    let strip = r#"{"equations":[{"newton":{"exponents":[[1,0]]}}]}"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_mixvol"))
        .args(["milnor"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(strip.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("symmetric difference unbounded"));
}

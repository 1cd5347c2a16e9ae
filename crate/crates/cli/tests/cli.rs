use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus/derivations").join(name).display().to_string()
}

fn biint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biint")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const GOAL: &str = "p |- q, r -> ((p -< q) & r)";

#[test]
fn check_exit_codes() {
    let cut = corpus("cut_counterexample.lbii");
    assert_eq!(biint(&["check", "--calculus", "lbii", "--cuts", "full", &cut]).status.code(), Some(0));
    let o = biint(&["check", "--calculus", "lbii", "--cuts", "none", &cut]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("forbidden cut at root"), "{err}");

    let dir = std::env::temp_dir().join(format!("biint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.lbii");
    std::fs::write(&bad, "(hyp \"p |- p\"").unwrap();
    assert_eq!(biint(&["check", "--calculus", "lbii", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(biint(&["check", "--calculus", "nope", &cut]).status.code(), Some(2));
}

#[test]
fn prove_reports_derivation_or_exhaustion() {
    let o = biint(&["prove", "--calculus", "llbii", GOAL, "--depth", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("(implR \"[x] x:p |- x:q, x:(r -> (p -< q) & r)\""));
    let o = biint(&["prove", "--calculus", "lbii-cutfree", GOAL, "--depth", "12"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "exhausted");
    let o = biint(&["prove", "--calculus", "llbii", "|- T"]);
    assert_eq!(stdout(&o).trim(), "(topR \"[x] |- x:T\")");
}

#[test]
fn translate_reports_cut_profile() {
    let o = biint(&["translate", "--from", "llbii", "--to", "lbii", "--root", "x", &corpus("labelled_counterexample.llbii")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("; check: ok"));
    assert!(text.trim_end().ends_with("; cut profile: unnest-only"), "{text}");
    let o = biint(&["translate", "--from", "llbii", "--to", "lbii", &corpus("labelled_counterexample.llbii")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn translate_hyp_is_identity() {
    let dir = std::env::temp_dir().join(format!("biint-hyp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("hyp.lbii");
    std::fs::write(&f, "(hyp \"p |- p\")\n").unwrap();
    let o = biint(&["translate", "--from", "lbii", "--to", "nlbii", f.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("(hyp \"p |- p\")\n"));
}

#[test]
fn labelled_round_trip_through_nested() {
    let dir = std::env::temp_dir().join(format!("biint-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = corpus("labelled_counterexample.llbii");
    let n = stdout(&biint(&["translate", "--from", "llbii", "--to", "nlbii", "--root", "x", &src]));
    let mid = dir.join("mid.nlbii");
    std::fs::write(&mid, &n).unwrap();
    let l = stdout(&biint(&["translate", "--from", "nlbii", "--to", "llbii", "--root", "x", mid.to_str().unwrap()]));
    // a singleton end sequent, so equality up to renaming is equality
    let first = |t: &str| t.lines().next().unwrap().to_string();
    let original = std::fs::read_to_string(&src).unwrap();
    let end = |t: &str| biint::labelled::parse_labelled_sequent(first(t).split('"').nth(1).unwrap()).unwrap();
    assert_eq!(end(&l), end(original.lines().find(|l| l.starts_with('(')).unwrap()));
}

#[test]
fn countermodels() {
    let o = biint(&["countermodel", "|- p | (p -> F)", "--max-worlds", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "worlds: w0 w1\narcs: w0>w1\nw0:\nw1: p\nat: w0\n");
    let o = biint(&["countermodel", GOAL, "--max-worlds", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "none up to 3");
    assert_eq!(stdout(&biint(&["countermodel", "p |- p", "--max-worlds", "1"])).trim(), "none up to 1");
}

#[test]
fn parse_prints_canonical_text() {
    let o = biint(&["parse", "!p -> ~q & r"]);
    assert_eq!(stdout(&o).trim(), "(p -> F) -> (T -< q) & r");
    let o = biint(&["parse", "--kind", "nested", "[p |- q], r |- s"]);
    assert_eq!(stdout(&o).trim(), "r, [p |- q] |- s");
    assert_eq!(biint(&["parse", "p ->"]).status.code(), Some(2));
}

#[test]
fn corpus_report_is_reproducible() {
    let manifest = root().join("corpus/manifest.toml");
    let m = manifest.to_str().unwrap();
    let a = biint(&["corpus", m]);
    let b = biint(&["corpus", m]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).trim_end().ends_with("0 mismatches"));
}

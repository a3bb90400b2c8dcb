use std::path::PathBuf;
use std::process::Command;

use invariance_entropy::cli::run_with;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ientropy").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn feedback_entropy_of_ex4() {
    let (code, out, _) = run(&["ife", "-s", &fixture("ex4.sys"), "--target", "0,1,2,3,4", "--inputs", "a,b,c"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("h_fb exact=(1/4)*log2(2) decimal=0.250000000000"));
}

#[test]
fn structural_hinv_of_ex4() {
    let (code, out, _) = run(&["hinv-exact", "-s", &fixture("ex4.sys"), "--target", "0,1,2,3,4", "--inputs", "a,b,c"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("h_inv exact=0 (rho=1 structural)"));
}

#[test]
fn rinv_of_ex2() {
    let (code, out, _) = run(&["rinv", "-s", &fixture("ex2.sys"), "--target", "0,2", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("r_inv=8"));
}

#[test]
fn finite_horizon_figures_are_upper_bounds() {
    let (code, out, _) = run(&["entropy-report", "-s", &fixture("ex1.sys"), "--target", "0,1", "-n", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().starts_with("h_inv upper_bound "), "{out}");
    let (_, out, _) = run(&["refine-search", "-s", &fixture("ex4.sys"), "--target", "0,1,2,3,4"]);
    assert!(out.starts_with("h_fb upper_bound exact=(1/4)*log2(2)"), "{out}");
}

#[test]
fn tsv_tables() {
    let (code, out, _) = run(&["matrices", "-s", &fixture("ex4.sys"), "-c", &fixture("ex4_a1.cov"), "--format", "tsv"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "M\tA10\tA11\tA12\nA10\t0\t1\t1\nA11\t1\t0\t0\nA12\t0\t0\t1\n\n\
         W\tA10\tA11\tA12\nA10\t0\t2\t2\nA11\t1\t0\t0\nA12\t0\t0\t1\n"
    );
    let (_, out, _) = run(&["cover-entropy", "-s", &fixture("ex4.sys"), "-c", &fixture("ex4_a2.cov"), "--format", "tsv", "--m-max", "4"]);
    assert!(out.contains("mmcw\texact=(1/4)*log2(2)\tdecimal=0.250000000000\n"), "{out}");
    assert!(out.contains("m\tmax_product\tterm_exact\tterm_decimal\tr_inv_cover\tidentity\n"));
}

#[test]
fn exit_codes() {
    // Domain failures.
    let (code, _, err) = run(&["rinv", "-s", &fixture("ex1.sys"), "--target", "0"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[NotControlledInvariant]"), "{err}");
    let (code, _, err) = run(&["hinv-exact", "-s", &fixture("ex3.sys"), "--target", "0,1,2"]);
    assert_eq!(code, 1, "{err}");
    let (code, out, _) = run(&["conditions", "-s", &fixture("ex3.sys"), "--target", "0,1,2"]);
    assert_eq!(code, 1);
    assert!(out.contains("ok=false"));
    // Malformed input and usage.
    let (code, _, err) = run(&["validate", "-s", &fixture("bad/dup_trans.sys")]);
    assert_eq!(code, 2);
    assert!(err.contains("E_DUP_TRANS"), "{err}");
    let (code, _, _) = run(&["validate", "-s", &fixture("missing.sys")]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["rinv", "-s", &fixture("ex2.sys")]);
    assert_eq!(code, 2);
    // Budgets.
    let (code, _, err) = run(&["rinv", "-s", &fixture("ex2.sys"), "--target", "0,2", "-n", "5", "--budget", "1"]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error[SearchBudgetExceeded]"), "{err}");
    let (code, out, _) = run(&["refine-search", "-s", &fixture("ex4.sys"), "--target", "0,1,2,3,4", "--budget", "0"]);
    assert_eq!(code, 3);
    assert!(out.contains("complete=false"));
}

#[test]
fn cover_commands() {
    let (code, out, _) = run(&["cover-check", "-s", &fixture("ex4.sys"), "-c", &fixture("ex4_a3.cov")]);
    assert_eq!(code, 0);
    assert!(out.contains("A30 = {0} input a D = {A32,A33}"), "{out}");
    assert!(out.contains("quasi_invariant_partition=true"));
    let (code, out, _) = run(&["cover-rinv", "-s", &fixture("ex1.sys"), "-c", &fixture("ex1.cov"), "-n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("r_inv_cover=32"));
    let (code, out, _) = run(&["oracle", "-s", &fixture("ex4.sys"), "-c", &fixture("ex4_a3.cov"), "-n", "3"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.ends_with("agree=true")), "{out}");
}

#[test]
fn binary_output_is_reproducible() {
    let bin = env!("CARGO_BIN_EXE_ientropy");
    let args = ["cover-entropy", "-s", &fixture("ex4.sys"), "-c", &fixture("ex4_a3.cov")];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a, b);
}

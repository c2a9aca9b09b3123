use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn weyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = weyl(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn stderr_of(args: &[&str]) -> (i32, String) {
    let out = weyl(args);
    (out.status.code().unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn jacobian_verdicts() {
    let (code, out) = run(&["jacobian", &fixture("identity.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("det: 1\n") && out.contains("PASS det is a nonzero constant"));

    let (code, out) = run(&["jacobian", &fixture("shear.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("jacobian matrix: [[1, 2*x2], [0, 1]]"));
    assert!(out.contains("det: 1\n"));

    let (code, out) = run(&["jacobian", &fixture("square.txt")]);
    assert_eq!(code, 1);
    assert!(out.contains("det: 2*x1") && out.contains("result: fail"));
}

#[test]
fn extend_prints_images_and_checks() {
    let (code, out) = run(&["extend", &fixture("identity.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("d1' = d1") && out.contains("d2' = d2"));

    let (code, out) = run(&["extend", &fixture("shear.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("d2' = -2*x2*d1 + d2"), "{out}");
    assert!(out.contains("PASS defining relations (10)"));

    let (code, out) = run(&["extend", &fixture("shear.txt"), "--potential", "x1^2*x2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS potential recovered up to a constant"));

    let (code, _) = run(&["extend", &fixture("square.txt")]);
    assert_eq!(code, 1);
}

#[test]
fn lift_reports() {
    let (code, out) = run(&["lift", &fixture("poisson_identity.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("det: 1\n"));

    let (code, out) = run(&["lift", &fixture("poisson_shear.txt")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("d1' = 6*x1*d2 + d1"));
    assert!(out.contains("PASS det in {1, -1}"));

    let (code, out) = run(&["lift", &fixture("poisson_scaling.txt")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL {x1', x2'}: -1"), "{out}");
}

#[test]
fn gr_is_poisson_and_ignores_potentials() {
    for f in ["identity.txt", "shear.txt"] {
        let (code, out) = run(&["gr", &fixture(f)]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS gr preserves the Poisson bracket"));
    }
    let (code, out) = run(&["gr", &fixture("shear.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("x4 -> -2*x2*x3 + x4"));
    let (code, out) = run(&["gr", &fixture("shear.txt"), "--potential", "x1^3 - x2"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS gr unchanged by the potential"));
}

#[test]
fn invert_roundtrips() {
    let (code, out) = run(&["invert", &fixture("identity.txt"), "--trunc", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("  x1 -> x1\n  x2 -> x2\n"), "{out}");

    let (code, out) = run(&["invert", &fixture("shear.txt"), "--trunc", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("x1 -> -x2^2 + x1"));
    assert!(out.contains("exact polynomial inverse: yes"));

    let (code, out) = run(&["invert", &fixture("composed.txt"), "--trunc", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS map o inverse = id mod degree 9"));
    assert!(out.contains("PASS inverse o map = id mod degree 9"));
}

#[test]
fn bounds_values() {
    let (code, out) = run(&["bounds", &fixture("shear.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("d = 2") && out.contains("m = 2") && out.contains("bound module length m^n = 4"));

    let (_, out) = run(&["bounds", &fixture("cubic.txt")]);
    assert!(out.contains("bound module length m^n = 9") && out.contains("bound weyl d^(2n) = 81"));

    let (_, out) = run(&["bounds", &fixture("identity.txt")]);
    assert!(out.contains("d = 1") && out.contains("m^n = 1") && out.contains("d^(2n) = 1"));

    let (code, out) = run(&["bounds", &fixture("poisson_shear.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("bound module length d^(2n) = 4"));
}

#[test]
fn hilbert_dims_and_growth() {
    let (code, out) = run(&["hilbert", &fixture("shear.txt"), "--steps", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("dims: [1, 6, 15, 28]"));
    assert!(out.contains("PASS generators raise filtration level by at most one (step 2)"));

    let (code, out) = run(&["hilbert", &fixture("identity.txt"), "--steps", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("dims: [1, 3, 6, 10, 15]"));
}

#[test]
fn cyclic_verdicts() {
    let (code, out) = run(&["cyclic", &fixture("identity.txt"), "--opdeg", "3", "--maxdeg", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("dims: [1, 3, 6, 10]"));

    let (code, out) = run(&["cyclic", &fixture("shear.txt"), "--opdeg", "4", "--maxdeg", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("dims: [1, 3, 6, 8]"));

    let (code, out) = run(&["cyclic", &fixture("shear.txt"), "--opdeg", "6", "--maxdeg", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS generates up to degree 3 at operator degree 6"));

    let (code, out) = run(&["cyclic", &fixture("shear.txt"), "--gen", "x1*x2", "--opdeg", "0", "--maxdeg", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("dims: [0, 0, 1, 1]"));
}

#[test]
fn input_errors_exit_2() {
    let (code, err) = stderr_of(&["jacobian", &fixture("bad_syntax.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 13"), "{err}");

    let (code, err) = stderr_of(&["lift", &fixture("shear.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("poisson"));

    let (code, _) = stderr_of(&["jacobian", &fixture("missing.txt")]);
    assert_eq!(code, 2);

    let (code, _) = stderr_of(&["cyclic", &fixture("shear.txt"), "--gen", "0"]);
    assert_eq!(code, 2);

    let (code, _) = stderr_of(&["extend", &fixture("shear.txt"), "--potential", "x3"]);
    assert_eq!(code, 2);

    let (code, _) = stderr_of(&["frobnicate", &fixture("shear.txt")]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["extend", "shear.txt"],
        vec!["invert", "composed.txt"],
        vec!["hilbert", "shear.txt"],
    ] {
        let path = fixture(args[1]);
        let text = |f: &str| run(&["--format", f, args[0], &path]).1;
        assert_eq!(text("text"), text("text"));

        let strip = |s: String| {
            let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
            v.as_object_mut().unwrap().remove("timing_ms");
            v
        };
        let a = strip(text("structured"));
        let b = strip(text("structured"));
        assert_eq!(a, b);
        assert_eq!(a["command"], args[0]);
        assert_eq!(a["input_digest"].as_str().unwrap().len(), 64);
    }
}

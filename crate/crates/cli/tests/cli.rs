use std::process::{Command, Output};

fn stiefel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stiefel")).args(args).env_remove("STIEFEL_SEED").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = stiefel(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["sq", "-i", "2", "r2", "-n", "3", "-m", "3"]).trim(), "r3");
    assert_eq!(ok(&["mul", "r2", "r2", "-n", "3", "-m", "3", "--coeff", "Z"]).trim(), "{−1} r3");
    assert_eq!(ok(&["map", "cmp", "-n", "3", "r3"]).trim(), "s·e^2");
}

#[test]
fn presentation_listing() {
    let text = ok(&["present", "-n", "3", "-m", "3"]);
    for needle in ["r1", "r2", "r3", "r2^2 = {−1} r3", "r3^2 = 0"] {
        assert!(text.contains(needle), "{needle} missing from\n{text}");
    }
    let trivial = ok(&["present", "-n", "4", "-m", "0"]);
    assert!(trivial.contains("no generators"), "{trivial}");

    let bad = stiefel(&["present", "-n", "2", "-m", "5"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("m > n"));
}

#[test]
fn latex_is_a_document() {
    let tex = ok(&["present", "-n", "3", "--format", "latex"]);
    assert!(tex.starts_with("\\documentclass"));
    assert!(tex.trim_end().ends_with("\\end{document}"));
    assert!(tex.contains("\\rho_{2}^2 &= \\{-1\\} \\rho_{3}"));
}

#[test]
fn json_output_feeds_back_in() {
    let json = ok(&["mul", "r2", "r2", "-n", "3", "--coeff", "Z", "--format", "json"]);
    let json = json.trim();
    assert_eq!(
        json,
        r#"{"n":3,"m":3,"coeff":"Z","minus_one_is_square":false,"terms":[{"gens":[3],"mcoeff":[{"k":1,"c":1}]}]}"#
    );
    // Without -n the ring is read from the JSON argument.
    let again = ok(&["mul", json, "1", "--format", "json"]);
    assert_eq!(again.trim(), json);
}

#[test]
fn exit_codes() {
    assert_eq!(stiefel(&["mul", "r2", "zz", "-n", "3"]).status.code(), Some(2));
    assert_eq!(stiefel(&["bogus"]).status.code(), Some(2));
    assert_eq!(stiefel(&["sq", "-i", "2", "r2", "-n", "3", "--coeff", "Z"]).status.code(), Some(3));
    assert_eq!(stiefel(&["power", "-i", "1", "-p", "3", "r2", "-n", "3", "--char", "3"]).status.code(), Some(3));
    let json = r#"{"n":3,"m":3,"coeff":"Z/2","minus_one_is_square":false,"terms":[]}"#;
    assert_eq!(stiefel(&["mul", json, "r1", "-n", "4"]).status.code(), Some(3));
    assert_eq!(stiefel(&["check", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn operations_and_pieces() {
    assert_eq!(ok(&["power", "-i", "1", "-p", "3", "r2*r3", "-n", "5"]).trim(), "2 r2·r5 + 2 r3·r4");
    assert_eq!(ok(&["bockstein", "-p", "3", "r2", "-n", "3"]).trim(), "0");
    let piece = ok(&["basis", "4", "3", "-n", "3", "--coeff", "Z"]);
    assert!(piece.contains("R^1 ⊕ (R/2R)^1"), "{piece}");
    assert_eq!(ok(&["series", "-n", "2"]).trim(), "P_W(2,2)(T) = 1 + T^(1,1) + T^(3,2) + T^(4,3)");
    let kernel = ok(&["kernel", "cmp", "4", "3", "-n", "3", "--coeff", "Z"]);
    assert!(kernel.contains("r1·r2 + {−1} r2"), "{kernel}");
    assert_eq!(ok(&["map", "imm", "-n", "3", "r1*r3 + r2"]).trim(), "r2");
    assert_eq!(ok(&["map", "proj", "--to", "3", "-n", "3", "-m", "1", "r3"]).trim(), "r3");
    assert_eq!(ok(&["map", "perm", "--perm", "2,1", "-n", "3", "-m", "2", "r2*r3"]).trim(), "r2·r3");
}

#[test]
fn check_suites() {
    let report = ok(&["check", "--suite", "commutativity", "--seed", "42"]);
    assert!(report.contains("PASS commutativity"), "{report}");
    let oracle = ok(&["check", "--suite", "cartan-oracle"]);
    assert!(oracle.contains("PASS cartan-oracle"), "{oracle}");
}

#[test]
fn seed_variable_overrides_flag() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_stiefel"));
        cmd.args(["check", "--suite", "json-roundtrip", "--seed", "5", "--format", "json"]);
        match env {
            Some(v) => cmd.env("STIEFEL_SEED", v),
            None => cmd.env_remove("STIEFEL_SEED"),
        };
        stdout(&cmd.output().unwrap())
    };
    assert!(run(None).contains(r#""seed":5"#));
    assert!(run(Some("9")).contains(r#""seed":9"#));
    assert_eq!(run(Some("9")), run(Some("9")));
}

use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ringstar(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ringstar"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap().trim_end().to_string(),
        stderr: String::from_utf8(out.stderr).unwrap().trim_end().to_string(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = ringstar(args);
    assert_eq!(r.code, 0, "{args:?} failed: {}", r.stderr);
    r.stdout
}

fn fails(args: &[&str], code: i32, tag: &str) -> String {
    let r = ringstar(args);
    assert_eq!(r.code, code, "{args:?}: stdout {} stderr {}", r.stdout, r.stderr);
    assert!(
        r.stderr.starts_with(&format!("error[{tag}]")),
        "{args:?}: expected {tag}, got {}",
        r.stderr
    );
    r.stderr
}

#[test]
fn expectation_of_shifted_term_vanishes() {
    assert_eq!(ok(&["expect", "Sstar(2) U(1) E(R) S(3)"]), "0");
}

#[test]
fn parity_projections_sum_to_one() {
    assert_eq!(ok(&["eq", "1", "E(0 mod ideal(2)) + E(1 mod ideal(2))"]), "true");
    assert_eq!(ok(&["eq", "1", "E(0 mod ideal(2))"]), "false");
}

#[test]
fn diagonal_norm() {
    assert_eq!(ok(&["norm", "2 E(0 mod ideal(2)) + 3 E(1 mod ideal(2))"]), "3");
}

#[test]
fn products_and_adjoints() {
    assert_eq!(ok(&["mul", "S(2)", "Sstar(2)"]), "E(0 mod ideal(2))");
    assert_eq!(ok(&["mul", "Sstar(2)", "S(2)"]), "1");
    assert_eq!(ok(&["adjoint", "U(3)"]), "U(-3)");
    assert_eq!(
        ok(&["eval", "S(2) + U(1) - i U(2)", "--at", "3"]),
        "xi(4) - i xi(5) + xi(6)"
    );
}

#[test]
fn criterion_example_passes() {
    let out = ok(&["criterion", "--ring", "z", "E(0 mod ideal(2)) + U(1) + U(-1) + 1"]);
    assert!(out.contains("norm: pass"), "{out}");
    assert!(!out.contains("FAIL"), "{out}");
    let json = ok(&["--format", "json", "criterion", "U(1) + U(-1)"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn refutation_of_example_cover() {
    let out = ok(&[
        "refute",
        "--ring",
        "opoly:-5",
        "--ideal",
        "colon(ideal(1+w),2)",
        "--by",
        "(0,2);(0,T)",
    ]);
    assert!(out.starts_with("witness 3"), "{out}");
    assert!(out.contains("constant-not-contained"));
    assert!(out.contains("degree-separation"));
}

#[test]
fn covering() {
    assert_eq!(
        ok(&[
            "cover",
            "--coset",
            "R",
            "--by",
            "0 mod ideal(2);1 mod ideal(4);3 mod ideal(4)"
        ]),
        "covered"
    );
    assert_eq!(
        ok(&["cover", "--coset", "R", "--by", "0 mod ideal(2);1 mod ideal(4)"]),
        "witness 3"
    );
}

#[test]
fn indices() {
    assert_eq!(ok(&["index", "--ideal", "ideal(6)"]), "6");
    assert_eq!(ok(&["index", "--ideal", "ideal(2)", "--relative", "ideal(6)"]), "3");
    assert_eq!(ok(&["--ring", "qpoly", "index", "--ideal", "ideal(T)"]), "infinite");
    assert_eq!(ok(&["--ring", "quad:-1", "index", "--ideal", "ideal(1+w)"]), "2");
}

#[test]
fn divisor_graph_dot() {
    let dot = ok(&["spectrum", "--ring", "z", "--level", "12", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    for edge in ["\"Z/12\" -> \"Z/6\"", "\"Z/12\" -> \"Z/4\"", "\"Z/2\" -> \"Z/1\""] {
        assert!(dot.contains(edge), "{dot}");
    }
    assert_eq!(dot.matches("->").count(), 7);
}

#[test]
fn character_evaluation() {
    assert_eq!(
        ok(&[
            "spectrum",
            "--level",
            "12",
            "--at",
            "5",
            "--element",
            "2 E(1 mod ideal(4)) + E(2 mod ideal(3))"
        ]),
        "3"
    );
}

#[test]
fn semigroup_commands() {
    let dot = ok(&[
        "semigroup",
        "--kind",
        "free:2",
        "family",
        "--depth",
        "3",
        "--format",
        "dot",
    ]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"P\" -> \"aP\""));
    let out = ok(&["semigroup", "--kind", "axb", "quasilattice", "--depth", "3"]);
    assert!(out.starts_with("quasi-lattice"), "{out}");
}

#[test]
fn json_is_deterministic() {
    let args = [
        "--format",
        "json",
        "orthogonalize",
        "E(0 mod ideal(2))",
        "E(0 mod ideal(3))",
    ];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["atoms"].as_array().unwrap().len(), 3);
}

#[test]
fn conditions_report() {
    let out = ok(&["--ring", "cyc:3", "check-conditions"]);
    assert!(out.contains("intersection: holds"));
    assert!(out.contains("index: holds"));
}

#[test]
fn input_errors_exit_two() {
    let e = fails(&["--ring", "cyc:2", "eval", "S(1+t)"], 2, "not_regular");
    assert!(e.contains("offset 2"), "{e}");
    fails(&["--ring", "quad:4", "eval", "1"], 2, "invalid_descriptor");
    fails(&["--ring", "zinv:3", "eval", "U(1/2)"], 2, "backend_mismatch");
    fails(&["eval", "U(1/2)"], 2, "syntax");
    fails(&["mul", "U(1)", "E(1 mod ideal(3"], 2, "syntax");
    fails(
        &["--ring", "opoly:-5", "index", "--ideal", "ideal(T, w)"],
        2,
        "order_poly_class",
    );
    fails(&["refute", "--ideal", "ideal(2)", "--by", "(0,0)"], 2, "not_regular");
    fails(
        &["spectrum", "--level", "12", "--ring", "quad:-1", "--format", "dot"],
        2,
        "usage",
    );
    fails(&["--family", "ideal(2)", "eval", "E(0 mod ideal(3))"], 2, "usage");
    fails(&["semigroup", "--kind", "tree", "family"], 2, "usage");
}

#[test]
fn computation_errors_exit_one() {
    fails(&["norm", "U(1)"], 1, "not_diagonal");
    fails(&["orthogonalize", "2 E(R)"], 1, "not_projection");
    fails(&["criterion", "U(1)"], 1, "not_self_adjoint");
    fails(&["criterion", "0"], 1, "zero_input");
    fails(&["refute", "--ideal", "ideal(2)", "--by", "(0,1)"], 1, "unit_candidate");
    fails(&["spectrum", "--level", "0"], 1, "infinite_index");
    fails(&["--ring", "zinv:2", "spectrum", "--level", "4"], 1, "not_applicable");
    fails(
        &[
            "spectrum",
            "--level",
            "12",
            "--at",
            "1",
            "--element",
            "E(0 mod ideal(5))",
        ],
        1,
        "not_above_modulus",
    );
    fails(
        &["--ring", "prod:(z,z)", "criterion", "E(0 mod ideal((2|0)))"],
        1,
        "hypothesis",
    );
    let many: Vec<String> = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
        .iter()
        .map(|p| format!("E(0 mod ideal({p}))"))
        .collect();
    let mut args = vec!["orthogonalize"];
    args.extend(many.iter().map(String::as_str));
    fails(&args, 1, "family_too_large");
}

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use sgpvar_cli::{cmd_build, cmd_certificate, cmd_graph, cmd_validate, run, CliConfig, Format, Outcome};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn sgpvar(args: &[&str]) -> Outcome {
    run(std::iter::once("sgpvar").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = sgpvar(&full);
    (o.code(), serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", o.stdout)))
}

const FIG1: &str = "t -> t\nx -> x\nx -> y\nx -> z\ny -> y\ny -> z\nz -> t\nz -> x\nz -> y\ninitial: x\nfinal: t\n";

#[test]
fn validate_reports_order_and_idempotents() {
    let o = sgpvar(&["validate", &data("ac2.sgp")]);
    assert_eq!((o.code(), o.stdout.as_str()), (0, "order 6, associative, 4 idempotents\n"));
    let o = sgpvar(&["validate", &data("e.sgp")]);
    assert!(o.stdout.starts_with("order 1,"), "{}", o.stdout);
}

#[test]
fn validate_rejects_a_broken_table_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.sgp");
    let text = std::fs::read_to_string(data("ac2.sgp")).unwrap();
    // (a, a) := b breaks associativity.
    let broken = text.replacen("0 2 2 0 4 5", "1 2 2 0 4 5", 1);
    assert_ne!(broken, text);
    std::fs::write(&path, broken).unwrap();
    let o = sgpvar(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.code(), 2);
    assert!(o.stderr.contains("witness triple"), "{}", o.stderr);
    let (code, v) = json_of(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("witness triple"));
}

#[test]
fn member_verdicts_and_exit_codes() {
    for (input, code) in [
        (data("ac2.sgp"), 0),
        (data("rees9.sgp"), 0),
        (data("rees9.rees"), 0),
        ("product(A2, C2)".to_string(), 0),
        (data("b21.sgp"), 1),
        ("cyclic:3".to_string(), 1),
        (data("rees_twisted.rees"), 1),
        ("no-such-builder".to_string(), 2),
    ] {
        assert_eq!(sgpvar(&["member", &input]).code(), code, "{input}");
        assert_eq!(json_of(&["member", &input]).0, code, "{input}");
    }
    let o = sgpvar(&["member", &data("b21.sgp")]);
    assert!(o.stdout.contains("verdict: non-member"));
    assert!(o.stdout.contains("assignment: x -> 1, y -> e12"), "{}", o.stdout);
    let o = sgpvar(&["member", &data("rees_twisted.rees")]);
    assert!(o.stdout.contains("certificate: non_combinatorial_closure"));
    assert!(o.stdout.contains("family: eq4(2)"), "{}", o.stdout);
}

#[test]
fn member_text_and_json_agree() {
    for input in [data("ac2.sgp"), data("b21.sgp"), "cyclic:4".into(), data("rees_twisted.rees")] {
        let text = sgpvar(&["member", &input]);
        let (code, v) = json_of(&["member", &input]);
        assert_eq!(text.code(), code);
        let c = &v["certificate"];
        assert!(text.stdout.contains(&format!("verdict: {}", v["verdict"].as_str().unwrap())));
        assert!(text.stdout.contains(&format!("certificate: {}", c["kind"].as_str().unwrap())));
        if let Some(identity) = c["identity"].as_str() {
            assert!(text.stdout.contains(&format!("identity: {identity}")));
            let labels: Vec<&str> = v["labels"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
            for (var, index) in c["assignment"].as_object().unwrap() {
                let label = labels[index.as_u64().unwrap() as usize];
                assert!(text.stdout.contains(&format!("{var} -> {label}")));
            }
            let lhs = labels[c["lhs_value"].as_u64().unwrap() as usize];
            assert!(text.stdout.contains(&format!("lhs: {lhs}\n")));
        }
    }
}

#[test]
fn identity_checks() {
    let o = sgpvar(&["identity", &data("ac2.sgp"), "xyxzx = xzxyx"]);
    assert_eq!(o.code(), 0);
    let o = sgpvar(&["identity", &data("ac2.sgp"), "xy = yx"]);
    assert_eq!(o.code(), 1);
    assert!(o.stdout.contains("assignment: x -> a, y -> b"), "{}", o.stdout);
    for input in [data("b21.sgp"), "cyclic:5".into(), data("e.sgp")] {
        assert_eq!(sgpvar(&["identity", &input, "x = x"]).code(), 0);
    }
    assert_eq!(sgpvar(&["identity", &data("ac2.sgp"), "xy"]).code(), 2);
}

#[test]
fn ac2_identity_renders_graphs() {
    let o = sgpvar(&["ac2-identity", "xyx = xyxyxyx"]);
    assert_eq!(o.code(), 0);
    assert!(o.stdout.contains("x -> y\ny -> x\n"), "{}", o.stdout);
    assert_eq!(sgpvar(&["ac2-identity", "xy = yx"]).code(), 1);
    assert_eq!(sgpvar(&["ac2-identity", "xx = xxxx"]).code(), 0);
    assert_eq!(sgpvar(&["ac2-identity", "xx = xxx"]).code(), 1);
    let (code, v) = json_of(&["ac2-identity", "xy = yx"]);
    assert_eq!((code, &v["holds"]), (1, &Value::Bool(false)));
}

#[test]
fn analyze_reports() {
    let o = sgpvar(&["analyze", &data("ac2.sgp")]);
    assert_eq!(o.code(), 0);
    for line in ["E-separable: yes", "aperiodic: no", "completely 0-simple: no"] {
        assert!(o.stdout.contains(line), "{line}\n{}", o.stdout);
    }
    let o = sgpvar(&["analyze", &data("a2.sgp")]);
    assert!(o.stdout.contains("completely 0-simple: yes"));
    assert!(o.stdout.contains("rees matrix: 2 x 2"));
    let (_, v) = json_of(&["analyze", &data("e.sgp")]);
    assert_eq!(v["order"], 1);
    assert_eq!(v["aperiodic"], true);
    assert_eq!(v["completely_0_simple"], false);
}

#[test]
fn certificates() {
    let cfg = CliConfig::default();
    let o = cmd_certificate(&cfg, "xyx");
    assert_eq!(o.code(), 0);
    assert!(o.stdout.starts_with("w' = y\nsteps: 1\n"), "{}", o.stdout);
    assert_eq!(cmd_certificate(&cfg, "xy").code(), 1);
    let o = cmd_certificate(&cfg, "xyxy");
    assert_eq!(o.code(), 0);
    assert!(o.stdout.contains("end=xyxyxyxyxyxy"), "{}", o.stdout);
    let tight = CliConfig { step_budget: Some(0), ..cfg };
    assert_eq!(cmd_certificate(&tight, "zxtzyt").code(), 3);
    assert_eq!(cmd_certificate(&cfg, "x1").code(), 2);

    let json = CliConfig { format: Format::Json, ..cfg };
    let v: Value = serde_json::from_str(&cmd_certificate(&json, "xyx").stdout).unwrap();
    assert_eq!(v["middle"], "y");
    assert_eq!(v["valid"], true);
}

#[test]
fn graphs_match_the_figure() {
    let cfg = CliConfig::default();
    let a = cmd_graph(&cfg, "x^2yzxzy^2zt^2");
    let b = cmd_graph(&cfg, "xy^3zyzx^2zyzt^3");
    assert_eq!(a.stdout, FIG1);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(cmd_graph(&cfg, "x").stdout, "initial: x\nfinal: x\n");
}

#[test]
fn build_then_validate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = CliConfig::default();
    let rees = format!("rees({})", data("rees9.rees"));
    for (expression, order) in
        [("AC2", 6), ("product(A2, C2)", 10), (rees.as_str(), 9), ("B21", 6), ("product(cyclic:3, leftzero:2)", 6)]
    {
        let path = dir.path().join("out.sgp");
        let o = cmd_build(&cfg, expression, Some(&path));
        assert_eq!(o.code(), 0, "{expression}: {}", o.stderr);
        let v = cmd_validate(&cfg, path.to_str().unwrap());
        assert_eq!(v.code(), 0, "{expression}: {}", v.stderr);
        assert!(v.stdout.starts_with(&format!("order {order},")), "{}", v.stdout);
    }
    let o = cmd_build(&cfg, "AC2", None);
    assert_eq!(o.stdout.lines().filter(|l| l.split_whitespace().count() == 6).count(), 6);
    assert_eq!(cmd_build(&cfg, "product(A2)", None).code(), 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sgpvar");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["member", &data("ac2.sgp")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: member"));
    assert_eq!(status(&["member", &data("b21.sgp")]).status.code(), Some(1));
    assert_eq!(status(&["member", "/nonexistent/file.sgp"]).status.code(), Some(2));
    assert_eq!(status(&["bogus"]).status.code(), Some(2));
    let out = status(&["graph", "x^2yzxzy^2zt^2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), FIG1);
}

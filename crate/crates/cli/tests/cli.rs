use std::process::{Command, Output};

fn logjet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logjet")).args(args).env_remove("LOGJET_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn wronskian_goldens() {
    let o = logjet(&["wronskian", "--sections", "1,z1,z1^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2*D1z1^3\n");

    let o = logjet(&["wronskian", "--sigma", "z1", "--sections", "z1", "--log"]);
    assert_eq!(stdout(&o), "0\n");

    let o = logjet(&["wronskian", "--sections", "1,z1+"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn log_wronskian_needs_sigma() {
    assert_eq!(logjet(&["wronskian", "--sections", "z1", "--log"]).status.code(), Some(2));
}

#[test]
fn nabla_goldens() {
    let o = logjet(&["nabla", "--sigma", "z1", "--section", "z1^2"]);
    assert_eq!(stdout(&o), "z1*D1z1\n");
    let o = logjet(&["nabla", "--sigma", "z1^2 + 1", "--section", "z1^2 + 1", "--order", "3"]);
    assert_eq!(stdout(&o), "0\n");
    let o = logjet(&["nabla", "--sigma", "0", "--section", "z1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tower_goldens() {
    let o = logjet(&["tower", "--n", "2", "--k", "2", "--f", "z1*z2"]);
    assert_eq!(stdout(&o), "0: z1*z2\n1: z1_1*z2 + z1\n2: z1_2*z2 + 2*z1_1\n");
    let o = logjet(&["tower", "--n", "2", "--k", "2", "--f", "z1*z2", "--adapted"]);
    assert_eq!(stdout(&o), "0: z1*z2\n1: z1\n2: 0\n");
    let o = logjet(&["tower", "--n", "2", "--k", "2", "--f", "z1", "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_text_and_range_errors() {
    let o = logjet(&["bounds", "--from", "2", "--to", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("248832"));
    assert_eq!(logjet(&["bounds", "--from", "1", "--to", "2"]).status.code(), Some(2));
    assert_eq!(logjet(&["bounds", "--from", "4", "--to", "3"]).status.code(), Some(2));
}

#[test]
fn bounds_json_is_stable_and_uses_decimal_strings() {
    let a = logjet(&["bounds", "--from", "2", "--to", "5", "--format", "json"]);
    let b = logjet(&["bounds", "--from", "2", "--to", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid json");
    let rows = v.as_array().expect("array");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["kobayashi_bound"], "248832");
    assert_eq!(rows[1]["kobayashi_bound"], "64000000");
    for row in rows {
        assert!(row["kobayashi_bound"].is_string());
        assert!(row["threshold_smt"].is_string());
        assert_eq!(row["basic_inequality"], true);
        assert_eq!(row["dimension_audit"]["margin_negative"], true);
    }
}

#[test]
fn verify_exit_codes() {
    let o = logjet(&["verify", "--suite", "all", "--seed", "1", "--size", "small"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("seed 1\n"));

    let o = logjet(&["verify", "--suite", "logconn", "--seed", "1", "--corrupt-nabla"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("logconn.tautological_vanishing"));
    assert!(stdout(&o).contains("FAILED"));

    assert_eq!(logjet(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(logjet(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(logjet(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = logjet(&["verify", "--suite", "all", "--seed", "42"]);
    let b = logjet(&["verify", "--suite", "all", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_logjet");
    let o = Command::new(bin).args(["verify", "--suite", "jetalg"]).env("LOGJET_SEED", "5").output().unwrap();
    assert!(stdout(&o).starts_with("seed 5\n"));
    let o = Command::new(bin).args(["verify", "--suite", "jetalg", "--seed", "6"]).env("LOGJET_SEED", "5").output().unwrap();
    assert!(stdout(&o).starts_with("seed 6\n"));
    let o = logjet(&["verify", "--suite", "jetalg"]);
    assert!(stdout(&o).starts_with("seed 20190501\n"));
    let o = Command::new(bin).args(["verify"]).env("LOGJET_SEED", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fermat_example_passes_and_echoes_the_family() {
    let path = fixture("example_family.toml");
    let o = logjet(&["fermat", &path, "--checks", "all"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    let (echo, report) = out.split_once("---\n").expect("separator");
    let original = logjet::fermat::FermatFamily::from_toml(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let echoed = logjet::fermat::FermatFamily::from_toml(echo).unwrap();
    assert_eq!(echoed, original);
    assert_eq!(echo, original.to_toml());
    for check in ["factor", "system", "plucker", "rank"] {
        let line = report.lines().find(|l| l.starts_with(check)).expect(check);
        assert!(line.ends_with("ok"), "{line}");
    }
}

#[test]
fn fermat_negative_fixtures() {
    let o = logjet(&["fermat", &fixture("bad_index_weight.toml")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("|I|"));

    let o = logjet(&["fermat", &fixture("example_family.toml"), "--checks", "system", "--perturb-graph"]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(logjet(&["fermat", &fixture("missing.toml")]).status.code(), Some(2));
}

#[test]
fn fermat_single_check() {
    let o = logjet(&["fermat", &fixture("example_family.toml"), "--checks", "factor"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.contains("factor") && !out.contains("rank"));
}

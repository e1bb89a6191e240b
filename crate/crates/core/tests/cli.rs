use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_superspherical"));
    cmd.env_remove("SUPERSPHERICAL_DEGREE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn alpha_json() {
    let o = run(&["alpha", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"schema\":\"1\",\"n\":3,\"alpha\":[\"0\",\"-3\",\"0\",\"1\"]}\n");
}

#[test]
fn beta_methods_agree() {
    let rec = run(&["beta", "--n", "5"]);
    let pbw = run(&["beta", "--n", "5", "--method", "pbw"]);
    let closed = run(&["beta", "--n", "5", "--method", "closed"]);
    assert_eq!(stdout(&rec), stdout(&pbw));
    assert_eq!(stdout(&rec), stdout(&closed));
}

#[test]
fn normal_form_of_reordered_word() {
    let o = run(&["nf", "--expr", "e*p"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["expr"], "e*p");
    let text = v["text"].as_str().unwrap();
    assert!(text.contains("p*e"), "{text}");
}

#[test]
fn syntax_error_exits_2() {
    let o = run(&["nf", "--expr", "p**e"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 2"));
}

#[test]
fn unknown_generator_exits_2() {
    let o = run(&["nf", "--expr", "q*p"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_suite_exits_2() {
    let o = run(&["check", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_all_small_degree() {
    let o = run(&["check", "--suite", "all", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["degree"], 3);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["check", "--suite", "radial", "--degree", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn degree_from_env_and_flag_precedence() {
    let from_env = bin()
        .args(["check", "--suite", "ideal"])
        .env("SUPERSPHERICAL_DEGREE", "2")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_env)).unwrap();
    assert_eq!(v["degree"], 2);
    let flag = bin()
        .args(["check", "--suite", "ideal", "--degree", "3"])
        .env("SUPERSPHERICAL_DEGREE", "2")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&flag)).unwrap();
    assert_eq!(v["degree"], 3);
}

#[test]
fn tsv_output() {
    let o = run(&["--format", "tsv", "zigzag", "--n", "4"]);
    assert_eq!(stdout(&o), "n\tzigzag\teuler\n0\t1\t1\n1\t1\t0\n2\t1\t-1\n3\t2\t0\n4\t5\t5\n");
}

#[test]
fn quotient_of_ideal_element_is_zero() {
    let o = run(&["quotient", "--expr", "p*k"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["text"], "0");
}

#[test]
fn other_algebras() {
    for alg in ["gl11", "q2"] {
        let o = run(&["check", "--suite", "hopf", "--degree", "3", "--algebra", alg]);
        assert_eq!(o.status.code(), Some(0), "{alg}");
    }
    let o = run(&["check", "--suite", "hopf", "--algebra", "@/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
}

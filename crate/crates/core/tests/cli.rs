use std::io::Write;
use std::process::{Command, Output};

use redalg::drsl2;

fn redalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("redalg-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn normalize_prints_ordering_relation() {
    let o = redalg(&["normalize", "z+ * z-"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("normalize: PASS\n"));
    assert!(text.contains("(h^2 + 3*h)/(h^2 + 3*h + 2) * z- * z+ - (1)/(h) * t * t + h"));
}

#[test]
fn normalize_json_terms() {
    let o = redalg(&["normalize", "(h+2)*t", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "normalize");
    assert_eq!(v["terms"][0]["coeff"]["num"], "h + 2");
    assert_eq!(v["terms"][0]["coeff"]["den"], "1");
    assert_eq!(v["terms"][0]["word"], serde_json::json!(["t"]));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(redalg(&["normalize", "z+ * w"]).status.code(), Some(2));
    assert_eq!(redalg(&["normalize", "(z+"]).status.code(), Some(2));
    assert_eq!(redalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        redalg(&["zero-divisor-probe", "--seed", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(redalg(&["--help"]).status.code(), Some(0));
}

#[test]
fn failed_verification_exits_one() {
    let dr = drsl2::build();
    let text = dr
        .presentation()
        .to_text()
        .replace("(h + 4)/(h + 2)", "(h + 5)/(h + 2)")
        .replace("(h + 2)/(h)", "(h + 5)/(h)");
    let path = temp_file("mutated.txt", &text);
    let path = path.to_str().unwrap();
    let o = redalg(&["confluence-check", "--presentation", path]);
    let _ = std::fs::remove_file(path);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("[FAIL] overlap z+ t z-"));
}

#[test]
fn presentation_file_reproduces_builtin() {
    let dr = drsl2::build();
    let path = temp_file("builtin.txt", &dr.presentation().to_text());
    let path = path.to_str().unwrap();
    let from_file = redalg(&["normalize", "z+ * t * z-", "--presentation", path, "--json"]);
    let builtin = redalg(&["normalize", "z+ * t * z-", "--json"]);
    let confluent = redalg(&["confluence-check", "--presentation", path]);
    let refused = redalg(&["center-check", "--presentation", path]);
    let _ = std::fs::remove_file(path);
    let a: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&builtin)).unwrap();
    assert_eq!(a["terms"], b["terms"]);
    assert_eq!(confluent.status.code(), Some(0));
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn seeded_json_is_stable() {
    let args = [
        "zero-divisor-probe",
        "--seed",
        "11",
        "--trials",
        "25",
        "--json",
    ];
    let first = stdout(&redalg(&args));
    let second = stdout(&redalg(&args));
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["meta"]["seed"], 11);
    assert_eq!(v["meta"]["trials"], 25);
    assert_eq!(v["pass"], true);
}

#[test]
fn verification_commands_pass() {
    for cmd in [
        "center-check",
        "confluence-check",
        "pbw-count",
        "symbol-check",
        "prop2-solve",
    ] {
        let o = redalg(&[cmd]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
    }
    let o = redalg(&["ore", "z+ + z-", "--k", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["s_tilde"], "h^2 + 6*h + 5");
    assert_eq!(v["result"], "(h + 7) * z- + (h - 1) * z+");
}

#[test]
fn commutator_of_casimir() {
    let o = redalg(&["commutator", "(h+2)*t", "z+", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], "0");
    assert_eq!(v["terms"], serde_json::json!([]));
}

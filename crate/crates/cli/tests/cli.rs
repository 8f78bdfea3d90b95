use std::path::PathBuf;
use std::process::{Command, Output};

fn tanaka(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tanaka")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_input(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const BABY: &str = r#""coordinates": ["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
  "weights": [1, 1, 1, 1, 2, 2, 2],
  "forms": ["d(x5) + x1*d(x4) + x2*d(x3)", "d(x6) + x3*d(x4) + x1*d(x2)", "d(x7) + x3*d(x1) + x2*d(x4)"]"#;

#[test]
fn growth_of_an_entry() {
    let o = tanaka(&["growth", "--entry", "example-2.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[4, 7]");
}

#[test]
fn verify_e2_reports_every_check() {
    let o = tanaka(&["verify", "e2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("layers: 8+16+30+16+8 = 78 ✓"), "{out}");
    assert!(out.contains("J (up to sign): J found ✓"), "{out}");
    assert!(!out.contains('✗'));
}

#[test]
fn malformed_file_is_a_usage_error() {
    let path = write_input("malformed.json", "{\"coordinates\": [\"x\"], \"forms\": [");
    let o = tanaka(&["prolong", "--file", path.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn unknown_verb_and_entry_exit_2() {
    assert_eq!(tanaka(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tanaka(&["growth", "--entry", "nope"]).status.code(), Some(2));
}

#[test]
fn file_input_matches_the_entry() {
    let path = write_input("baby.json", &format!("{{ {BABY} }}"));
    let o = tanaka(&["prolong", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3+4+7+4+3 = 21");
}

#[test]
fn non_integrable_flag_exits_1() {
    let body = format!(r#"{{ {BABY}, "mu": [{{"re": "d(x1)", "im": "d(x2)"}}, {{"re": "d(x3)", "im": "d(x4)"}}] }}"#);
    let path = write_input("bad_j.json", &body);
    let o = tanaka(&["check-integrable", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "integrable: false");
}

#[test]
fn symmetry_check_from_the_command_line() {
    // ∂/∂x5 preserves the system; x1·∂/∂x1 alone does not.
    let path = write_input("baby_sym.json", &format!("{{ {BABY} }}"));
    let p = path.to_str().unwrap();
    assert_eq!(tanaka(&["check-symmetry", "--file", p, "--field", "0;0;0;0;1;0;0"]).status.code(), Some(0));
    assert_eq!(tanaka(&["check-symmetry", "--file", p, "--field", "x1;0;0;0;0;0;0"]).status.code(), Some(1));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["rigidity", "--entry", "su", "--params", "t=0,r=1,s=2", "--json"];
    let (a, b) = (tanaka(&args), tanaka(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "rigidity");
    assert_eq!(v["results"]["rigid"], false);
    assert_eq!(v["results"]["weights"]["1"], 28);
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn provenance_is_echoed() {
    let o = tanaka(&["prolong", "--entry", "f4-cartan", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["provenance"]["total_dim"], "published");
    assert_eq!(v["provenance"]["layers"], "computed");
}

#[test]
fn classification_has_nineteen_rows() {
    let o = tanaka(&["classify", "--max-rank", "7", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 19);
}

#[test]
fn catalog_lists_and_shows() {
    let list = stdout(&tanaka(&["catalog", "list"]));
    assert_eq!(list.lines().count(), 13);
    let show = tanaka(&["catalog", "show", "so", "--params", "l=5"]);
    assert_eq!(show.status.code(), Some(0));
    assert!(stdout(&show).contains("so(4, 6)"));
}

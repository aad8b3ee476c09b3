use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resgraph"))
        .args(args)
        .current_dir(fixtures().join("graphs"))
        .output()
        .expect("binary runs")
}

struct Case {
    name: String,
    code: i32,
    args: Vec<String>,
}

fn cases() -> Vec<Case> {
    let manifest = fs::read_to_string(fixtures().join("cases.txt")).unwrap();
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            Case {
                name: parts[0].to_string(),
                code: parts[1].parse().unwrap(),
                args: parts[2].split_whitespace().map(String::from).collect(),
            }
        })
        .collect()
}

fn validator() -> jsonschema::Validator {
    let schema: Value =
        serde_json::from_str(&fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json")).unwrap())
            .unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, json: &Value, what: &str) {
    let errors: Vec<String> = v.iter_errors(json).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{what}: {errors:?}");
}

#[test]
fn fixture_matrix_matches_golden_output() {
    let cases = cases();
    assert_eq!(cases.len(), 20);
    let mut failures = Vec::new();
    for c in &cases {
        let args: Vec<&str> = c.args.iter().map(String::as_str).collect();
        let out = run(&args);
        let want = fs::read(fixtures().join("expected").join(format!("{}.out", c.name))).unwrap();
        let code = out.status.code().unwrap_or(-1);
        if code != c.code {
            failures.push(format!("{}: exit {code}, expected {}", c.name, c.code));
        }
        if out.stdout != want {
            failures.push(format!("{}: stdout differs:\n{}", c.name, String::from_utf8_lossy(&out.stdout)));
        }
        if code == 2 && (out.stderr.is_empty() || !out.stdout.is_empty()) {
            failures.push(format!("{}: input errors belong on stderr only", c.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn json_goldens_validate_against_the_schema() {
    let v = validator();
    let mut seen = 0;
    for c in cases() {
        let body = fs::read_to_string(fixtures().join("expected").join(format!("{}.out", c.name))).unwrap();
        if body.starts_with('{') {
            assert_valid(&v, &serde_json::from_str(&body).unwrap(), &c.name);
            seen += 1;
        }
    }
    assert!(seen >= 5);
}

#[test]
fn every_command_emits_schema_valid_json() {
    let v = validator();
    let runs: &[&[&str]] = &[
        &["fundamental", "--json", "e8.graph"],
        &["genus", "--json", "e8.graph"],
        &["genus", "--json", "double-edge-rational.graph"],
        &["yau", "--json", "chain-end.graph"],
        &["canonical", "--json", "e8.graph"],
        &["classify", "--json", "b1ab2.graph"],
        &["classify", "--json", "double-edge-rational.graph"],
        &["classify", "--json", "degree-three.graph"],
        &["pa-max", "--json", "genus-two.graph"],
        &["verify", "--json", "unresolved-tail.graph"],
        &["verify", "--json", "double-edge-rational.graph"],
        &["enumerate", "--json", "--max-vertices", "3"],
        &["enumerate", "--json", "--oracle", "--max-vertices", "2"],
    ];
    for args in runs {
        let out = run(args);
        if out.status.code() == Some(2) {
            continue;
        }
        let json: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_valid(&v, &json, &format!("{args:?}"));
    }
}

/// Integers after `=` or `:` in the text report.
fn text_numbers(text: &str) -> Vec<i64> {
    let mut out = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with("vertices:")) {
        let Some(pos) = line.find(['=', ':']) else { continue };
        for tok in line[pos + 1..].split(|c: char| !(c.is_ascii_digit() || c == '-')) {
            if let Ok(x) = tok.parse::<i64>() {
                out.push(x);
            }
        }
    }
    out.sort_unstable();
    out
}

fn json_numbers(v: &Value, out: &mut Vec<i64>) {
    match v {
        Value::Number(n) => out.push(n.as_i64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| json_numbers(x, out)),
        Value::Object(o) => o.values().for_each(|x| json_numbers(x, out)),
        _ => {}
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let runs: &[(&str, &str)] = &[
        ("genus", "chain-end.graph"),
        ("yau", "chain-end.graph"),
        ("yau", "d-long-arm.graph"),
        ("pa-max", "genus-two.graph"),
        ("pa-max", "chain-end.graph"),
    ];
    for (cmd, file) in runs {
        let text = String::from_utf8(run(&[cmd, file]).stdout).unwrap();
        let json: Value = serde_json::from_slice(&run(&[cmd, "--json", file]).stdout).unwrap();
        let mut nums = Vec::new();
        json_numbers(&json, &mut nums);
        nums.sort_unstable();
        assert_eq!(text_numbers(&text), nums, "{cmd} {file}");
    }
}

#[test]
fn fundamental_json_splits_chain_and_branch() {
    let out = run(&["fundamental", "--json", "e8.graph"]);
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["chain"], serde_json::json!([2, 4, 6, 5, 4, 3, 2]));
    assert_eq!(json["branch"], serde_json::json!([3]));
}

#[test]
fn stdin_input_is_accepted() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_resgraph"))
        .args(["fundamental", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"vertex a weight=-2; vertex b weight=-2; edge a b").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("Z = 1 1\n"));
}

#[test]
fn no_check_lets_dot_render_indefinite_graphs() {
    assert_eq!(run(&["dot", "not-definite.graph"]).status.code(), Some(2));
    let out = run(&["dot", "--no-check", "not-definite.graph"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("graph resolution {"));
}

#[test]
fn bad_arguments_are_input_errors() {
    for args in [
        &["verify", "--theorem", "Z", "b1ab2.graph"][..],
        &["fundamental", "missing.graph"],
        &["pa-max", "--bound", "0", "b1ab2.graph"],
        &["frobnicate"],
        &["enumerate", "--max-vertices", "9"],
        &["classify", "e8.graph"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn enumerate_writes_reproducers_for_failures() {
    let dir = std::env::temp_dir().join(format!("resgraph-repro-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    let out = run(&[
        "enumerate",
        "--max-vertices",
        "3",
        "--weights",
        "-3",
        "--genera",
        "0",
        "--reproducers",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 3);
    for f in &files {
        let replay = Command::new(env!("CARGO_BIN_EXE_resgraph"))
            .args(["verify", f.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(replay.status.code(), Some(1), "{}", f.display());
    }
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumerate_small_family_passes() {
    let out = run(&["enumerate", "--max-vertices", "3", "--weights", "-2", "--genera", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("blocking failures: 0"));
}

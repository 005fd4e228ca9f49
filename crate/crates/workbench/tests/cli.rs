use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_tcw");

/// Golden scripts and the exit code each must produce.
const GOLDEN: &[(&str, i32)] = &[
    ("fermat", 0),
    ("hk_f3", 0),
    ("models_fermat", 0),
    ("semigroup", 0),
    ("regular", 0),
    ("lc_fermat", 0),
    ("undetermined", 2),
    ("task_error", 1),
    ("parse_error", 1),
];

fn golden(name: &str, ext: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.{ext}"))
}

fn tcw(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("tcw runs")
}

fn run_json(name: &str, extra: &[&str]) -> Output {
    let script = golden(name, "tcw");
    let mut args = vec!["run", "--json", script.to_str().unwrap()];
    args.extend_from_slice(extra);
    tcw(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares against the frozen snapshot; `UPDATE_GOLDEN=1` rewrites it.
fn snapshot(path: &Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path).unwrap_or_else(|_| panic!("missing snapshot {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn golden_exit_codes_and_snapshots() {
    for &(name, code) in GOLDEN {
        let o = run_json(name, &[]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        if name == "parse_error" {
            assert!(o.stdout.is_empty());
            let err = String::from_utf8_lossy(&o.stderr);
            assert!(err.contains(":1:15:") && err.contains("parse-error"), "{err}");
            continue;
        }
        let json = stdout(&o);
        let doc: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["exit_code"], code);
        snapshot(&golden(name, "json"), &json);

        let text = tcw(&["run", golden(name, "tcw").to_str().unwrap()]);
        assert_eq!(text.status.code(), Some(code));
        snapshot(&golden(name, "txt"), &stdout(&text));
    }
}

#[test]
fn json_output_matches_schema() {
    let schema: Value = serde_json::from_str(tightclosure_workbench::SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    for &(name, _) in GOLDEN {
        if name == "parse_error" {
            continue;
        }
        let doc: Value = serde_json::from_str(&stdout(&run_json(name, &["--timing"]))).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{name}: {errors:#?}");
    }
    let printed = stdout(&tcw(&["schema"]));
    assert_eq!(printed, tightclosure_workbench::SCHEMA);
}

#[test]
fn schema_rejects_drift() {
    let schema: Value = serde_json::from_str(tightclosure_workbench::SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut doc: Value = serde_json::from_str(&stdout(&run_json("hk_f3", &[]))).unwrap();
    assert!(validator.is_valid(&doc));
    doc["tasks"][0]["result"]["data"]["rows"][0]["surprise"] = Value::Bool(true);
    assert!(!validator.is_valid(&doc));
}

#[test]
fn byte_stable_across_runs_and_thread_counts() {
    for name in ["fermat", "models_fermat", "regular"] {
        let one = stdout(&run_json(name, &["--threads", "1"]));
        let four = stdout(&run_json(name, &["--threads", "4"]));
        let default = stdout(&run_json(name, &[]));
        assert_eq!(one, four, "{name}");
        assert_eq!(one, default, "{name}");
    }
}

#[test]
fn hk_rows_over_f3() {
    let doc: Value = serde_json::from_str(&stdout(&run_json("hk_f3", &["--task", "1"]))).unwrap();
    assert_eq!(doc["tasks"].as_array().unwrap().len(), 1);
    let rows = doc["tasks"][0]["result"]["data"]["rows"].as_array().unwrap();
    let got: Vec<(u64, u64, u64, &str)> = rows
        .iter()
        .map(|r| {
            (
                r["e"].as_u64().unwrap(),
                r["q"].as_u64().unwrap(),
                r["length"].as_u64().unwrap(),
                r["normalized"]["decimal"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(got, vec![(1, 3, 9, "1.00000"), (2, 9, 81, "1.00000"), (3, 27, 729, "1.00000")]);
}

#[test]
fn models_over_the_integer_fermat_cubic() {
    let doc: Value = serde_json::from_str(&stdout(&run_json("models_fermat", &[]))).unwrap();
    let hull = &doc["tasks"][0]["result"]["data"];
    assert_eq!(hull["skipped"][0]["p"], 3);
    assert_eq!(hull["skipped"].as_array().unwrap().len(), 1);
    let primes: Vec<u64> = hull["fibers"].as_array().unwrap().iter().map(|f| f["p"].as_u64().unwrap()).collect();
    assert_eq!(primes, vec![2, 5, 7, 11, 13]);
    assert_eq!(hull["agreement"], "all fibers agree");
    assert_eq!(hull["consensus"], "(x, y, z^2)");
    assert_eq!(doc["tasks"][1]["result"]["data"]["consensus"], "IN");
    assert_eq!(doc["tasks"][2]["result"]["data"]["consensus"], "OUT_EVIDENCE");
}

#[test]
fn flags_and_task_options() {
    // --emax 1 starves the refutation of z; the task's own emax wins over the flag.
    let script = golden("fermat", "tcw");
    let s = script.to_str().unwrap();
    let starved = tcw(&["run", "--json", "--emax", "1", "--task", "3", s]);
    assert_eq!(starved.status.code(), Some(2));
    let doc: Value = serde_json::from_str(&stdout(&starved)).unwrap();
    assert_eq!(doc["config"]["emax"], 1);
    assert_eq!(doc["tasks"][0]["result"]["data"]["status"], "UNDETERMINED");

    let und = golden("undetermined", "tcw");
    let o = tcw(&["run", "--emax", "5", und.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let lex = tcw(&["run", "--json", "--order", "lex", "--task", "1", s]);
    assert_eq!(lex.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&lex)).unwrap();
    assert_eq!(doc["config"]["order"], "lex");
    let gens: Vec<&str> = doc["tasks"][0]["result"]["data"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["generator"].as_str().unwrap())
        .collect();
    assert_eq!(gens, vec!["x", "y", "z^2"]);

    let out_of_range = tcw(&["run", "--task", "99", s]);
    assert_eq!(out_of_range.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out_of_range.stderr).contains("out of range"));
}

#[test]
fn asserted_test_element() {
    let dir = std::env::temp_dir().join(format!("tcw-assert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.tcw");
    std::fs::write(
        &path,
        "ring R = char 5 vars x, y, z relations x^3+y^3-z^3 domain;\nideal I = x, y;\nelement c = x^2;\nelement z1 = z;\ntask tc-membership R I z1;\n",
    )
    .unwrap();
    let o = tcw(&["run", "--json", "--assert-test-element", "c", path.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let v = &doc["tasks"][0]["result"]["data"];
    assert_eq!(v["status"], "OUT_EVIDENCE");
    assert_eq!(v["route"], "asserted-test-element");
    assert_eq!(v["refutations"][0]["power"], 1);

    let bad = tcw(&["run", "--assert-test-element", "nope", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn check_and_render_subcommands() {
    let s = golden("regular", "tcw");
    let check = tcw(&["check", s.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert!(stdout(&check).starts_with("ok: "));
    let rendered = stdout(&tcw(&["render", s.to_str().unwrap()]));
    let reparsed = tightclosure_workbench::script::parse_script(&rendered).unwrap();
    let original = tightclosure_workbench::script::parse_script(&std::fs::read_to_string(&s).unwrap()).unwrap();
    assert_eq!(reparsed.decls, original.decls);

    let bad = tcw(&["check", golden("parse_error", "tcw").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let missing = tcw(&["check", "/nonexistent/file.tcw"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn crlf_scripts_run_like_lf() {
    let lf = std::fs::read_to_string(golden("hk_f3", "tcw")).unwrap();
    let dir = std::env::temp_dir().join(format!("tcw-crlf-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("crlf.tcw");
    std::fs::write(&path, lf.replace('\n', "\r\n")).unwrap();
    let a = stdout(&tcw(&["run", "--json", path.to_str().unwrap()]));
    let b = stdout(&run_json("hk_f3", &[]));
    assert_eq!(a, b);
    std::fs::remove_dir_all(dir).ok();
}

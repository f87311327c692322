use std::path::PathBuf;
use std::process::{Command, Output};

use hereditary::json::{GroupJson, ReportJson};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hereditary"));
    for (k, _) in std::env::vars() {
        if k.starts_with("HEREDITARY_") {
            c.env_remove(k);
        }
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap_or(Value::Null))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hereditary-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn unit_group_of_f5_c5() {
    let o = run(&["unitgroup", "--ring", "Fp:5", "--group", "cyclic:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[4,5,5,5,5]"), "{}", stdout(&o));
    let (_, v) = json(&["unitgroup", "--ring", "Fp:5", "--group", "cyclic:5"]);
    assert_eq!(v["abelian_invariants"], serde_json::json!([4, 5, 5, 5, 5]));
}

#[test]
fn epicount_methods_agree() {
    let (code, v) = json(&["epicount", "--g", "abelian:2,2", "--h", "cyclic:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["inclusion_exclusion"], "3");
    assert_eq!(v["bruteforce"], "3");
}

#[test]
fn pipeline_distinguishes_c8_from_c4xc2() {
    let args = ["pipeline", "--ring", "Fp:2", "--g", "cyclic:8", "--h", "abelian:4,2"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("AlgebrasDistinguished"));
    let (_, v) = json(&args);
    let report: ReportJson = serde_json::from_value(v.clone()).expect("report matches its schema");
    assert_eq!(report.verdict, hereditary::json::VerdictJson::AlgebrasDistinguished { row: 0 });
    // deterministic across runs
    assert_eq!(json(&args).1, v);
}

#[test]
fn pipeline_inconclusive_exits_one() {
    let o = run(&["pipeline", "--ring", "Fp:2", "--g", "cyclic:8", "--h", "cyclic:4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Inconclusive"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["homcount", "--g", "cyclic:3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["homcount", "--g", "bogus:3", "--h", "cyclic:2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown catalog name `bogus`"));
    assert_eq!(run(&["unitgroup", "--ring", "Fp:4", "--group", "cyclic:2"]).status.code(), Some(2));
    assert_eq!(run(&["verify-all", "13"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn bounds_surface_with_the_limit() {
    let o = run(&["unitgroup", "--ring", "Fp:5", "--group", "cyclic:5", "--max-algebra-elements", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds limit 100"), "{}", String::from_utf8_lossy(&o.stderr));
    let o = bin()
        .env("HEREDITARY_MAX_ALGEBRA_ELEMENTS", "100")
        .args(["unitgroup", "--ring", "Fp:5", "--group", "cyclic:5"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin().env("HEREDITARY_SEARCH_BUDGET", "0").args(["catalog"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_unknown_fields() {
    let good = scratch("good.json");
    std::fs::write(&good, r#"{"limits": {"max_algebra_elements": 100}, "format": "json"}"#).unwrap();
    let o = run(&["unitgroup", "--ring", "Fp:2", "--group", "cyclic:4", "--config", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(serde_json::from_slice::<Value>(&o.stdout).is_ok());
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"limits": {"max_algebra_elements": 100}, "colour": "red"}"#).unwrap();
    let o = run(&["catalog", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown field"));
}

#[test]
fn group_files_and_output_path() {
    let path = scratch("d4.json");
    let out = scratch("out.json");
    let o = run(&["groupalgebra", "--ring", "Fp:2", "--group", "quaternion8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let g = hereditary::group::catalog::dihedral(4).unwrap();
    std::fs::write(&path, serde_json::to_string(&GroupJson::from_group(&g)).unwrap()).unwrap();
    let at = format!("@{}", path.display());
    let o = run(&["iso", "--g", &at, "--h", "dihedral:4", "--json", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(run(&["iso", "--g", "@/nonexistent.json", "--h", "cyclic:2"]).status.code(), Some(2));
}

#[test]
fn certificates_and_membership() {
    let o = run(&["certificate", "cyclic", "--p", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C4: a = [1,1] ; 1 [F2[C4]*] + -1 [F2[C2]*]"), "{}", stdout(&o));
    let (code, v) = json(&["membership", "--ring", "Fp:5", "--k", "cyclic:5", "--pool", "ring;group:cyclic:5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "Certified");
    let qs: Vec<&str> = v["certificate"]["terms"].as_array().unwrap().iter().map(|t| t["q"].as_str().unwrap()).collect();
    assert_eq!(qs, ["-1/4", "1/4"]);
    let (code, v) = json(&["membership", "--ring", "Fp:5", "--k", "cyclic:5", "--pool", "ring"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"], "NotInSpan");
}

#[test]
fn hereditary_with_and_without_pool() {
    let o = run(&["hereditary", "--ring", "Fp:2", "--group", "cyclic:4", "--pool", "ring;group:cyclic:2;group:cyclic:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C4 hereditary"));
    let o = run(&["hereditary", "--ring", "Fp:2", "--group", "dihedral:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Bovdi"));
}

#[test]
fn radical_algebra_commands() {
    let o = run(&["baer", "--group", "heisenberg:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension 3 over F3"));
    assert_eq!(run(&["baer", "--group", "cyclic:4"]).status.code(), Some(1));
    let (code, v) = json(&["bovdi-search", "--group", "quaternion8"]);
    assert_eq!(code, 0);
    assert_eq!(v["phase"], "Triangular");
    let o = run(&["bovdi-search", "--group", "quaternion8", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let (code, v) = json(&["qgroup", "--ring", "Fp:2", "--algebra", "aug:cyclic:4"]);
    assert_eq!(code, 0);
    assert_eq!(v["abelian_invariants"], serde_json::json!([4, 2]));
    assert_eq!(run(&["qgroup", "--ring", "Fp:2", "--algebra", "group:cyclic:2"]).status.code(), Some(1));
}

#[test]
fn group_commands() {
    assert!(stdout(&run(&["catalog"])).contains("quaternion8"));
    let (_, v) = json(&["subgroups", "--group", "abelian:2,2"]);
    assert_eq!(v.as_array().unwrap().len(), 5);
    let (_, v) = json(&["invariants", "--group", "dihedral:4"]);
    assert_eq!(v["center_order"], 2);
    let (_, v) = json(&["lovasz", "--g", "cyclic:4", "--h", "abelian:2,2"]);
    assert_eq!(v["verdict"], "Distinguished");
    let (_, v) = json(&["homcount", "--g", "quaternion8", "--h", "dihedral:4"]);
    // 1 trivial + 5 involutions x 3 onto C2 + 2 Klein subgroups x 6 onto V4
    assert_eq!(v["count"], "28");
}

#[test]
fn verify_all_selected_criteria() {
    let o = run(&["verify-all", "1", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.contains(" PASS")).count(), 2, "{s}");
}

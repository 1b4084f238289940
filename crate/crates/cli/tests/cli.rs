use std::path::PathBuf;
use std::process::{Command, Output};

fn posetform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetform")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_str().unwrap().to_string()
}

#[test]
fn analyze_zeta_three_halves() {
    let o = posetform(&["analyze", "zeta(3/2)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = &v["classification"];
    assert_eq!(c["p_value"], "12/5");
    assert_eq!(c["shape"]["kind"], "r_set");
    assert_eq!(c["antimonotonous"], true);
    assert_eq!(v["simplex"]["value"], "5/12");
}

#[test]
fn analyze_crown_has_c_witness() {
    let o = posetform(&["analyze", "crown(2)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["cones"]["c"].is_null());
    assert_eq!(v["classification"]["antimonotonous"], false);
}

#[test]
fn analyze_example_fixture() {
    let o = posetform(&["analyze", &fixture("example4.poset"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["form"]["det_doubled"], "-48");
    assert!(v["cones"]["c"].is_null());
    assert!(!v["cones"]["stationary"].is_null());
    assert_eq!(v["poset"]["labels"][1], "a2");
}

#[test]
fn reports_are_byte_identical() {
    let a = posetform(&["analyze", &fixture("example4.poset"), "--json"]);
    let b = posetform(&["analyze", &fixture("example4.poset"), "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_are_opt_in() {
    let plain = stdout(&posetform(&["analyze", "K", "--json"]));
    let timed = stdout(&posetform(&["analyze", "K", "--json", "--timings"]));
    assert!(!plain.contains("timings"));
    assert!(timed.contains("timings"));
}

#[test]
fn gen_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = posetform(&["gen", "zeta(8/3)", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let path = stdout(&o).trim().to_string();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("n 10"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&posetform(&["classify", &path, "--json"]))).unwrap();
    assert_eq!(v["p_value"], "48/11");
}

#[test]
fn lists_writes_eleven_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = posetform(&["lists", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 11);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let v: serde_json::Value =
            serde_json::from_str(&stdout(&posetform(&["classify", path.to_str().unwrap(), "--json"]))).unwrap();
        let name = path.file_name().unwrap().to_str().unwrap();
        let expected = if name.starts_with("listii") { "wild" } else { "tame" };
        assert_eq!(v["rep_type"], expected, "{name}");
    }
}

#[test]
fn verify_identities_is_clean_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = posetform(&["verify", "identities", "--n", "4", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let jsonl = dir.path().join("identities.jsonl");
    assert_eq!(std::fs::read_to_string(&jsonl).unwrap().lines().count(), 24);

    let o = posetform(&["verify", "identities", "--n", "4", "--out", out, "--resume", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["resumed"], 24);
    assert_eq!(v["checked"], 0);
}

#[test]
fn hypothesis_small() {
    let o = posetform(&["hypothesis", "--n", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn min_and_cone() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&posetform(&["min", "K", "--json"]))).unwrap();
    assert_eq!(v["value"], "5/12");
    let v: serde_json::Value = serde_json::from_str(&stdout(&posetform(&["cone", "crown(2)", "--json"]))).unwrap();
    assert!(!v["c"].is_null());
}

#[test]
fn bad_input_exits_with_parse_code() {
    let o = posetform(&["analyze", "zeta("]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column"), "{err}");
    assert_eq!(posetform(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn simplex_cap_is_enforced() {
    let o = posetform(&["min", &fixture("example4.poset"), "--cap", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

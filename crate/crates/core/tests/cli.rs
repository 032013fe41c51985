use liecomb::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, REPORT_SCHEMA};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("liecomb").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = invoke(&full);
    (code, serde_json::from_str(&out).expect("valid JSON"))
}

#[test]
fn kl_table_of_s4_has_six_entries_one_plus_q() {
    let (code, report) = json(&["kl", "--type", "A", "--rank", "3", "--all"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["schema"], REPORT_SCHEMA);
    assert_eq!(report["command"], "kl");
    assert_eq!(report["status"], "ok");
    let entries = report["result"]["entries"].as_array().unwrap();
    let one_plus_q = entries.iter().filter(|e| e["coeffs"] == serde_json::json!([1, 1])).count();
    assert_eq!(one_plus_q, 6);
    assert_eq!(report["result"]["nontrivial"], 6);
}

#[test]
fn single_kl_polynomial() {
    let (code, out) = invoke(&["kl", "--type", "A3", "--y", "s2", "--w", "s2 s1 s3 s2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("= 1 + q"), "{out}");
}

#[test]
fn fourier_s3_matrix_checks_pass() {
    let (code, report) = json(&["fourier", "--group", "builtin:S3", "--matrix", "--check"]);
    assert_eq!(code, EXIT_OK);
    let matrix = report["result"]["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 8);
    assert!(matrix.iter().all(|row| row.as_array().unwrap().len() == 8));
    assert_eq!(report["result"]["checks"]["unitary"], "pass");
    assert_eq!(report["result"]["checks"]["involutive"], "pass");
    let entry = &matrix[0][0];
    assert!(entry["conductor"].is_u64() && entry["coords"].is_array());
}

#[test]
fn cuspidal_e8_has_thirteen_rows() {
    let (code, out) = invoke(&["cuspidal", "--type", "E8", "--csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("class,root,q_exponent,eigenvalue"));
    assert_eq!(lines.count(), 13);
    let (_, report) = json(&["cuspidal", "--type", "E8"]);
    assert_eq!(report["result"]["count"], 13);
}

#[test]
fn cuspidal_check_prints_one_line_per_check() {
    let (code, out) = invoke(&["cuspidal", "--type", "G2", "--check"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l.starts_with("PASS exponent = min length / 2")));
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn flag_commands() {
    let (code, report) = json(&["dl", "--group", "GL", "--n", "2", "--q", "2", "--m", "2", "--coxeter-check"]);
    assert_eq!(code, EXIT_OK);
    let counts: Vec<u64> = report["result"]["counts"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [3, 2]);
    assert_eq!(report["result"]["coxeter_check"]["equal"], true);

    let (code, out) = invoke(&["dl", "--n", "2", "--q", "3", "--m", "1", "--csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "w,count\n\"[1,2]\",4\n\"[2,1]\",0\n");

    let (_, report) = json(&["drinfeld", "--q", "2", "--m", "2"]);
    assert_eq!(report["result"]["count"], 6);
    assert_eq!(report["result"]["sl2_preserves"], true);

    let (_, report) = json(&["brauer-dim", "--n", "2", "--p", "3", "--mode", "rational"]);
    assert_eq!(report["result"]["dimension"], 3);

    let (code, report) = json(&["brauer-char", "--q", "9", "--matrix", "[[0,2],[1,0]]"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["result"]["splitting_field"], 9);

    let (code, report) = json(&["relpos", "--q", "3", "--flag1", "[[1,0,0],[0,1,0],[0,0,1]]", "--flag2", "[[0,0,1],[0,1,0],[1,0,0]]"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["result"]["w"], serde_json::json!([3, 2, 1]));
}

#[test]
fn group_commands_from_a_permutation_file() {
    let dir = std::env::temp_dir().join(format!("liecomb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.txt");
    std::fs::write(&path, "# S3\n(1,2)\n(1,2,3)\n").unwrap();
    let path = path.to_str().unwrap();
    let (code, report) = json(&["fourier", "--perm-file", path]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["result"]["size"], 8);
    let (code, report) = json(&["triples", "--perm-file", path, "--verify"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["result"]["all_agree"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn weyl_commands() {
    let (code, report) = json(&["cells", "--type", "A", "--rank", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["result"]["sizes"], serde_json::json!([1, 4, 1]));
    let (_, report) = json(&["palindrome", "--type", "G2"]);
    assert_eq!(report["result"]["all_palindromic"], true);
    let (_, report) = json(&["charpoly", "--type", "B3"]);
    let classes = report["result"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 10);
    assert!(classes.iter().all(|c| c["elliptic"] == c["elliptic_by_parabolics"]));
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["kl", "--type", "A"]).0, EXIT_DOMAIN);
    assert_eq!(invoke(&["dl", "--group", "SO", "--n", "2", "--q", "2", "--m", "1"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["drinfeld", "--q", "2", "--m", "2", "--csv"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["brauer-char", "--q", "9", "--matrix", "not json"]).0, EXIT_USAGE);

    let (code, report) = json(&["--max-size", "10", "dl", "--n", "3", "--q", "2", "--m", "1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(report["status"], "error");
    assert_eq!(report["error"]["kind"], "TooLarge");

    let (code, report) = json(&["kl", "--type", "X3", "--all"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(report["error"]["kind"], "UnsupportedSpec");
    assert_eq!(invoke(&["drinfeld", "--q", "6", "--m", "1"]).0, EXIT_DOMAIN);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["--json", "--seed", "7", "drinfeld", "--q", "3", "--m", "4"][..],
        &["--json", "--seed", "7", "brauer-dim", "--n", "2", "--p", "5", "--stability"],
        &["--json", "fourier", "--group", "S4"],
        &["--csv", "dl", "--group", "Sp", "--n", "2", "--q", "2", "--m", "2"],
    ] {
        assert_eq!(invoke(args), invoke(args));
    }
}

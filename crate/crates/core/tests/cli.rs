use std::path::Path;
use std::process::{Command, Output};

fn liouville(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liouville"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const HEADER_LEN: usize = 22;

#[test]
fn sieve_writes_lambda_and_mobius_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lambda.bin");
    let o = liouville(
        &[
            "sieve",
            "--fn",
            "lambda",
            "--lo",
            "1",
            "--hi",
            "10",
            "--out",
            out.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(&bytes[..4], b"LAMB");
    let values: Vec<i8> = bytes[HEADER_LEN..].iter().map(|&b| b as i8).collect();
    assert_eq!(values, [1, -1, -1, 1, -1, 1, -1, -1, 1, 1]);
    let text = stdout(&o);
    assert!(text.contains("count 10"));
    assert!(text.contains("sum 0"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("sha256 ") && l.len() == 7 + 64));

    let out = dir.path().join("mobius.bin");
    let o = liouville(
        &[
            "sieve",
            "--fn",
            "mobius",
            "--lo",
            "1",
            "--hi",
            "6",
            "--out",
            out.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(&out).unwrap();
    let values: Vec<i8> = bytes[HEADER_LEN..].iter().map(|&b| b as i8).collect();
    assert_eq!(values, [1, -1, -1, 0, -1, 1]);
}

#[test]
fn sieve_rejects_zero_lower_bound() {
    let dir = tempfile::tempdir().unwrap();
    let o = liouville(
        &["sieve", "--fn", "lambda", "--lo", "0", "--hi", "10"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let o = liouville(&["verify", "identity", "--n-max", "1000"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS 1000/1000");

    let o = liouville(&["verify", "hyperbola", "--seed", "7"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    let o = liouville(&["verify", "no-such-suite"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sum_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let o = liouville(&["sum", "--fn", "lambda", "--x", "1e6"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "L(1000000) = -530");
    let o = liouville(&["sum", "--fn", "mobius", "--x", "1e6"], dir.path());
    assert_eq!(stdout(&o).trim(), "M(1000000) = 212");
    let o = liouville(&["sum", "--fn", "lambda", "--x", "1e6"], dir.path());
    assert_eq!(stdout(&o).trim(), "L(1000000) = -530");
}

#[test]
fn claim_exit_codes_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("results");
    let res = results.to_str().unwrap();

    let o = liouville(
        &["claim", "zeta", "--s", "2", "--X", "1e5", "--out", res],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("tail_bound"));

    let o = liouville(
        &[
            "claim", "thm2", "--a", "all-ones", "--grid", "1e3:1e5", "--out", res,
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));

    let o = liouville(
        &["claim", "en1", "--grid", "1e3:1e6", "--out", res],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(results.join("en1.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| l.starts_with("en1,")).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with(",conditional-on-m")));
    assert!(results.join("en1_fit.json").exists());
    assert!(results.join("en1.plot").exists());

    let o = liouville(
        &[
            "claim", "thm2", "--grid", "1e3:1e5", "--format", "json", "--out", res,
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(results.join("thm2.json")).unwrap()).unwrap();
    assert!(json.is_object() || json.is_array());
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn crosscode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crosscode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let path_str = path.to_str().unwrap().to_string();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path_str]);
    let o = crosscode(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    path_str
}

#[test]
fn bounds_csv_row() {
    let o = crosscode(&[
        "bounds", "--n", "3", "--t", "3", "--m", "3", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,t,q,lee,cross,lee_linear,cross_linear\n3,3,8,8,26,8,16\n"
    );
}

#[test]
fn bounds_text_table() {
    let o = crosscode(&["bounds", "--n", "2", "--t", "2", "--m", "3,4,5"]);
    let text = stdout(&o);
    for row in [[8, 4, 7, 4, 4], [16, 19, 28, 16, 16], [32, 78, 113, 64, 64]] {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().eq(cells.iter().map(String::as_str))),
            "missing {row:?} in\n{text}"
        );
    }
}

#[test]
fn bounds_json_parses() {
    let o = crosscode(&[
        "bounds", "--n", "2", "--t", "3", "--m", "4", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["cross_bound"], 19);
}

#[test]
fn bounds_usage_errors() {
    assert_eq!(
        crosscode(&["bounds", "--n", "2", "--t", "2", "--m"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crosscode(&["bounds", "--n", "2", "--t", "4", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crosscode(&["bounds", "--t", "2", "--m", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(crosscode(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reference_tables_cover_all_parameter_sets() {
    let o = crosscode(&["bounds", "--paper-tables", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 15);
}

#[test]
fn construct_reports_matrices_and_certificate() {
    let o = crosscode(&["construct", "cor5", "--m", "4", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["H"], serde_json::json!([[2, 2], [0, 4]]));
    assert_eq!(v["cardinality"], 8);
    assert_eq!(v["certified"], true);

    let o = crosscode(&["construct", "thm9", "--m", "5", "--t", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cardinality"], 32);
    assert_eq!(v["certified"], true);
}

#[test]
fn construct_reports_violated_inequality() {
    let o = crosscode(&["construct", "cor5", "--m", "3", "--t", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m >= k+2"));
}

#[test]
fn construct_decode_encode_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let code = construct_to(dir.path(), "cor5.json", &["cor5", "--m", "4", "--t", "3"]);

    let o = crosscode(&["decode", "--code", &code, "--word", "12,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Corrected(c=(12,4), e=(0,2))");

    let o = crosscode(&["encode", "--code", &code, "--message", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let codeword = stdout(&o)
        .trim()
        .trim_matches(|c| c == '(' || c == ')')
        .to_string();
    let o = crosscode(&[
        "decode", "--code", &code, "--word", &codeword, "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "corrected");
    assert_eq!(v["error"], serde_json::json!([0, 0]));

    let o = crosscode(&["decode", "--code", &code, "--word", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "Failure");

    let o = crosscode(&["decode", "--code", &code, "--word", "1,1", "--generic"]);
    assert_eq!(o.status.code(), Some(1));

    let o = crosscode(&["audit", "--code", &code]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("8 codewords x 13 patterns: 104/104 corrected"));

    let o = crosscode(&["certify", "--file", &code]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn decode_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let code = construct_to(dir.path(), "c.json", &["cor5", "--m", "4", "--t", "3"]);
    assert_eq!(
        crosscode(&["decode", "--code", &code, "--word", "16,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crosscode(&["decode", "--code", &code, "--word", "1,2,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crosscode(&["decode", "--code", &code, "--word", "x"])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        crosscode(&[
            "decode",
            "--code",
            missing.to_str().unwrap(),
            "--word",
            "1,1"
        ])
        .status
        .code(),
        Some(2)
    );
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(
        crosscode(&["decode", "--code", bad.to_str().unwrap(), "--word", "1,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn certify_reference_sets() {
    let cross = fixture("example2_cross.json");
    let o = crosscode(&["certify", "--file", cross.to_str().unwrap(), "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");

    // the cross code is not a Lee code
    let o = crosscode(&[
        "certify",
        "--file",
        cross.to_str().unwrap(),
        "--metric",
        "lee",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("false"));

    let lee = fixture("example2_lee.json");
    let o = crosscode(&[
        "certify",
        "--file",
        lee.to_str().unwrap(),
        "--metric",
        "lee",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certified"], true);
    assert_eq!(v["size"], 4);
}

#[test]
fn search_reports_sizes() {
    let o = crosscode(&[
        "search", "--n", "2", "--m", "3", "--t", "2", "--metric", "lee",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");

    let o = crosscode(&[
        "search", "--n", "2", "--m", "3", "--t", "2", "--metric", "cross", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 5);
    assert_eq!(v["witness"].as_array().unwrap().len(), 5);
}

#[test]
fn search_is_deterministic_and_refuses_large_spaces() {
    let args = [
        "search", "--n", "2", "--m", "4", "--t", "3", "--format", "json",
    ];
    assert_eq!(crosscode(&args).stdout, crosscode(&args).stdout);
    let o = crosscode(&["search", "--n", "3", "--m", "8", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limited"));
}

#[test]
fn audit_reports() {
    let o = crosscode(&["audit", "cor12", "--m", "4", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(
        "64 codewords x 19 patterns: 1216/1216 corrected, 0 failures, 0 miscorrections"
    ));

    let o = crosscode(&["audit", "thm9", "--m", "4", "--t", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (v["codewords"].as_u64(), v["patterns"].as_u64()),
        (Some(16), Some(9))
    );
    assert_eq!(v["miscorrections"], 0);

    assert_eq!(
        crosscode(&["audit", "cor12", "--m", "4"]).status.code(),
        Some(2)
    );
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use seg4::dot::spec_from_dot;
use seg4::{parse_spec, LabelingFile};

fn seg4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seg4")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_reports() {
    let out = seg4(&["classify", "RT(0,1,1)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("OddCaterpillar, not SEG (non-existence lemma"));
    let out = seg4(&["classify", "rt( 1, 1 )"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("EvenCaterpillar, constructive"));
    assert_eq!(code(&seg4(&["classify", "RT(3)"])), 1);

    let out = seg4(&["--format", "json", "classify", "RT(2,1,1)"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["family"], "OddLobster");
    assert_eq!(v["status"], "conjectured");
    assert_eq!((v["j"].as_u64(), v["k"].as_u64(), v["l"].as_u64()), (Some(0), Some(1), Some(2)));
}

#[test]
fn label_matches_golden() {
    let out = seg4(&["--format", "json", "label", "RT(0^4,2,6)"]);
    assert_eq!(code(&out), 0);
    let produced = LabelingFile::parse(&stdout(&out)).unwrap();
    let expected = LabelingFile::parse(&fs::read_to_string(golden("ref_0000_2_6.json")).unwrap()).unwrap();
    assert_eq!(produced, expected);
}

#[test]
fn label_exit_codes() {
    assert_eq!(code(&seg4(&["label", "RT(0,1,1,1)"])), 3);
    assert_eq!(code(&seg4(&["label", "RT(2,1,1)"])), 2);
    let out = seg4(&["label", "RT(2,1,1)", "--search-budget", "10^7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("labeled by search"));
    assert_eq!(code(&seg4(&["label", "RT(2,1,1)", "--search-budget", "1"])), 2);
    assert_eq!(code(&seg4(&["label", "RT(2,1,1)", "--search-budget", "x"])), 1);
}

#[test]
fn label_to_file_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.json");
    assert_eq!(code(&seg4(&["label", "RT(0,2,3,3,5)", "--out", path_str(&file)])), 0);
    assert_eq!(code(&seg4(&["verify", path_str(&file)])), 0);
}

#[test]
fn verify_golden_and_corrupted() {
    for entry in fs::read_dir(golden("")).unwrap() {
        let path = entry.unwrap().path();
        assert_eq!(code(&seg4(&["verify", path_str(&path)])), 0, "{}", path.display());
    }
    let dir = tempfile::tempdir().unwrap();
    let mut doc = LabelingFile::parse(&fs::read_to_string(golden("ref_000_2_4.json")).unwrap()).unwrap();
    let v1 = "v1".parse().unwrap();
    let old = doc.edges.get(v1).unwrap();
    doc.edges.insert(v1, old + 1);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, doc.to_json()).unwrap();
    let out = seg4(&["verify", path_str(&bad)]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("edge labels"), "{}", stdout(&out));

    doc.spec = "RT(0^3,2,3)".to_string();
    fs::write(&bad, doc.to_json()).unwrap();
    let out = seg4(&["--format", "json", "verify", path_str(&bad)]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).to_lowercase().contains("domain"), "{}", stdout(&out));

    fs::write(&bad, "{not json").unwrap();
    assert_eq!(code(&seg4(&["verify", path_str(&bad)])), 1);
    assert_eq!(code(&seg4(&["verify", path_str(&dir.path().join("missing.json"))])), 1);
}

#[test]
fn search_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let out = seg4(&["search", "RT(0,1,3)", "--exhaust", "--certificates-dir", path_str(&certs)]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("none, certificate written"), "{}", stdout(&out));
    let files: Vec<_> = fs::read_dir(&certs).unwrap().collect();
    assert_eq!(files.len(), 1);
    let cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap()).unwrap();
    assert_eq!(cert["spec"], "RT(0,1,3)");
    assert_eq!(cert["outcome"], "none");
    assert_eq!(cert["q"], 7);
}

#[test]
fn search_modes_and_guard() {
    let out = seg4(&["--format", "json", "search", "RT(2,2)", "--count"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"], "found");
    let count: u128 = v["count"].as_str().unwrap().parse().unwrap();
    assert!(count > 0 && count.is_multiple_of(2));
    assert_eq!(code(&seg4(&["search", "RT(0^3,10,12)"])), 1);
    assert_eq!(code(&seg4(&["search", "RT(0,1,5)", "--search-budget", "5"])), 2);
    let a = seg4(&["--format", "json", "search", "RT(0,2,3)", "--workers", "3"]);
    let b = seg4(&["--format", "json", "search", "RT(0,2,3)"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn survey_tables() {
    let out = seg4(&["survey", "--max-size", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("RT(1^2)") && text.contains("theory=SEG") && text.ends_with("agree\n"));

    let out = seg4(&["--format", "json", "survey", "--max-size", "9"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows.iter().all(|r| r["agreement"] == true));
    assert!(rows.iter().any(|r| r["informational"] == true));
}

#[test]
fn export_dot() {
    let out = seg4(&["export", path_str(&golden("ref_0000_2_6.json")), "--dot"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.contains("\"v0\" [label=\"0\"];"));
    assert_eq!(spec_from_dot(&dot).unwrap().unwrap(), parse_spec("RT(0^4,2,6)").unwrap());

    let out = seg4(&["export", "RT(0,1,3)", "--dot"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(!dot.contains("label"));
    assert_eq!(spec_from_dot(&dot).unwrap().unwrap(), parse_spec("RT(0,1,3)").unwrap());
    assert_eq!(seg4(&["export", "RT(0,1,3)", "--dot"]).stdout, out.stdout);
}

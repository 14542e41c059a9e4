use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn splitsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitsq"))
        .args(args)
        .env_remove("SPLITSQ_CONFIG")
        .env_remove("SPLITSQ_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_lines(text: &str) -> Vec<serde_json::Value> {
    text.lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_exit_codes() {
    let found = splitsq(&["classify", "49"]);
    assert_eq!(code(&found), 0);
    let w = &json_lines(&stdout(&found))[0];
    assert_eq!(w["left_square"], "4");
    assert_eq!(w["right_square"], "9");

    assert_eq!(code(&splitsq(&["classify", "289"])), 1);

    let bad = splitsq(&["classify", "12x"]);
    assert_eq!(code(&bad), 2);
    assert!(stderr(&bad).contains("12x"));
}

#[test]
fn classify_human_format() {
    let out = splitsq(&["--format", "human", "classify", "49"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("49 = [4][9]"));
}

#[test]
fn family_and_pair_generators() {
    let out = splitsq(&["gen", "thm1", "--alpha", "1", "--beta", "0", "--case", "1"]);
    assert_eq!(code(&out), 0);
    let c = &json_lines(&stdout(&out))[0];
    assert_eq!(c["z"], "41");
    assert_eq!(c["status"], "verified");

    let out = splitsq(&["gen", "thm1", "--alpha", "1", "--beta", "1", "--case", "2"]);
    assert_eq!(code(&out), 1);

    let out = splitsq(&["gen", "thm2", "--alpha", "3"]);
    assert_eq!(code(&out), 0);
    let p = &json_lines(&stdout(&out))[0];
    assert_eq!(p["c"], "3844248004");
    assert_eq!(p["d"], "15376992016");
}

#[test]
fn chains() {
    let out = splitsq(&["gen", "chain", "--r", "2"]);
    assert_eq!(code(&out), 0);
    let c = &json_lines(&stdout(&out))[0];
    assert_eq!(c["members"].as_array().unwrap().len(), 2);

    let short = splitsq(&["gen", "chain", "--r", "4"]);
    assert_eq!(code(&short), 1);
    assert!(stderr(&short).contains("alpha = 256"));
}

#[test]
fn search_output() {
    let out = splitsq(&["search", "--max-z", "50"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("#{\"kind\":\"split-square-search\""));
    let totals: Vec<String> = json_lines(&text)
        .iter()
        .map(|w| w["total"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(totals, ["49", "169", "361", "1225", "1444", "1681"]);

    assert_eq!(code(&splitsq(&["search", "--max-z", "1"])), 2);
}

#[test]
fn search_is_byte_identical_across_runs() {
    let a = splitsq(&["search", "--max-z", "20000"]);
    let b = splitsq(&["search", "--max-z", "20000", "--workers", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("found.jsonl");
    let out = splitsq(&["-o", path_str(&file), "search", "--max-z", "2000"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&splitsq(&["verify", "--file", path_str(&file)])), 0);

    let text = fs::read_to_string(&file).unwrap();
    let corrupted = text.replacen("\"total\":\"1681\"", "\"total\":\"1682\"", 1);
    assert_ne!(text, corrupted);
    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, corrupted).unwrap();
    let out = splitsq(&["verify", "--file", path_str(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("line "));

    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let out = splitsq(&["verify", "--file", path_str(&empty)]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("warning"));

    let junk = dir.path().join("junk.jsonl");
    fs::write(&junk, "{\"total\":\n").unwrap();
    assert_eq!(code(&splitsq(&["verify", "--file", path_str(&junk)])), 2);
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.jsonl");
    let out = splitsq(&["-o", path_str(&target), "search", "--max-z", "50"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn density_counts() {
    let out = splitsq(&["density", "--max-z", "50"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<(String, String)> = json_lines(&stdout(&out))
        .iter()
        .map(|r| {
            (
                r["digits"].as_str().unwrap().to_string(),
                r["count"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        rows,
        [
            ("2".to_string(), "1".to_string()),
            ("3".to_string(), "2".to_string()),
            ("4".to_string(), "3".to_string())
        ]
    );
}

#[test]
fn config_file_and_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("splitsq.conf");
    fs::write(&conf, "format = csv\noutput = result.csv\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_splitsq"))
        .args(["search", "--max-z", "50"])
        .env("SPLITSQ_CONFIG", &conf)
        .env("SPLITSQ_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(dir.path().join("result.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("total,left_square,zeros_between,right_square")
    );
    assert_eq!(lines.next(), Some("49,4,0,9"));
}

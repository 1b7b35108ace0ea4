use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_supportbench");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env("RUST_LOG", "error").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Thirty days of single-exchange dialogs, two per day.
fn write_dump(path: &Path) {
    let mut csv = String::from("tweet_id,author_id,inbound,created_at,text,response_tweet_id,in_response_to_tweet_id\n");
    let topics = [
        ("my battery drains fast", "check battery health in settings"),
        ("icloud will not sync", "sign out and back in"),
        ("screen flickers", "visit a store"),
    ];
    for i in 0..60u64 {
        let day = 1 + i / 2;
        let (q, a) = topics[i as usize % 3];
        let ts = |min: u64| format!("Wed Nov {day:02} 10:{min:02}:00 +0000 2017");
        csv.push_str(&format!("{},c{i},True,{},@AppleSupport {q},,\n", 100 + 2 * i, ts(i % 2 * 10)));
        csv.push_str(&format!(
            "{},AppleSupport,False,{},@c{i} {a},,{}\n",
            101 + 2 * i,
            ts(i % 2 * 10 + 5),
            100 + 2 * i
        ));
    }
    std::fs::write(path, csv).unwrap();
}

fn write_embeddings(path: &Path) {
    let words = ["check", "battery", "health", "in", "settings", "sign", "out", "and", "back", "visit", "a", "store"];
    let mut text = String::new();
    for (i, w) in words.iter().enumerate() {
        text.push_str(&format!("{w} {} {} 0.5\n", i + 1, 3.0 - i as f64));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["evaluate", "--help"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["prepare", "--csv", "x.csv"])), 1);
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path());
    let bad_split = run(&["prepare", "--csv", "x.csv", "--brand", "b", "--train-days", "5", "--test-days", "5", "--out", out]);
    assert_eq!(code(&bad_split), 1);
    let bad_k1 = run(&["respond-ir", "--train", "t", "--test", "t", "--k1", "-1", "--out", out]);
    assert_eq!(code(&bad_k1), 1);
    let bad_mode = run(&["evaluate", "--responses", "r", "--embeddings", "e", "--out", out, "--bleu-mode", "nist"]);
    assert_eq!(code(&bad_mode), 1);
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let out = run(&["prepare", "--csv", p(&missing), "--brand", "AppleSupport", "--out", p(dir.path())]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.csv"));
    let out = run(&["report", "--in", p(&dir.path().join("nope.json"))]);
    assert_eq!(code(&out), 2);
}

#[test]
fn end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let (csv, emb, data) = (root.join("dump.csv"), root.join("emb.txt"), root.join("data"));
    write_dump(&csv);
    write_embeddings(&emb);

    let out = run(&["prepare", "--csv", p(&csv), "--brand", "AppleSupport", "--out", p(&data)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("10 test"));

    let responses = root.join("responses.jsonl");
    let out = run(&[
        "respond-ir",
        "--train",
        p(&data.join("train.jsonl")),
        "--test",
        p(&data.join("test.jsonl")),
        "--out",
        p(&responses),
        "--save-index",
        p(&root.join("index.json")),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let first: serde_json::Value =
        serde_json::from_str(std::fs::read_to_string(&responses).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(first["system"], "ir-bm25");

    let eval = root.join("eval");
    let out = run(&[
        "evaluate",
        "--responses",
        p(&responses),
        "--embeddings",
        p(&emb),
        "--test",
        p(&data.join("test.jsonl")),
        "--out",
        p(&eval),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ir-bm25"));

    let report = eval.join("report.json");
    let csv_out = root.join("table.csv");
    let out = run(&["report", "--in", p(&report), p(&report), "--csv", p(&csv_out)]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Word-overlap measures\n"));
    assert!(text.contains("Semantic measures"));
    // every test question duplicates a training question with the same answer
    assert!(text.contains("100.00"));
    assert_eq!(std::fs::read_to_string(csv_out).unwrap().lines().count(), 3);

    // the same responses twice break coverage
    let doubled = root.join("doubled.jsonl");
    let body = std::fs::read_to_string(&responses).unwrap();
    std::fs::write(&doubled, format!("{body}{body}")).unwrap();
    let out = run(&["evaluate", "--responses", p(&doubled), "--embeddings", p(&emb), "--out", p(&root.join("e2"))]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("testdata")
        .join(name)
}

fn discner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_discner"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn every_subcommand_is_listed() {
    let help = stdout(&discner(&["--help"]));
    for cmd in [
        "validate",
        "encode",
        "decode",
        "stats",
        "filter",
        "silver",
        "train",
        "predict",
        "eval",
        "bench",
        "automaton-export",
    ] {
        assert!(help.contains(cmd), "{cmd} missing from\n{help}");
    }
}

#[test]
fn encode_decode_validate() {
    let corpus = data("golden.filtered.corpus");
    let out = discner(&["encode", path(&corpus)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        fs::read_to_string(data("golden.semantic.tags")).unwrap()
    );

    let out = discner(&["encode", path(&corpus), "--mode", "structural"]);
    assert_eq!(
        stdout(&out),
        fs::read_to_string(data("golden.structural.tags")).unwrap()
    );

    let out = discner(&["decode", path(&data("golden.semantic.tags"))]);
    assert_eq!(
        stdout(&out),
        fs::read_to_string(data("golden.decoded")).unwrap()
    );

    let out = discner(&["validate", path(&data("golden.semantic.tags"))]);
    assert_eq!(out.status.code(), Some(0));
    let out = discner(&[
        "validate",
        path(&data("golden.semantic.tags")),
        "--mode",
        "structural",
    ]);
    assert_eq!(out.status.code(), Some(1), "semantic tags use DB-By");
    let out = discner(&[
        "validate",
        path(&data("golden.structural.tags")),
        "--mode",
        "structural",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_tags = dir.path().join("bad.tags");
    fs::write(&bad_tags, "O CB\nO DI-O\n").unwrap();
    let out = discner(&["validate", path(&bad_tags)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("line 2: ill-formed"));
    assert_eq!(discner(&["decode", path(&bad_tags)]).status.code(), Some(1));

    let unparsable = dir.path().join("x.tags");
    fs::write(&unparsable, "O FOO\n").unwrap();
    assert_eq!(
        discner(&["validate", path(&unparsable)]).status.code(),
        Some(2)
    );
    assert_eq!(
        discner(&["stats", path(&dir.path().join("missing"))])
            .status
            .code(),
        Some(2)
    );

    // incompatible records cannot be encoded
    assert_eq!(
        discner(&["encode", path(&data("golden.corpus"))])
            .status
            .code(),
        Some(1)
    );
    // malformed corpus
    let corpus = dir.path().join("c");
    fs::write(&corpus, "a b\n0-9\n").unwrap();
    let out = discner(&["stats", path(&corpus)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn stats_filter_silver() {
    let out = discner(&["stats", path(&data("golden.corpus"))]);
    assert_eq!(
        stdout(&out),
        "sentences\t10\nmentions\t20\ndiscontinuous\t11\nincompatible\t2\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let filtered = dir.path().join("f");
    let out = discner(&[
        "filter",
        path(&data("golden.corpus")),
        "-o",
        path(&filtered),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = String::from_utf8_lossy(&out.stderr);
    assert!(
        report.contains("three-way-split\t1") && report.contains("partial-overlap\t1"),
        "{report}"
    );
    assert_eq!(
        fs::read(&filtered).unwrap(),
        fs::read(data("golden.filtered.corpus")).unwrap()
    );

    let out = discner(&[
        "silver",
        path(&data("golden.corpus")),
        "--lexicon",
        path(&data("golden.lexicon")),
    ]);
    assert_eq!(
        stdout(&out),
        fs::read_to_string(data("golden.silver.corpus")).unwrap()
    );
}

#[test]
fn train_predict_eval() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model");
    let predicted = dir.path().join("pred");
    let corpus = data("golden.filtered.corpus");
    for loss in ["nll", "partial", "hard-em"] {
        let out = discner(&[
            "train",
            path(&corpus),
            "--model",
            path(&model),
            "--loss",
            loss,
            "--seed",
            "3",
            "--epochs",
            "30",
            "--learning-rate",
            "0.3",
            "--dim",
            "4096",
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let out = discner(&[
            "predict",
            path(&corpus),
            "--model",
            path(&model),
            "-o",
            path(&predicted),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let out = discner(&["eval", path(&corpus), path(&predicted)]);
        assert!(
            stdout(&out).starts_with("overall       P=1.0000 R=1.0000 F1=1.0000"),
            "{loss}: {}",
            stdout(&out)
        );
    }
    let out = discner(&[
        "train",
        path(&corpus),
        "--model",
        path(&model),
        "--loss",
        "partial",
        "--mode",
        "structural",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = discner(&[
        "train",
        path(&corpus),
        "--model",
        path(&model),
        "--epochs",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_length_mismatch_is_a_validation_failure() {
    let out = discner(&[
        "eval",
        path(&data("golden.corpus")),
        path(&data("golden.filtered.corpus")),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn automaton_export() {
    let out = discner(&["automaton-export"]);
    let text = stdout(&out);
    assert!(text.starts_with("initial 0\n"));
    let automaton = discner::Automaton::from_text(&text).unwrap();
    assert_eq!(automaton.num_states(), 13);
    let out = discner(&["automaton-export", "--mode", "structural"]);
    assert_eq!(
        discner::Automaton::from_text(&stdout(&out))
            .unwrap()
            .num_states(),
        9
    );
    let out = discner(&["automaton-export", "--raw"]);
    assert!(stdout(&out).contains("<eps>"));
}

#[test]
fn bench_reports_ratios() {
    let out = discner(&[
        "bench",
        "--sizes",
        "16,32",
        "--sentences",
        "3",
        "--runs",
        "1",
    ]);
    let text = stdout(&out);
    assert!(
        text.contains("n=16") && text.contains("time(n=32)/time(n=16)"),
        "{text}"
    );
}

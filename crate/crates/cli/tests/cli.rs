use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use termgraph::corpus::load_corpus;
use termgraph::scoring::TSV_HEADER;
use termgraph::textnorm::{tag_text, Section};

fn termgraph(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_termgraph"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn termgraph")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = termgraph(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn small_synth(dir: &Path) {
    ok(
        dir,
        &[
            "synth", "--concepts", "5", "--dense", "5", "--background", "40", "--papers", "400", "--seed", "3",
            "--out", "corpus.jsonl", "--truth", "truth.csv", "--planted", "planted.tsv",
        ],
    );
}

/// Ranked TSV whose phrases are `term0..termN`, with a matching census labeling.
fn fixture(dir: &Path, name: &str, labels: &[bool]) {
    let mut tsv = format!("{TSV_HEADER}\n");
    for i in 0..labels.len() {
        tsv += &format!("{}\tterm{i}\tcnlc\t{}\t-\t1\t-\t-\t0\t0\n", i + 1, 1.0 - i as f64 / 100.0);
    }
    fs::write(dir.join(name), tsv).unwrap();
    let mut csv = String::from("phrase,label,annotator\n");
    for (i, l) in labels.iter().enumerate() {
        csv += &format!("term{i},{},\n", u8::from(*l));
    }
    fs::write(dir.join("labels.csv"), csv).unwrap();
}

#[test]
fn usage_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(termgraph(dir.path(), &["score", "--bogus"]).status.code(), Some(2));
    assert_eq!(termgraph(dir.path(), &["candidates"]).status.code(), Some(2));
    small_synth(dir.path());
    let reversed = ["candidates", "--corpus", "corpus.jsonl", "--from-year", "2018", "--to-year", "1999"];
    assert_eq!(termgraph(dir.path(), &reversed).status.code(), Some(2));
    let zero = ["score", "--corpus", "corpus.jsonl", "--sample-size", "0"];
    assert_eq!(termgraph(dir.path(), &zero).status.code(), Some(2));
    let infeasible = ["synth", "--papers", "10", "--out", "x.jsonl"];
    assert_eq!(termgraph(dir.path(), &infeasible).status.code(), Some(2));
}

#[test]
fn missing_labels_exit_with_3_and_are_listed() {
    let dir = tempfile::tempdir().unwrap();
    fixture(dir.path(), "ranked.tsv", &[true, false, true, true, false]);
    let labels = fs::read_to_string(dir.path().join("labels.csv")).unwrap();
    let partial: String = labels.lines().filter(|l| !l.starts_with("term3")).map(|l| format!("{l}\n")).collect();
    fs::write(dir.path().join("labels.csv"), partial).unwrap();
    let out = termgraph(
        dir.path(),
        &["eval", "p-at-k", "--ranked", "ranked.tsv", "--annotations", "labels.csv", "--k", "5", "--sample-size", "5"],
    );
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.lines().any(|l| l == "term3"), "{stderr}");
}

#[test]
fn census_fixture_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    fixture(dir.path(), "ranked.tsv", &[true, false, true, true, false]);
    let json: serde_json::Value = serde_json::from_str(&ok(
        dir.path(),
        &["eval", "p-at-k", "--ranked", "ranked.tsv", "--annotations", "labels.csv", "--k", "5", "--sample-size", "5"],
    ))
    .unwrap();
    assert_eq!(json["rankings"][0]["p_at_k"][0]["estimate"], 0.6);

    ok(
        dir.path(),
        &[
            "eval", "py-curve", "--ranked", "ranked.tsv", "--annotations", "labels.csv", "--top-n", "5",
            "--sample-size", "5", "--curves", "curves", "--out", "py.json",
        ],
    );
    let csv = fs::read_to_string(dir.path().join("curves/ranked.csv")).unwrap();
    assert_eq!(csv, "yield,precision\n1.000000,1.000000\n2.000000,0.666667\n3.000000,0.750000\n");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("py.json")).unwrap()).unwrap();
    assert!((json["curves"][0]["aoc"].as_f64().unwrap() - 7.0 / 12.0).abs() < 1e-12);
}

#[test]
fn two_rankings_report_an_area_reduction() {
    let dir = tempfile::tempdir().unwrap();
    fixture(dir.path(), "worse.tsv", &[false, true, false, true, true, false]);
    // same phrases, positives first
    let mut better = format!("{TSV_HEADER}\n");
    for (r, i) in [1, 3, 4, 0, 2, 5].iter().enumerate() {
        better += &format!("{}\tterm{i}\tforecite\t{}\t-\t1\t-\t-\t0\t0\n", r + 1, 6 - r);
    }
    fs::write(dir.path().join("better.tsv"), better).unwrap();
    let stdout = ok(
        dir.path(),
        &[
            "eval", "py-curve", "--ranked", "better.tsv", "--ranked", "worse.tsv", "--annotations", "labels.csv",
            "--top-n", "6", "--sample-size", "6", "--svg", "plot.svg",
        ],
    );
    assert!(stdout.contains("area over curve: better.tsv is 100.0% lower than worse.tsv"), "{stdout}");
    let svg = fs::read_to_string(dir.path().join("plot.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("better") && svg.contains("worse"));
}

#[test]
fn kappa_compares_two_annotators() {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = String::from("phrase,label,annotator\n");
    for (i, (a, b)) in [(1, 1), (1, 0), (0, 0), (0, 0), (1, 1)].iter().enumerate() {
        csv += &format!("p{i},{a},ann\np{i},{b},bob\n");
    }
    fs::write(dir.path().join("labels.csv"), csv).unwrap();
    let json: serde_json::Value = serde_json::from_str(&ok(
        dir.path(),
        &["eval", "kappa", "--annotations", "labels.csv", "--annotator", "ann", "bob"],
    ))
    .unwrap();
    assert_eq!(json["n"], 5);
    assert_eq!(json["raw"], 0.8);
    // p_e = 0.6*0.4 + 0.4*0.6 = 0.48
    assert!((json["kappa"].as_f64().unwrap() - (0.8 - 0.48) / 0.52).abs() < 1e-12);
}

/// Interchange lines built from the built-in tagger for every paper.
fn write_tagged(dir: &Path) {
    let (corpus, _) = load_corpus(dir.join("corpus.jsonl")).unwrap();
    let section = |paper, s: Section| -> serde_json::Value {
        tag_text(s.text(paper))
            .into_iter()
            .map(|t| serde_json::json!([t.surface, t.lemma, t.pos]))
            .collect()
    };
    let lines: Vec<String> = corpus
        .papers()
        .iter()
        .map(|p| {
            serde_json::json!({
                "id": p.id,
                "title": section(p, Section::Title),
                "abstract": section(p, Section::Abstract),
                "body": section(p, Section::Body),
            })
            .to_string()
        })
        .collect();
    fs::write(dir.join("tagged.jsonl"), lines.join("\n") + "\n").unwrap();
}

#[test]
fn tagged_input_is_accepted_without_warnings() {
    let dir = tempfile::tempdir().unwrap();
    small_synth(dir.path());
    write_tagged(dir.path());
    let check = termgraph(
        dir.path(),
        &["ingest-check", "--corpus", "corpus.jsonl", "--tagged", "tagged.jsonl", "--strict", "--json"],
    );
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stderr));
    let report: serde_json::Value = serde_json::from_slice(&check.stdout).unwrap();
    assert_eq!(report["tagged"]["warnings"].as_array().unwrap().len(), 0);
    assert_eq!(report["tagged"]["accepted"], report["corpus"]["accepted"]);

    let tagged = termgraph(dir.path(), &["candidates", "--corpus", "corpus.jsonl", "--tagged", "tagged.jsonl"]);
    assert!(tagged.status.success());
    assert!(tagged.stderr.is_empty() || !String::from_utf8_lossy(&tagged.stderr).contains("warning"));
    let baseline = ok(dir.path(), &["candidates", "--corpus", "corpus.jsonl"]);
    assert_eq!(String::from_utf8(tagged.stdout).unwrap(), baseline);

    let a = ok(dir.path(), &["score", "--corpus", "corpus.jsonl", "--tagged", "tagged.jsonl"]);
    let b = ok(dir.path(), &["score", "--corpus", "corpus.jsonl"]);
    assert_eq!(a, b);
}

#[test]
fn malformed_tagged_lines_are_warnings() {
    let dir = tempfile::tempdir().unwrap();
    small_synth(dir.path());
    write_tagged(dir.path());
    let mut text = fs::read_to_string(dir.path().join("tagged.jsonl")).unwrap();
    text += "{not json\n";
    fs::write(dir.path().join("tagged.jsonl"), text).unwrap();
    let args = ["ingest-check", "--corpus", "corpus.jsonl", "--tagged", "tagged.jsonl"];
    assert!(termgraph(dir.path(), &args).status.success());
    let strict = termgraph(dir.path(), &[&args[..], &["--strict"]].concat());
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn saved_index_scores_identically() {
    let dir = tempfile::tempdir().unwrap();
    small_synth(dir.path());
    let direct = ok(dir.path(), &["score", "--corpus", "corpus.jsonl", "--save-index", "index.bin"]);
    let loaded = ok(dir.path(), &["score", "--load-index", "index.bin"]);
    assert_eq!(direct, loaded);
    for method in ["cnlc", "loor"] {
        let direct = ok(dir.path(), &["score", "--corpus", "corpus.jsonl", "--method", method]);
        let loaded = ok(dir.path(), &["score", "--load-index", "index.bin", "--method", method]);
        assert_eq!(direct, loaded, "{method}");
    }
}

#[test]
fn scoring_is_deterministic_and_top_n_truncates() {
    let dir = tempfile::tempdir().unwrap();
    small_synth(dir.path());
    let args = ["score", "--corpus", "corpus.jsonl", "--method", "loor", "--top-n", "7"];
    let a = ok(dir.path(), &args);
    assert_eq!(a, ok(dir.path(), &args));
    assert_eq!(a.lines().count(), 8);
}

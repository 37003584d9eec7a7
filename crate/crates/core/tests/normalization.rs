mod common;

use proptest::prelude::*;
use termgraph::corpus::parse_corpus;
use termgraph::textnorm::{
    extract_title_candidates, is_stopword, phrases_in, tag_text, PhraseKey, MAX_PHRASE_TOKENS,
};

fn check_key(key: &PhraseKey) {
    let tokens: Vec<&str> = key.tokens().collect();
    assert!(!tokens.is_empty() && tokens.len() <= MAX_PHRASE_TOKENS, "{key}");
    for t in &tokens {
        assert!(!is_stopword(t) && *t != "using" && !t.is_empty(), "{key}");
        assert!(!t.chars().any(char::is_whitespace), "{key}");
        assert_eq!(t.to_lowercase(), *t, "{key}");
    }
    assert_eq!(&PhraseKey::parse(key.as_str()).unwrap(), key);
}

#[test]
fn stopword_rule_strips_leading_using() {
    let keys = phrases_in(&tag_text("using deep learning"));
    assert!(keys.iter().any(|k| k.as_str() == "deep learning"), "{keys:?}");
    assert!(keys.iter().all(|k| !k.as_str().contains("using")));
}

#[test]
fn fuzzed_titles_yield_valid_keys() {
    let titles = common::fuzz_titles(2024, 1000);
    let mut total = 0;
    for title in &titles {
        for key in phrases_in(&tag_text(title)) {
            check_key(&key);
            total += 1;
        }
    }
    assert!(total > 1000, "only {total} phrases");
}

#[test]
fn corpus_extraction_yields_valid_keys() {
    let lines: Vec<String> = common::fuzz_titles(7, 300)
        .iter()
        .enumerate()
        .map(|(i, t)| serde_json::json!({"id": format!("p{i}"), "title": t, "date": "2010-05-01"}).to_string())
        .collect();
    let (corpus, report) = parse_corpus(&lines.join("\n")).unwrap();
    assert!(report.rejected.is_empty());
    let keys = extract_title_candidates(&corpus, 1999, 2018);
    assert!(!keys.is_empty());
    keys.iter().for_each(check_key);
    assert!(extract_title_candidates(&corpus, 2011, 2018).is_empty());
}

proptest! {
    #[test]
    fn arbitrary_text_never_yields_invalid_keys(text in "\\PC{0,200}") {
        for key in phrases_in(&tag_text(&text)) {
            check_key(&key);
        }
    }
}

//! Text normalization: tokenization, tagging, lemmatization, noun-phrase
//! chunking and phrase keys.
//!
//! Candidate phrases and the token streams they are matched against go
//! through the same lemmatization and stopword removal, so a phrase found in a
//! title is always found again in that paper's stream.

mod chunk;
pub mod interchange;
mod lemma;
mod phrase;
mod tagger;
mod tokenize;

use std::collections::BTreeSet;

use chrono::Datelike;
use rayon::prelude::*;

use crate::corpus::{Corpus, PaperRecord};

pub use chunk::chunk_noun_phrases;
pub use interchange::{InterchangeTagger, TaggedDocument};
pub use lemma::lemmatize;
pub use phrase::{is_stopword, stopword_list, PhraseError, PhraseKey, EXTRA_STOPWORD, MAX_PHRASE_TOKENS};
pub use tagger::{pos_tag, Pos, UnknownPos};
pub use tokenize::tokenize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Title,
    Abstract,
    Body,
}

impl Section {
    pub const ALL: [Section; 3] = [Section::Title, Section::Abstract, Section::Body];

    pub fn text(self, paper: &PaperRecord) -> &str {
        match self {
            Section::Title => &paper.title,
            Section::Abstract => &paper.abstract_text,
            Section::Body => &paper.body,
        }
    }
}

/// Source of tagged tokens for a paper section.
pub trait Annotator: Sync {
    fn annotate(&self, paper: &PaperRecord, section: Section) -> Vec<TaggedToken>;
}

/// The built-in lexicon and suffix-rule pipeline.
#[derive(Debug, Clone, Copy, Default)]
pub struct RuleTagger;

impl Annotator for RuleTagger {
    fn annotate(&self, paper: &PaperRecord, section: Section) -> Vec<TaggedToken> {
        tag_text(section.text(paper))
    }
}

/// Tokenizes, tags and lemmatizes free text.
pub fn tag_text(text: &str) -> Vec<TaggedToken> {
    let tokens = tokenize(text);
    let tags = pos_tag(&tokens);
    tokens
        .into_iter()
        .zip(tags)
        .map(|(surface, pos)| TaggedToken {
            lemma: lemmatize(&surface, pos),
            surface,
            pos,
        })
        .collect()
}

fn is_dropped(token: &TaggedToken) -> bool {
    matches!(token.pos, Pos::Num | Pos::Punct)
        || is_stopword(&token.lemma)
        || is_stopword(&token.surface.to_lowercase())
}

/// Turns a token span into a phrase key: stopwords, "using", numbers and
/// punctuation are dropped. Returns `None` when nothing is left or more than
/// eight tokens remain.
pub fn normalize_phrase(span: &[TaggedToken]) -> Option<PhraseKey> {
    let kept: Vec<&str> = span
        .iter()
        .filter(|t| !is_dropped(t))
        .map(|t| t.lemma.as_str())
        .collect();
    if kept.is_empty() || kept.len() > MAX_PHRASE_TOKENS {
        return None;
    }
    PhraseKey::from_tokens(kept).ok()
}

/// Phrase keys from every noun-phrase span of an already tagged text.
pub fn phrases_in(tokens: &[TaggedToken]) -> Vec<PhraseKey> {
    let tags: Vec<Pos> = tokens.iter().map(|t| t.pos).collect();
    chunk_noun_phrases(&tags)
        .into_iter()
        .filter_map(|r| normalize_phrase(&tokens[r]))
        .collect()
}

/// Candidate phrases from the titles of papers dated within
/// `from_year..=to_year`, using the built-in tagger.
pub fn extract_title_candidates(corpus: &Corpus, from_year: i32, to_year: i32) -> BTreeSet<PhraseKey> {
    extract_title_candidates_with(&RuleTagger, corpus, from_year, to_year)
}

pub fn extract_title_candidates_with<A: Annotator>(
    annotator: &A,
    corpus: &Corpus,
    from_year: i32,
    to_year: i32,
) -> BTreeSet<PhraseKey> {
    corpus
        .papers()
        .par_iter()
        .filter(|p| (from_year..=to_year).contains(&p.date.year()))
        .map(|p| phrases_in(&annotator.annotate(p, Section::Title)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// One position of a normalized paper stream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StreamToken {
    Lemma(String),
    /// Unmatchable separator: section joins and punctuation.
    Boundary,
}

impl StreamToken {
    pub fn lemma(&self) -> Option<&str> {
        match self {
            StreamToken::Lemma(l) => Some(l),
            StreamToken::Boundary => None,
        }
    }
}

/// Lemma stream of title, abstract and body with stopwords, "using" and
/// numbers removed. Non-empty sections are separated by a boundary, and
/// punctuation also becomes a boundary, so phrases never match across either.
/// Consecutive boundaries collapse into one.
pub fn normalized_stream(paper: &PaperRecord) -> Vec<StreamToken> {
    normalized_stream_with(&RuleTagger, paper)
}

pub fn normalized_stream_with<A: Annotator + ?Sized>(annotator: &A, paper: &PaperRecord) -> Vec<StreamToken> {
    let mut stream = Vec::new();
    let push_boundary = |stream: &mut Vec<StreamToken>| {
        if stream.last() != Some(&StreamToken::Boundary) {
            stream.push(StreamToken::Boundary);
        }
    };
    let mut first = true;
    for section in Section::ALL {
        let tokens = annotator.annotate(paper, section);
        if tokens.is_empty() {
            continue;
        }
        if !first {
            push_boundary(&mut stream);
        }
        first = false;
        for t in tokens {
            if t.pos == Pos::Punct {
                push_boundary(&mut stream);
            } else if !is_dropped(&t) {
                stream.push(StreamToken::Lemma(t.lemma));
            }
        }
    }
    stream
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn paper(id: &str, title: &str, abstract_text: &str, year: i32) -> PaperRecord {
        PaperRecord {
            id: id.into(),
            title: title.into(),
            abstract_text: abstract_text.into(),
            body: String::new(),
            date: NaiveDate::from_ymd_opt(year, 1, 1).unwrap(),
            out_citations: vec![],
        }
    }

    fn key(s: &str) -> PhraseKey {
        PhraseKey::parse(s).unwrap()
    }

    fn lemmas(stream: &[StreamToken]) -> Vec<Option<&str>> {
        stream.iter().map(StreamToken::lemma).collect()
    }

    #[test]
    fn normalize_drops_using() {
        assert_eq!(normalize_phrase(&tag_text("using deep learning")), Some(key("deep learning")));
    }

    #[test]
    fn normalize_all_stopwords() {
        assert_eq!(normalize_phrase(&tag_text("the the")), None);
    }

    #[test]
    fn normalize_plural_proper_noun() {
        // Wasserstein: capitalized, sentence-initial, no suffix rule -> NOUN, "wasserstein"
        // GANs: internal capital -> PROPN; "gans" ends in s, not -ss/-us/-is -> "gan"
        assert_eq!(normalize_phrase(&tag_text("Wasserstein GANs")), Some(key("wasserstein gan")));
    }

    #[test]
    fn normalize_drops_numbers_and_caps_length() {
        assert_eq!(normalize_phrase(&tag_text("ResNet 50 architecture")), Some(key("resnet architecture")));
        assert_eq!(normalize_phrase(&tag_text("b c e f g h j k l")), None);
    }

    #[test]
    fn title_candidates_hand_traced() {
        // Attentive/Collaborative: -ive suffix -> ADJ; Filtering: non-initial capital -> PROPN.
        // Spans ending in a nominal: [0..3], [1..3], [2..3].
        let corpus = Corpus::from_records(vec![paper("A", "Attentive Collaborative Filtering", "", 2017)]).unwrap();
        let got: Vec<String> = extract_title_candidates(&corpus, 1999, 2018)
            .into_iter()
            .map(|k| k.to_string())
            .collect();
        assert_eq!(got, vec!["attentive collaborative filtering", "collaborative filtering", "filtering"]);
        assert!(extract_title_candidates(&corpus, 1999, 2016).is_empty());
        assert!(extract_title_candidates(&Corpus::default(), 1999, 2018).is_empty());
    }

    #[test]
    fn stream_examples() {
        let s = normalized_stream(&paper("A", "Deep Learning", "", 2017));
        assert_eq!(lemmas(&s), vec![Some("deep"), Some("learning")]);

        let s = normalized_stream(&paper("A", "A", "B", 2017));
        assert_eq!(lemmas(&s), vec![None, Some("b")]);

        let s = normalized_stream(&paper("A", "graph using kernels", "", 2017));
        assert_eq!(lemmas(&s), vec![Some("graph"), Some("kernel")]);
    }

    #[test]
    fn stream_punctuation_is_a_boundary() {
        let s = normalized_stream(&paper("A", "neural, network.", "", 2017));
        assert_eq!(lemmas(&s), vec![Some("neural"), None, Some("network"), None]);
    }
}

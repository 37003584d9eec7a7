//! Reader for pre-tagged documents produced by an external tagger.
//!
//! Each line is `{"id": str, "title": [[surface, lemma, pos], ...],
//! "abstract": [...], "body": [...]}` with `pos` drawn from [`Pos`].

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use super::{tag_text, Annotator, Pos, Section, TaggedToken};
use crate::corpus::{Corpus, PaperRecord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedDocument {
    pub id: String,
    pub title: Vec<TaggedToken>,
    pub abstract_tokens: Vec<TaggedToken>,
    pub body: Vec<TaggedToken>,
}

impl TaggedDocument {
    pub fn section(&self, section: Section) -> &[TaggedToken] {
        match section {
            Section::Title => &self.title,
            Section::Abstract => &self.abstract_tokens,
            Section::Body => &self.body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TaggedIngestReport {
    pub lines: usize,
    pub accepted: usize,
    pub warnings: Vec<TaggedWarning>,
}

fn parse_section(value: Option<&serde_json::Value>, name: &str) -> Result<Vec<TaggedToken>, String> {
    let items = value
        .ok_or_else(|| format!("missing section {name}"))?
        .as_array()
        .ok_or_else(|| format!("section {name} is not an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let triple = item
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| format!("{name}[{i}] is not a [surface, lemma, pos] triple"))?;
            let field = |k: usize| {
                triple[k]
                    .as_str()
                    .ok_or_else(|| format!("{name}[{i}][{k}] is not a string"))
            };
            let surface = field(0)?;
            let lemma = field(1)?.to_lowercase();
            let pos: Pos = field(2)?.parse().map_err(|e| format!("{name}[{i}]: {e}"))?;
            if surface.is_empty() || lemma.is_empty() {
                return Err(format!("{name}[{i}] has an empty surface or lemma"));
            }
            if lemma.chars().any(char::is_whitespace) {
                return Err(format!("{name}[{i}] lemma {lemma:?} contains whitespace"));
            }
            Ok(TaggedToken {
                surface: surface.to_string(),
                lemma,
                pos,
            })
        })
        .collect()
}

/// Parses one interchange line.
pub fn parse_tagged_document(line: &str) -> Result<TaggedDocument, String> {
    let value: serde_json::Value = serde_json::from_str(line).map_err(|e| format!("malformed JSON: {e}"))?;
    let obj = value.as_object().ok_or("line is not a JSON object")?;
    let id = obj
        .get("id")
        .and_then(|v| v.as_str())
        .filter(|s| !s.is_empty())
        .ok_or("missing field: id")?
        .to_string();
    Ok(TaggedDocument {
        title: parse_section(obj.get("title"), "title")?,
        abstract_tokens: parse_section(obj.get("abstract"), "abstract")?,
        body: parse_section(obj.get("body"), "body")?,
        id,
    })
}

/// Serves pre-tagged sections, falling back to the rule-based tagger for papers
/// that are not in the file.
#[derive(Debug, Clone, Default)]
pub struct InterchangeTagger {
    docs: HashMap<String, TaggedDocument>,
}

impl InterchangeTagger {
    pub fn parse(text: &str) -> (Self, TaggedIngestReport) {
        let mut docs = HashMap::new();
        let mut report = TaggedIngestReport::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            report.lines += 1;
            let line_no = i + 1;
            match parse_tagged_document(line) {
                Ok(doc) => {
                    if docs.contains_key(&doc.id) {
                        report.warnings.push(TaggedWarning {
                            line: line_no,
                            message: format!("duplicate id {:?} ignored", doc.id),
                        });
                    } else {
                        report.accepted += 1;
                        docs.insert(doc.id.clone(), doc);
                    }
                }
                Err(message) => report.warnings.push(TaggedWarning { line: line_no, message }),
            }
        }
        (Self { docs }, report)
    }

    pub fn load(path: impl AsRef<Path>) -> std::io::Result<(Self, TaggedIngestReport)> {
        Ok(Self::parse(&fs::read_to_string(path)?))
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&TaggedDocument> {
        self.docs.get(id)
    }

    /// Corpus papers without a tagged document, and tagged ids not in the
    /// corpus, both sorted.
    pub fn coverage(&self, corpus: &Corpus) -> (Vec<String>, Vec<String>) {
        let missing = corpus
            .date_order()
            .filter(|id| !self.docs.contains_key(*id))
            .map(str::to_string)
            .collect();
        let mut unknown: Vec<String> = self
            .docs
            .keys()
            .filter(|id| corpus.get(id).is_none())
            .cloned()
            .collect();
        unknown.sort();
        (missing, unknown)
    }
}

impl Annotator for InterchangeTagger {
    fn annotate(&self, paper: &PaperRecord, section: Section) -> Vec<TaggedToken> {
        match self.docs.get(&paper.id) {
            Some(doc) => doc.section(section).to_vec(),
            None => tag_text(section.text(paper)),
        }
    }
}

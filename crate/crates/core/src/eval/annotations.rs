use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use super::EvalError;
use crate::textnorm::PhraseKey;

/// Binary concept labels from one annotator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotationSet {
    pub annotator: Option<String>,
    labels: HashMap<String, bool>,
}

impl AnnotationSet {
    pub fn new(annotator: Option<String>) -> Self {
        Self {
            annotator,
            labels: HashMap::new(),
        }
    }

    /// Adds a label; a second label for the same phrase is an error.
    pub fn insert(&mut self, phrase: impl Into<String>, positive: bool) -> Result<(), EvalError> {
        let phrase = phrase.into();
        if self.labels.contains_key(&phrase) {
            return Err(EvalError::DuplicateLabel {
                phrase,
                annotator: self.annotator.clone().unwrap_or_default(),
            });
        }
        self.labels.insert(phrase, positive);
        Ok(())
    }

    pub fn get(&self, phrase: &str) -> Option<bool> {
        self.labels.get(phrase).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels sorted by phrase.
    pub fn sorted(&self) -> Vec<(&str, bool)> {
        let mut v: Vec<(&str, bool)> = self.labels.iter().map(|(p, &l)| (p.as_str(), l)).collect();
        v.sort_unstable();
        v
    }

    /// Labels for `phrases` in order, or the list of unlabeled phrases.
    pub fn labels_for<S: AsRef<str>>(&self, phrases: &[S]) -> Result<Vec<bool>, EvalError> {
        let mut missing = Vec::new();
        let mut out = Vec::with_capacity(phrases.len());
        for p in phrases {
            match self.get(p.as_ref()) {
                Some(l) => out.push(l),
                None => missing.push(p.as_ref().to_string()),
            }
        }
        if missing.is_empty() {
            Ok(out)
        } else {
            Err(EvalError::MissingLabels(missing))
        }
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for AnnotationSet {
    /// Later duplicates overwrite earlier ones; use [`AnnotationSet::insert`]
    /// for checked construction.
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        Self {
            annotator: None,
            labels: iter.into_iter().map(|(p, l)| (p.into(), l)).collect(),
        }
    }
}

pub const ANNOTATION_HEADER: [&str; 3] = ["phrase", "label", "annotator"];

/// Reads an annotation CSV (`phrase,label,annotator`), grouped by annotator.
/// Rows with an empty annotator are keyed by the empty string.
pub fn read_annotations<R: Read>(input: R) -> Result<BTreeMap<String, AnnotationSet>, EvalError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader.headers().map_err(|e| EvalError::annotation(1, e))?.clone();
    if headers.iter().collect::<Vec<_>>() != ANNOTATION_HEADER {
        return Err(EvalError::Annotation {
            line: 1,
            message: format!("expected header {}", ANNOTATION_HEADER.join(",")),
        });
    }
    let mut sets: BTreeMap<String, AnnotationSet> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| EvalError::annotation(line, e))?;
        let phrase = PhraseKey::parse(&record[0]).map_err(|e| EvalError::annotation(line, e))?;
        let positive = match record[1].trim() {
            "1" => true,
            "0" => false,
            other => return Err(EvalError::annotation(line, format!("label must be 0 or 1, got {other:?}"))),
        };
        let annotator = record[2].trim().to_string();
        let set = sets.entry(annotator.clone()).or_insert_with(|| {
            AnnotationSet::new((!annotator.is_empty()).then(|| annotator.clone()))
        });
        set.insert(phrase.as_str(), positive).map_err(|e| EvalError::annotation(line, e))?;
    }
    Ok(sets)
}

/// Writes labels sorted by phrase.
pub fn write_annotations<W: Write>(set: &AnnotationSet, output: W) -> Result<(), EvalError> {
    let mut w = csv::Writer::from_writer(output);
    let annotator = set.annotator.as_deref().unwrap_or("");
    w.write_record(ANNOTATION_HEADER)?;
    for (phrase, positive) in set.sorted() {
        w.write_record([phrase, if positive { "1" } else { "0" }, annotator])?;
    }
    w.flush()?;
    Ok(())
}

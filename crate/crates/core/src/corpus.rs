//! Paper corpus ingestion.
//!
//! A corpus file is UTF-8 JSONL with one paper per line. Loading validates
//! every record, normalizes dates to day resolution and fixes a strict total
//! order over papers by `(date, id)`. Once loaded a [`Corpus`] is immutable.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use chrono::{Datelike, NaiveDate};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense position of a paper in the corpus date order.
///
/// Comparing two `PaperIdx` values is the same as comparing the papers by
/// `(date, id)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PaperIdx(pub u32);

impl PaperIdx {
    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("missing field: {0}")]
    MissingField(&'static str),
    #[error("field {field} has the wrong type")]
    WrongType { field: &'static str },
    #[error("empty id")]
    EmptyId,
    #[error("unparseable date {0:?}")]
    BadDate(String),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {source}")]
    Record { line: usize, source: RecordError },
    #[error("duplicate paper id {id:?} on lines {first} and {second}")]
    DuplicateId {
        id: String,
        first: usize,
        second: usize,
    },
}

/// One paper of the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub id: String,
    pub title: String,
    pub abstract_text: String,
    pub body: String,
    pub date: NaiveDate,
    /// Cited ids, deduplicated, never containing `id` itself. May include ids
    /// absent from the corpus; those are ignored when building the graph.
    pub out_citations: Vec<String>,
}

/// Per-record cleanups performed while parsing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecordWarnings {
    pub self_citations: usize,
    pub duplicate_citations: usize,
}

impl RecordWarnings {
    pub fn total(&self) -> usize {
        self.self_citations + self.duplicate_citations
    }
}

#[derive(Deserialize)]
struct RawRecord {
    id: Option<serde_json::Value>,
    title: Option<serde_json::Value>,
    #[serde(rename = "abstract")]
    abstract_text: Option<serde_json::Value>,
    body: Option<serde_json::Value>,
    date: Option<serde_json::Value>,
    #[serde(rename = "outCitations")]
    out_citations: Option<serde_json::Value>,
}

fn required_str(value: Option<serde_json::Value>, field: &'static str) -> Result<String, RecordError> {
    match value {
        None | Some(serde_json::Value::Null) => Err(RecordError::MissingField(field)),
        Some(serde_json::Value::String(s)) => Ok(s),
        Some(_) => Err(RecordError::WrongType { field }),
    }
}

fn optional_str(value: Option<serde_json::Value>, field: &'static str) -> Result<String, RecordError> {
    match value {
        None | Some(serde_json::Value::Null) => Ok(String::new()),
        Some(serde_json::Value::String(s)) => Ok(s),
        Some(_) => Err(RecordError::WrongType { field }),
    }
}

/// Parses `YYYY-MM-DD` or `YYYY-MM`; month-only dates map to the first day.
pub fn parse_date(text: &str) -> Result<NaiveDate, RecordError> {
    let bad = || RecordError::BadDate(text.to_string());
    let parts: Vec<&str> = text.split('-').collect();
    let num = |s: &str, len: usize| -> Result<u32, RecordError> {
        if s.len() != len || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    let (year, month, day) = match parts.as_slice() {
        [y, m] => (num(y, 4)?, num(m, 2)?, 1),
        [y, m, d] => (num(y, 4)?, num(m, 2)?, num(d, 2)?),
        _ => return Err(bad()),
    };
    NaiveDate::from_ymd_opt(year as i32, month, day).ok_or_else(bad)
}

/// Parses one corpus line into a normalized record.
///
/// Self-citations and repeated citation ids are dropped and counted in the
/// returned warnings.
pub fn parse_paper_record(line: &str) -> Result<(PaperRecord, RecordWarnings), RecordError> {
    let raw: RawRecord =
        serde_json::from_str(line).map_err(|e| RecordError::Json(e.to_string()))?;
    let id = required_str(raw.id, "id")?;
    if id.is_empty() {
        return Err(RecordError::EmptyId);
    }
    let title = required_str(raw.title, "title")?;
    let date = parse_date(&required_str(raw.date, "date")?)?;
    let abstract_text = optional_str(raw.abstract_text, "abstract")?;
    let body = optional_str(raw.body, "body")?;

    let cited: Vec<String> = match raw.out_citations {
        None | Some(serde_json::Value::Null) => Vec::new(),
        Some(serde_json::Value::Array(items)) => items
            .into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s),
                _ => Err(RecordError::WrongType {
                    field: "outCitations",
                }),
            })
            .collect::<Result<_, _>>()?,
        Some(_) => {
            return Err(RecordError::WrongType {
                field: "outCitations",
            })
        }
    };

    let mut warnings = RecordWarnings::default();
    let mut seen = HashSet::with_capacity(cited.len());
    let mut out_citations = Vec::with_capacity(cited.len());
    for c in cited {
        if c == id {
            warnings.self_citations += 1;
        } else if !seen.insert(c.clone()) {
            warnings.duplicate_citations += 1;
        } else {
            out_citations.push(c);
        }
    }

    Ok((
        PaperRecord {
            id,
            title,
            abstract_text,
            body,
            date,
            out_citations,
        },
        warnings,
    ))
}

/// Counts collected while loading a corpus file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub records_read: usize,
    pub accepted: usize,
    pub rejected: Vec<RejectedRecord>,
    pub self_citations_dropped: usize,
    pub duplicate_citations_dropped: usize,
    /// Citation edges pointing to ids that are not in the corpus.
    pub dangling: usize,
}

impl IngestReport {
    pub fn warning_count(&self) -> usize {
        self.rejected.len() + self.self_citations_dropped + self.duplicate_citations_dropped
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectedRecord {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for IngestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records read:          {}", self.records_read)?;
        writeln!(f, "accepted:              {}", self.accepted)?;
        writeln!(f, "rejected:              {}", self.rejected.len())?;
        writeln!(f, "self-citations dropped: {}", self.self_citations_dropped)?;
        writeln!(f, "duplicate citations:   {}", self.duplicate_citations_dropped)?;
        write!(f, "dangling citations:    {}", self.dangling)
    }
}

/// Immutable in-memory corpus.
///
/// Papers are stored in date order (`date` ascending, `id` ascending), so the
/// storage position of a paper doubles as its [`PaperIdx`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    papers: Vec<PaperRecord>,
    by_id: HashMap<String, PaperIdx>,
}

impl Corpus {
    /// Builds a corpus from records, failing on duplicate ids.
    pub fn from_records(records: Vec<PaperRecord>) -> Result<Self, CorpusError> {
        let numbered = records.into_iter().enumerate().map(|(i, r)| (i + 1, r)).collect();
        Self::from_numbered(numbered)
    }

    fn from_numbered(mut records: Vec<(usize, PaperRecord)>) -> Result<Self, CorpusError> {
        let mut first_line: HashMap<&str, usize> = HashMap::with_capacity(records.len());
        for (line, r) in &records {
            if let Some(&first) = first_line.get(r.id.as_str()) {
                return Err(CorpusError::DuplicateId {
                    id: r.id.clone(),
                    first,
                    second: *line,
                });
            }
            first_line.insert(&r.id, *line);
        }
        drop(first_line);

        records.sort_by(|(_, a), (_, b)| (a.date, &a.id).cmp(&(b.date, &b.id)));
        let papers: Vec<PaperRecord> = records.into_iter().map(|(_, r)| r).collect();
        let by_id = papers
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), PaperIdx(i as u32)))
            .collect();
        Ok(Self { papers, by_id })
    }

    pub fn len(&self) -> usize {
        self.papers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&PaperRecord> {
        self.index_of(id).map(|i| &self.papers[i.get()])
    }

    pub fn index_of(&self, id: &str) -> Option<PaperIdx> {
        self.by_id.get(id).copied()
    }

    pub fn paper(&self, idx: PaperIdx) -> &PaperRecord {
        &self.papers[idx.get()]
    }

    /// Papers in `(date, id)` order.
    pub fn papers(&self) -> &[PaperRecord] {
        &self.papers
    }

    /// Paper ids in `(date, id)` order.
    pub fn date_order(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.papers.iter().map(|p| p.id.as_str())
    }

    /// Number of citation edges whose target is not in the corpus.
    pub fn dangling_citations(&self) -> usize {
        self.papers
            .iter()
            .flat_map(|p| p.out_citations.iter())
            .filter(|c| !self.by_id.contains_key(c.as_str()))
            .count()
    }

    /// Writes the corpus as JSONL in date order.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Line<'a> {
            id: &'a str,
            title: &'a str,
            #[serde(rename = "abstract")]
            abstract_text: &'a str,
            body: &'a str,
            date: String,
            #[serde(rename = "outCitations")]
            out_citations: &'a [String],
        }
        for p in &self.papers {
            let line = Line {
                id: &p.id,
                title: &p.title,
                abstract_text: &p.abstract_text,
                body: &p.body,
                date: format!("{:04}-{:02}-{:02}", p.date.year(), p.date.month(), p.date.day()),
                out_citations: &p.out_citations,
            };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Parses corpus text already in memory. Line numbers are 1-based; blank lines
/// are skipped but still counted for numbering.
pub fn parse_corpus(text: &str) -> Result<(Corpus, IngestReport), CorpusError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();

    type Parsed = Result<(PaperRecord, RecordWarnings), RecordError>;
    let parsed: Vec<(usize, Parsed)> = lines
        .par_iter()
        .map(|&(n, l)| (n, parse_paper_record(l)))
        .collect();

    let mut report = IngestReport {
        records_read: parsed.len(),
        ..Default::default()
    };
    let mut records = Vec::with_capacity(parsed.len());
    for (line, result) in parsed {
        match result {
            Ok((record, warnings)) => {
                report.self_citations_dropped += warnings.self_citations;
                report.duplicate_citations_dropped += warnings.duplicate_citations;
                records.push((line, record));
            }
            Err(e) => report.rejected.push(RejectedRecord {
                line,
                reason: e.to_string(),
            }),
        }
    }
    report.accepted = records.len();
    let corpus = Corpus::from_numbered(records)?;
    report.dangling = corpus.dangling_citations();
    Ok((corpus, report))
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<(Corpus, IngestReport), CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_corpus(&text)
}

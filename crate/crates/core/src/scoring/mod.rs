//! Concept scorers and ranking.

mod density;
mod forecite;

use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::index::{Index, IndexError};
use crate::textnorm::PhraseKey;

pub use density::{cnlc_score, loor_score, LOOR_EPSILON};
pub use forecite::{
    forecite_score, future_slice, hash64, sampled_ratio, term_seed, ForeCiteParams, PaperTermScore,
};

#[derive(Debug, Error)]
pub enum ScoringError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("term {0:?} occurs in no paper")]
    EmptyTermGraph(String),
    #[error("term {term:?} occurs in {n_t} paper(s); at least 2 are needed")]
    TooFewPapers { term: String, n_t: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown method {0:?} (expected forecite, cnlc or loor)")]
    UnknownMethod(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Forecite,
    Cnlc,
    Loor,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Forecite, Method::Cnlc, Method::Loor];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Forecite => "forecite",
            Method::Cnlc => "cnlc",
            Method::Loor => "loor",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = ScoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| ScoringError::UnknownMethod(s.to_string()))
    }
}

/// Counts behind a score. Fields a method does not compute are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub n_t: usize,
    pub f_t: Option<usize>,
    pub f_p_t: Option<usize>,
    pub c_t: Option<usize>,
    pub c_out: Option<usize>,
    pub corpus_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredConcept {
    /// 1-based position after ranking, 0 before.
    pub rank: usize,
    pub term: PhraseKey,
    pub method: Method,
    pub score: f64,
    /// Argmax paper; only set by the forecite scorer.
    pub central_paper: Option<String>,
    pub diagnostics: Diagnostics,
}

/// Scores one term with the given method. `Ok(None)` means the term has no
/// defined score (no support, or no paper passing the citation threshold).
pub fn score_term(
    method: Method,
    term: &PhraseKey,
    index: &Index,
    params: &ForeCiteParams,
) -> Result<Option<ScoredConcept>, ScoringError> {
    match method {
        Method::Forecite => forecite_score(index, term, params),
        Method::Cnlc | Method::Loor => {
            let stats = index.term_graph_stats(term)?;
            let scored = if method == Method::Cnlc {
                cnlc_score(&stats)
            } else {
                loor_score(&stats)
            };
            match scored {
                Ok(s) => Ok(Some(s)),
                Err(ScoringError::EmptyTermGraph(_) | ScoringError::TooFewPapers { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        }
    }
}

/// Scores every candidate independently and sorts by score descending, then
/// phrase ascending. Candidates without a score, including ones unknown to
/// the index, are dropped.
pub fn rank_concepts<'a>(
    method: Method,
    candidates: impl IntoIterator<Item = &'a PhraseKey>,
    index: &Index,
    params: &ForeCiteParams,
) -> Result<Vec<ScoredConcept>, ScoringError> {
    params.validate()?;
    let candidates: Vec<&PhraseKey> = candidates.into_iter().collect();
    let scored: Vec<Option<ScoredConcept>> = candidates
        .par_iter()
        .map(|term| match score_term(method, term, index, params) {
            Ok(s) => Ok(s),
            Err(ScoringError::Index(IndexError::UnknownTerm(_))) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;
    let mut ranked: Vec<ScoredConcept> = scored.into_iter().flatten().collect();
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.term.cmp(&b.term)));
    ranked.dedup_by(|a, b| a.term == b.term);
    for (i, s) in ranked.iter_mut().enumerate() {
        s.rank = i + 1;
    }
    Ok(ranked)
}

pub const TSV_HEADER: &str = "rank\tphrase\tmethod\tscore\tcentral_paper\tn_t\tf_t\tf_p_t\tc_t\tc_out";

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// Writes a ranking as TSV with six-decimal scores and `-` for absent fields.
pub fn write_ranked_tsv<W: Write>(ranked: &[ScoredConcept], mut out: W) -> io::Result<()> {
    writeln!(out, "{TSV_HEADER}")?;
    for s in ranked {
        let d = &s.diagnostics;
        writeln!(
            out,
            "{}\t{}\t{}\t{:.6}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.rank,
            s.term,
            s.method,
            s.score,
            opt(&s.central_paper),
            d.n_t,
            opt(&d.f_t),
            opt(&d.f_p_t),
            opt(&d.c_t),
            opt(&d.c_out),
        )?;
    }
    Ok(())
}

/// One row of a ranked TSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedRow {
    pub rank: usize,
    pub phrase: String,
    pub method: String,
    pub score: f64,
    pub central_paper: Option<String>,
}

#[derive(Debug, Error)]
pub enum RankedReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Reads a ranked TSV; ranks must run 1, 2, 3, ... in file order.
pub fn read_ranked_tsv<R: BufRead>(input: R) -> Result<Vec<RankedRow>, RankedReadError> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let err = |message: String| RankedReadError::Format { line: line_no, message };
        if i == 0 {
            if line != TSV_HEADER {
                return Err(err("unexpected header".into()));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 10 {
            return Err(err(format!("expected 10 fields, found {}", fields.len())));
        }
        let rank: usize = fields[0].parse().map_err(|_| err(format!("bad rank {:?}", fields[0])))?;
        if rank != rows.len() + 1 {
            return Err(err(format!("rank {rank} out of sequence")));
        }
        let score: f64 = fields[3].parse().map_err(|_| err(format!("bad score {:?}", fields[3])))?;
        rows.push(RankedRow {
            rank,
            phrase: fields[1].to_string(),
            method: fields[2].to_string(),
            score,
            central_paper: (fields[4] != "-").then(|| fields[4].to_string()),
        });
    }
    Ok(rows)
}

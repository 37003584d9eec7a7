//! Citation graph, phrase postings and term citation graph statistics.
//!
//! The term citation graph of a phrase is the subgraph of the citation graph
//! induced by the papers whose normalized stream contains the phrase.

mod graph;
mod matcher;
pub mod snapshot;

use std::collections::{BTreeSet, HashMap};

use chrono::NaiveDate;
use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::{Corpus, PaperIdx};
use crate::textnorm::{normalized_stream_with, Annotator, PhraseKey, RuleTagger};

pub use graph::CitationGraph;
pub use matcher::PhraseMatcher;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("unknown term {0:?}")]
    UnknownTerm(String),
    #[error("unknown paper {0:?}")]
    UnknownPaper(String),
    #[error("invalid index snapshot: {0}")]
    Snapshot(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub u32);

/// For each phrase, the papers containing it in `(date, id)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermPostings {
    terms: Vec<PhraseKey>,
    lookup: HashMap<PhraseKey, TermId>,
    lists: Vec<Vec<PaperIdx>>,
}

impl TermPostings {
    /// Matches every candidate against every paper with the built-in tagger.
    pub fn build<'a>(corpus: &Corpus, candidates: impl IntoIterator<Item = &'a PhraseKey>) -> Self {
        Self::build_with(&RuleTagger, corpus, candidates)
    }

    pub fn build_with<'a, A: Annotator>(
        annotator: &A,
        corpus: &Corpus,
        candidates: impl IntoIterator<Item = &'a PhraseKey>,
    ) -> Self {
        let terms: Vec<PhraseKey> = candidates
            .into_iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let matcher = PhraseMatcher::new(&terms);
        let per_paper: Vec<Vec<u32>> = corpus
            .papers()
            .par_iter()
            .map(|p| matcher.find_all(&normalized_stream_with(annotator, p)))
            .collect();

        let mut lists = vec![Vec::new(); terms.len()];
        for (i, found) in per_paper.into_iter().enumerate() {
            for t in found {
                lists[t as usize].push(PaperIdx(i as u32));
            }
        }
        Self::from_parts(terms, lists)
    }

    /// Assembles postings from sorted, unique terms and their lists.
    pub(crate) fn from_parts(terms: Vec<PhraseKey>, lists: Vec<Vec<PaperIdx>>) -> Self {
        let lookup = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), TermId(i as u32)))
            .collect();
        Self { terms, lookup, lists }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_id(&self, term: &PhraseKey) -> Option<TermId> {
        self.lookup.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &PhraseKey {
        &self.terms[id.0 as usize]
    }

    pub fn postings(&self, id: TermId) -> &[PaperIdx] {
        &self.lists[id.0 as usize]
    }

    pub fn get(&self, term: &PhraseKey) -> Result<&[PaperIdx], IndexError> {
        self.term_id(term)
            .map(|id| self.postings(id))
            .ok_or_else(|| IndexError::UnknownTerm(term.to_string()))
    }

    /// Terms in canonical order with their posting lists.
    pub fn iter(&self) -> impl Iterator<Item = (TermId, &PhraseKey, &[PaperIdx])> {
        self.terms
            .iter()
            .zip(&self.lists)
            .enumerate()
            .map(|(i, (t, l))| (TermId(i as u32), t, l.as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperMeta {
    pub id: String,
    pub date: NaiveDate,
}

/// Everything scoring needs: paper ids/dates in date order, the citation graph
/// and the phrase postings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Index {
    papers: Vec<PaperMeta>,
    by_id: HashMap<String, PaperIdx>,
    graph: CitationGraph,
    postings: TermPostings,
}

impl Index {
    pub fn build<'a>(corpus: &Corpus, candidates: impl IntoIterator<Item = &'a PhraseKey>) -> Self {
        Self::build_with(&RuleTagger, corpus, candidates)
    }

    pub fn build_with<'a, A: Annotator>(
        annotator: &A,
        corpus: &Corpus,
        candidates: impl IntoIterator<Item = &'a PhraseKey>,
    ) -> Self {
        let papers = corpus
            .papers()
            .iter()
            .map(|p| PaperMeta {
                id: p.id.clone(),
                date: p.date,
            })
            .collect();
        Self::from_parts(
            papers,
            CitationGraph::build(corpus),
            TermPostings::build_with(annotator, corpus, candidates),
        )
    }

    pub(crate) fn from_parts(papers: Vec<PaperMeta>, graph: CitationGraph, postings: TermPostings) -> Self {
        let by_id = papers
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), PaperIdx(i as u32)))
            .collect();
        Self {
            papers,
            by_id,
            graph,
            postings,
        }
    }

    pub fn paper_count(&self) -> usize {
        self.papers.len()
    }

    pub fn paper(&self, idx: PaperIdx) -> &PaperMeta {
        &self.papers[idx.get()]
    }

    pub fn papers(&self) -> &[PaperMeta] {
        &self.papers
    }

    pub fn paper_idx(&self, id: &str) -> Result<PaperIdx, IndexError> {
        self.by_id
            .get(id)
            .copied()
            .ok_or_else(|| IndexError::UnknownPaper(id.to_string()))
    }

    pub fn graph(&self) -> &CitationGraph {
        &self.graph
    }

    pub fn postings(&self) -> &TermPostings {
        &self.postings
    }

    pub fn term_graph_stats(&self, term: &PhraseKey) -> Result<TermGraphStats, IndexError> {
        term_graph_stats(term, &self.postings, &self.graph)
    }
}

/// Size and edge counts of one term citation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermGraphStats {
    pub term: PhraseKey,
    /// Papers in the term graph.
    pub n_t: usize,
    /// Directed citation edges with both ends in the term graph.
    pub c_t: usize,
    /// Directed edges from term-graph papers to the rest of the corpus.
    pub c_out: usize,
    /// Corpus size.
    pub corpus_size: usize,
    /// Directed edges in the whole citation graph.
    pub edge_count: usize,
}

pub fn term_graph_stats(
    term: &PhraseKey,
    postings: &TermPostings,
    graph: &CitationGraph,
) -> Result<TermGraphStats, IndexError> {
    let members = postings.get(term)?;
    let (mut c_t, mut c_out) = (0, 0);
    for &p in members {
        for to in graph.cites(p) {
            if members.binary_search(to).is_ok() {
                c_t += 1;
            } else {
                c_out += 1;
            }
        }
    }
    Ok(TermGraphStats {
        term: term.clone(),
        n_t: members.len(),
        c_t,
        c_out,
        corpus_size: graph.paper_count(),
        edge_count: graph.edge_count(),
    })
}

//! Central-paper concept score.
//!
//! For a paper `p` in the term graph of `t`, let `f_t` be the number of term
//! papers after `p` in date order and `f_p_t` the number of those that cite
//! `p`. The paper scores `ln(f_p_t + 1) * f_p_t / f_t`, and the term scores the
//! maximum over its papers. Papers with fewer than `min_citations` citing
//! future term papers are not scored. When `f_t` exceeds `sample_size`, the
//! ratio is estimated from a uniform sample of the future term papers; the log
//! factor always uses the exact count.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Diagnostics, Method, ScoredConcept, ScoringError};
use crate::corpus::PaperIdx;
use crate::index::{CitationGraph, Index};
use crate::textnorm::PhraseKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForeCiteParams {
    pub min_citations: usize,
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for ForeCiteParams {
    fn default() -> Self {
        Self {
            min_citations: 3,
            sample_size: 500,
            seed: 13,
        }
    }
}

impl ForeCiteParams {
    pub fn validate(&self) -> Result<(), ScoringError> {
        if self.sample_size == 0 {
            return Err(ScoringError::InvalidParams("sample_size must be at least 1".into()));
        }
        Ok(())
    }
}

/// FNV-1a, used to derive per-term sampling seeds identically on every platform.
pub fn hash64(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn term_seed(seed: u64, term: &PhraseKey) -> u64 {
    seed ^ hash64(term.as_str())
}

/// Entries of a posting list strictly after `p` in `(date, id)` order.
pub fn future_slice(postings: &[PaperIdx], p: PaperIdx) -> &[PaperIdx] {
    &postings[postings.partition_point(|&q| q <= p)..]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperTermScore {
    pub score: f64,
    pub f_p_t: usize,
    pub f_t: usize,
    /// Ratio actually used; equals `f_p_t / f_t` unless sampled.
    pub ratio: f64,
    pub sampled: bool,
}

fn count_citing(graph: &CitationGraph, p: PaperIdx, future: &[PaperIdx]) -> usize {
    let citers = graph.cited_by(p);
    if citers.len() <= future.len() {
        citers.iter().filter(|q| future.binary_search(q).is_ok()).count()
    } else {
        future.iter().filter(|q| citers.binary_search(q).is_ok()).count()
    }
}

/// Sampled fraction of `future` papers that cite `p`.
pub fn sampled_ratio(graph: &CitationGraph, p: PaperIdx, future: &[PaperIdx], sample_size: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let citers = graph.cited_by(p);
    let hits = index::sample(&mut rng, future.len(), sample_size)
        .into_iter()
        .filter(|&i| citers.binary_search(&future[i]).is_ok())
        .count();
    hits as f64 / sample_size as f64
}

pub(crate) fn score_paper(
    graph: &CitationGraph,
    p: PaperIdx,
    postings: &[PaperIdx],
    params: &ForeCiteParams,
    seed: u64,
) -> Option<PaperTermScore> {
    let future = future_slice(postings, p);
    let f_t = future.len();
    if f_t == 0 || graph.cited_by(p).len() < params.min_citations {
        return None;
    }
    let f_p_t = count_citing(graph, p, future);
    if f_p_t < params.min_citations {
        return None;
    }
    let (ratio, sampled) = if f_t <= params.sample_size {
        (f_p_t as f64 / f_t as f64, false)
    } else {
        (sampled_ratio(graph, p, future, params.sample_size, seed), true)
    };
    Some(PaperTermScore {
        score: ((f_p_t + 1) as f64).ln() * ratio,
        f_p_t,
        f_t,
        ratio,
        sampled,
    })
}

impl Index {
    /// Future term papers of `p` for `term`.
    pub fn future_term_papers(&self, p: &str, term: &PhraseKey) -> Result<&[PaperIdx], ScoringError> {
        let p = self.paper_idx(p)?;
        Ok(future_slice(self.postings().get(term)?, p))
    }

    pub fn paper_term_score(
        &self,
        p: &str,
        term: &PhraseKey,
        params: &ForeCiteParams,
    ) -> Result<Option<PaperTermScore>, ScoringError> {
        params.validate()?;
        let p = self.paper_idx(p)?;
        let postings = self.postings().get(term)?;
        Ok(score_paper(self.graph(), p, postings, params, term_seed(params.seed, term)))
    }
}

/// Best paper score over the term graph. Ties go to the earlier paper.
pub fn forecite_score(
    index: &Index,
    term: &PhraseKey,
    params: &ForeCiteParams,
) -> Result<Option<ScoredConcept>, ScoringError> {
    params.validate()?;
    let postings = index.postings().get(term)?;
    let seed = term_seed(params.seed, term);
    let mut best: Option<(PaperIdx, PaperTermScore)> = None;
    for &p in postings {
        if let Some(s) = score_paper(index.graph(), p, postings, params, seed) {
            if best.is_none_or(|(_, b)| s.score > b.score) {
                best = Some((p, s));
            }
        }
    }
    Ok(best.map(|(p, s)| ScoredConcept {
        rank: 0,
        term: term.clone(),
        method: Method::Forecite,
        score: s.score,
        central_paper: Some(index.paper(p).id.clone()),
        diagnostics: Diagnostics {
            n_t: postings.len(),
            f_t: Some(s.f_t),
            f_p_t: Some(s.f_p_t),
            c_t: None,
            c_out: None,
            corpus_size: index.paper_count(),
        },
    }))
}

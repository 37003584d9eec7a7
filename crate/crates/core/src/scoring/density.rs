//! Density-based baselines: CNLC and a log-odds (LoOR) score.

use super::{Diagnostics, Method, ScoredConcept, ScoringError};
use crate::index::TermGraphStats;

/// Probability floor used by [`loor_score`].
pub const LOOR_EPSILON: f64 = 1e-12;

fn graph_diagnostics(stats: &TermGraphStats) -> Diagnostics {
    Diagnostics {
        n_t: stats.n_t,
        f_t: None,
        f_p_t: None,
        c_t: Some(stats.c_t),
        c_out: Some(stats.c_out),
        corpus_size: stats.corpus_size,
    }
}

/// Internal edges per term paper minus outgoing edges per corpus paper.
pub fn cnlc_score(stats: &TermGraphStats) -> Result<ScoredConcept, ScoringError> {
    if stats.n_t == 0 {
        return Err(ScoringError::EmptyTermGraph(stats.term.to_string()));
    }
    let score = stats.c_t as f64 / stats.n_t as f64 - stats.c_out as f64 / stats.corpus_size as f64;
    Ok(ScoredConcept {
        rank: 0,
        term: stats.term.clone(),
        method: Method::Cnlc,
        score,
        central_paper: None,
        diagnostics: graph_diagnostics(stats),
    })
}

fn xlogy_ratio(x: f64, num: f64, den: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (num / den).ln()
    }
}

/// Log-likelihood ratio of the internal edge count under a term-specific
/// linking rate versus the corpus-wide rate.
///
/// The term graph offers `M = n_t (n_t - 1) / 2` unordered pairs and `c_t` of
/// them are observed as links (capped at `M`). With `p1 = c_t / M` and
/// `p0 = 2 E / (N (N - 1))`, both clamped to `[ε, 1 - ε]`, the score is
/// `c_t ln(p1/p0) + (M - c_t) ln((1-p1)/(1-p0))`.
pub fn loor_score(stats: &TermGraphStats) -> Result<ScoredConcept, ScoringError> {
    if stats.n_t < 2 {
        return Err(ScoringError::TooFewPapers {
            term: stats.term.to_string(),
            n_t: stats.n_t,
        });
    }
    let n_t = stats.n_t as f64;
    let n = stats.corpus_size as f64;
    let pairs = n_t * (n_t - 1.0) / 2.0;
    let links = (stats.c_t as f64).min(pairs);
    let clamp = |p: f64| p.clamp(LOOR_EPSILON, 1.0 - LOOR_EPSILON);
    let p1 = clamp(links / pairs);
    let p0 = clamp(2.0 * stats.edge_count as f64 / (n * (n - 1.0)));
    let score = xlogy_ratio(links, p1, p0) + xlogy_ratio(pairs - links, 1.0 - p1, 1.0 - p0);
    Ok(ScoredConcept {
        rank: 0,
        term: stats.term.clone(),
        method: Method::Loor,
        score,
        central_paper: None,
        diagnostics: graph_diagnostics(stats),
    })
}

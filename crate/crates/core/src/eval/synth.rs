//! Synthetic corpora with planted concept, dense-community and background
//! phrases, for end-to-end testing of extraction and ranking.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use chrono::{Duration, NaiveDate};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AnnotationSet, EvalError};
use crate::corpus::{Corpus, PaperRecord};
use crate::textnorm::{is_stopword, phrases_in, tag_text};

/// Generator parameters. Every phrase is a single invented word.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// Phrases with one early central paper cited by most later mentions.
    pub concepts: usize,
    /// Phrases whose papers cite each other with no dominant node.
    pub dense: usize,
    /// Phrases mentioned on random papers with no planted citations.
    pub background: usize,
    pub papers: usize,
    pub from_year: i32,
    pub to_year: i32,
    pub seed: u64,
    /// Later papers mentioning a concept.
    pub followers: RangeInclusive<usize>,
    /// Minimum share of followers citing the central paper.
    pub min_cite_fraction: f64,
    /// Papers in one dense community.
    pub dense_size: RangeInclusive<usize>,
    /// Earlier members each dense member cites.
    pub dense_out_degree: RangeInclusive<usize>,
    /// Upper bound on any member's share of a community's citations.
    pub max_in_degree_share: f64,
    /// Base number of papers mentioning a background phrase.
    pub background_mentions: RangeInclusive<usize>,
    /// Random citations per paper, never between papers sharing a phrase.
    pub noise_citations: RangeInclusive<usize>,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            concepts: 20,
            dense: 20,
            background: 200,
            papers: 2000,
            from_year: 1999,
            to_year: 2018,
            seed: 13,
            followers: 15..=30,
            min_cite_fraction: 0.9,
            dense_size: 20..=30,
            dense_out_degree: 2..=3,
            max_in_degree_share: 0.3,
            background_mentions: 3..=15,
            noise_citations: 0..=3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedConcept {
    pub phrase: String,
    pub central: String,
    /// Later mentioning papers, in date order.
    pub followers: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub corpus: Corpus,
    /// Concepts positive, everything else negative; annotator `synth`.
    pub truth: AnnotationSet,
    pub concepts: Vec<PlantedConcept>,
    pub dense: Vec<String>,
    pub background: Vec<String>,
}

pub const TRUTH_ANNOTATOR: &str = "synth";

const CONSONANTS: &[u8] = b"bdfgklmnprtvz";
/// Words end in one of these, which keeps them clear of every suffix rule.
const VOWELS: &[u8] = b"aiou";
const CONNECTORS: &[&str] = &["and", "for", "of", "with", "in", "on"];
const ROLLBACK_LIMIT: usize = 1000;

fn infeasible(msg: impl Into<String>) -> EvalError {
    EvalError::Infeasible(msg.into())
}

fn check(spec: &SynthSpec) -> Result<(), EvalError> {
    let empty = |r: &RangeInclusive<usize>| r.start() > r.end();
    if spec.papers == 0 {
        return Err(infeasible("at least one paper is required"));
    }
    if spec.concepts + spec.dense + spec.background == 0 {
        return Err(infeasible("at least one phrase is required"));
    }
    if spec.from_year > spec.to_year {
        return Err(infeasible("from_year is after to_year"));
    }
    if NaiveDate::from_ymd_opt(spec.from_year, 1, 1).is_none() || NaiveDate::from_ymd_opt(spec.to_year, 12, 31).is_none() {
        return Err(infeasible("year range out of bounds"));
    }
    if !(0.0..=1.0).contains(&spec.min_cite_fraction) || !(0.0..=1.0).contains(&spec.max_in_degree_share) {
        return Err(infeasible("fractions must lie in [0, 1]"));
    }
    for (name, r) in [
        ("followers", &spec.followers),
        ("dense_size", &spec.dense_size),
        ("dense_out_degree", &spec.dense_out_degree),
        ("background_mentions", &spec.background_mentions),
        ("noise_citations", &spec.noise_citations),
    ] {
        if empty(r) {
            return Err(infeasible(format!("{name} range is empty")));
        }
    }
    let half = spec.papers / 2;
    if spec.concepts > 0 {
        if *spec.followers.start() == 0 {
            return Err(infeasible("concepts need at least one follower"));
        }
        if spec.concepts > half {
            return Err(infeasible(format!(
                "{} central papers do not fit in the first half of {} papers",
                spec.concepts, spec.papers
            )));
        }
        if spec.papers - half < *spec.followers.end() {
            return Err(infeasible(format!(
                "{} followers need more than {} later papers",
                spec.followers.end(),
                spec.papers - half
            )));
        }
    }
    if spec.dense > 0 {
        if *spec.dense_size.start() < 2 || *spec.dense_out_degree.start() == 0 {
            return Err(infeasible("dense communities need two members and one citation each"));
        }
        if *spec.dense_size.end() > spec.papers {
            return Err(infeasible(format!(
                "a dense community of {} exceeds {} papers",
                spec.dense_size.end(),
                spec.papers
            )));
        }
    }
    if spec.background > 0 && (*spec.background_mentions.start() == 0 || *spec.background_mentions.end() > spec.papers) {
        return Err(infeasible("background mentions must lie in 1..=papers"));
    }
    Ok(())
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    chars
        .next()
        .map(|c| c.to_uppercase().chain(chars).collect())
        .unwrap_or_default()
}

/// True when the word survives tagging, lemmatization and normalization
/// unchanged in every position a title or abstract puts it.
fn usable_word(word: &str) -> bool {
    if is_stopword(word) {
        return false;
    }
    let cap = capitalize(word);
    [format!("{cap} of {cap}"), format!("About {word} and {word}.")]
        .iter()
        .all(|text| {
            let found = phrases_in(&tag_text(text));
            found.len() == 2 && found.iter().all(|k| k.as_str() == word)
        })
}

fn invent_words(rng: &mut ChaCha8Rng, count: usize) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut words = Vec::with_capacity(count);
    while words.len() < count {
        let syllables = if count > 20_000 { 4 } else { 3 };
        let word: String = (0..syllables)
            .flat_map(|_| {
                [
                    CONSONANTS[rng.gen_range(0..CONSONANTS.len())] as char,
                    VOWELS[rng.gen_range(0..VOWELS.len())] as char,
                ]
            })
            .collect();
        if seen.insert(word.clone()) && usable_word(&word) {
            words.push(word);
        }
    }
    words
}

fn sorted_dates(rng: &mut ChaCha8Rng, spec: &SynthSpec) -> Vec<NaiveDate> {
    let start = NaiveDate::from_ymd_opt(spec.from_year, 1, 1).expect("checked");
    let end = NaiveDate::from_ymd_opt(spec.to_year, 12, 31).expect("checked");
    let span = (end - start).num_days();
    let mut dates: Vec<NaiveDate> = (0..spec.papers)
        .map(|_| start + Duration::days(rng.gen_range(0..=span)))
        .collect();
    dates.sort_unstable();
    dates
}

/// Citation lists for one dense community, as `(citing, cited)` member
/// positions. Redrawn until no member holds more than the allowed share of
/// in-links.
fn dense_edges(rng: &mut ChaCha8Rng, spec: &SynthSpec, m: usize) -> Result<Vec<(usize, usize)>, EvalError> {
    for _ in 0..ROLLBACK_LIMIT {
        let mut edges = Vec::new();
        let mut indegree = vec![0usize; m];
        for j in 1..m {
            let r = rng.gen_range(spec.dense_out_degree.clone()).min(j);
            for t in index::sample(rng, j, r) {
                edges.push((j, t));
                indegree[t] += 1;
            }
        }
        let max = indegree.iter().copied().max().unwrap_or(0);
        if (max as f64) <= spec.max_in_degree_share * edges.len() as f64 {
            return Ok(edges);
        }
    }
    Err(infeasible(format!(
        "no community of {m} keeps in-degree share at or below {}",
        spec.max_in_degree_share
    )))
}

fn shares_phrase(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

/// Builds a corpus by planting each phrase role, then fills titles and
/// abstracts from the assigned phrases.
///
/// Concepts get a central paper in the first half of the timeline and
/// `followers` later mentions, at least `min_cite_fraction` of which cite it.
/// Dense members each cite `dense_out_degree` earlier members. Background
/// phrases go to papers still lacking a phrase first; any papers left
/// uncovered afterwards are spread over the background phrases, so those may
/// exceed their base mention count. Titles join a paper's phrases with
/// stopwords, so title extraction recovers exactly the planted phrases.
pub fn generate_synthetic_corpus(spec: &SynthSpec) -> Result<SyntheticCorpus, EvalError> {
    check(spec)?;
    let n = spec.papers;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let words = invent_words(&mut rng, spec.concepts + spec.dense + spec.background);
    let (concept_words, rest) = words.split_at(spec.concepts);
    let (dense_words, background_words) = rest.split_at(spec.dense);

    let dates = sorted_dates(&mut rng, spec);
    let mut phrases: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cites: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];

    let mut planted = Vec::with_capacity(spec.concepts);
    let mut centrals = index::sample(&mut rng, n / 2, spec.concepts).into_vec();
    centrals.sort_unstable();
    for (w, &central) in centrals.iter().enumerate() {
        let k = rng.gen_range(spec.followers.clone());
        let later = n - central - 1;
        let mut followers: Vec<usize> = index::sample(&mut rng, later, k).into_iter().map(|i| central + 1 + i).collect();
        followers.sort_unstable();
        let citing = (spec.min_cite_fraction * k as f64).ceil() as usize;
        let skip = rng.gen_range(0..=k - citing);
        let skipped: BTreeSet<usize> = index::sample(&mut rng, k, skip).into_iter().collect();
        phrases[central].push(w);
        for (i, &f) in followers.iter().enumerate() {
            phrases[f].push(w);
            if !skipped.contains(&i) {
                cites[f].insert(central);
            }
        }
        planted.push((central, followers));
    }

    for d in 0..spec.dense {
        let w = spec.concepts + d;
        let m = rng.gen_range(spec.dense_size.clone());
        let mut members = index::sample(&mut rng, n, m).into_vec();
        members.sort_unstable();
        for &p in &members {
            phrases[p].push(w);
        }
        for (from, to) in dense_edges(&mut rng, spec, m)? {
            cites[members[from]].insert(members[to]);
        }
    }

    let mut uncovered: Vec<usize> = (0..n).filter(|&p| phrases[p].is_empty()).collect();
    uncovered.shuffle(&mut rng);
    for b in 0..spec.background {
        let w = spec.concepts + spec.dense + b;
        let count = rng.gen_range(spec.background_mentions.clone());
        let mut chosen = BTreeSet::new();
        while chosen.len() < count {
            let p = uncovered.pop().unwrap_or_else(|| rng.gen_range(0..n));
            chosen.insert(p);
        }
        for p in chosen {
            phrases[p].push(w);
        }
    }
    if !uncovered.is_empty() {
        if spec.background == 0 {
            return Err(infeasible(format!(
                "{} papers carry no phrase and there are no background phrases to give them",
                uncovered.len()
            )));
        }
        uncovered.sort_unstable();
        for (i, p) in uncovered.into_iter().enumerate() {
            phrases[p].push(spec.concepts + spec.dense + i % spec.background);
        }
    }

    for p in 1..n {
        let count = rng.gen_range(spec.noise_citations.clone());
        for _ in 0..count {
            let t = rng.gen_range(0..p);
            if !shares_phrase(&phrases[p], &phrases[t]) {
                cites[p].insert(t);
            }
        }
    }

    let width = n.to_string().len();
    let ids: Vec<String> = (0..n).map(|i| format!("synth-{:0width$}", i + 1)).collect();
    let records = (0..n)
        .map(|p| {
            let mut mine: Vec<&str> = phrases[p].iter().map(|&w| words[w].as_str()).collect();
            mine.shuffle(&mut rng);
            let mut title = capitalize(mine[0]);
            for w in &mine[1..] {
                title.push(' ');
                title.push_str(CONNECTORS.choose(&mut rng).expect("non-empty"));
                title.push(' ');
                title.push_str(&capitalize(w));
            }
            PaperRecord {
                id: ids[p].clone(),
                title,
                abstract_text: format!("About {}.", mine.join(" and ")),
                body: String::new(),
                date: dates[p],
                out_citations: cites[p].iter().map(|&t| ids[t].clone()).collect(),
            }
        })
        .collect();
    let corpus = Corpus::from_records(records).map_err(|e| infeasible(e.to_string()))?;

    let mut truth = AnnotationSet::new(Some(TRUTH_ANNOTATOR.to_string()));
    for w in concept_words {
        truth.insert(w.as_str(), true)?;
    }
    for w in dense_words.iter().chain(background_words) {
        truth.insert(w.as_str(), false)?;
    }
    let concepts = planted
        .into_iter()
        .zip(concept_words)
        .map(|((central, followers), phrase)| PlantedConcept {
            phrase: phrase.clone(),
            central: ids[central].clone(),
            followers: followers.into_iter().map(|f| ids[f].clone()).collect(),
        })
        .collect();

    Ok(SyntheticCorpus {
        corpus,
        truth,
        concepts,
        dense: dense_words.to_vec(),
        background: background_words.to_vec(),
    })
}

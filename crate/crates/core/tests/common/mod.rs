//! Independent reference implementations and generators shared by the
//! integration tests. Nothing here calls the library's scoring, indexing or
//! matching code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use termgraph::corpus::PaperRecord;

/// Lowercase pseudo-words the rule tagger reads as plain nouns.
pub const VOCAB: &[&str] = &[
    "bako", "dilu", "fema", "gopi", "kuna", "lomi", "navo", "pira", "ruto", "sika", "tavu", "vizo",
];

/// A small corpus whose term membership is known by construction.
pub struct RandomCorpus {
    pub records: Vec<PaperRecord>,
    pub candidates: Vec<String>,
    /// Per paper (same order as `records`): candidate indices it mentions.
    pub members: Vec<BTreeSet<usize>>,
}

/// A section is a list of comma-separated segments, each a list of words.
type Section = Vec<Vec<&'static str>>;

fn random_section(rng: &mut ChaCha8Rng, max_segments: usize) -> Section {
    let segments = rng.gen_range(0..=max_segments);
    (0..segments)
        .map(|_| {
            let len = rng.gen_range(1..=5);
            (0..len).map(|_| *VOCAB.choose(rng).unwrap()).collect()
        })
        .collect()
}

fn render(rng: &mut ChaCha8Rng, section: &Section) -> String {
    section
        .iter()
        .map(|seg| {
            let mut out = seg[0].to_string();
            for w in &seg[1..] {
                out.push_str(if rng.gen_bool(0.3) { " of " } else { " " });
                out.push_str(w);
            }
            out
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn contains_run(segment: &[&str], phrase: &[&str]) -> bool {
    segment.windows(phrase.len()).any(|w| w == phrase)
}

pub fn random_corpus(seed: u64, max_papers: usize, max_phrases: usize) -> RandomCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_papers);
    let n_phrases = rng.gen_range(1..=max_phrases);
    let mut phrase_set = BTreeSet::new();
    while phrase_set.len() < n_phrases {
        let len = rng.gen_range(1..=3);
        let words: Vec<&str> = (0..len).map(|_| *VOCAB.choose(&mut rng).unwrap()).collect();
        phrase_set.insert(words.join(" "));
    }
    let candidates: Vec<String> = phrase_set.into_iter().collect();
    let split: Vec<Vec<&str>> = candidates.iter().map(|c| c.split(' ').collect()).collect();

    let mut ids = BTreeSet::new();
    while ids.len() < n {
        ids.insert(format!("P{}", rng.gen_range(0..1000)));
    }
    let mut ids: Vec<String> = ids.into_iter().collect();
    ids.shuffle(&mut rng);
    let base = NaiveDate::from_ymd_opt(2010, 1, 1).unwrap();
    let cite_p = rng.gen_range(0.05..0.6);

    let mut records = Vec::with_capacity(n);
    let mut members = Vec::with_capacity(n);
    for (i, id) in ids.iter().enumerate() {
        let title = random_section(&mut rng, 2);
        let abstract_ = random_section(&mut rng, 3);
        let mine: BTreeSet<usize> = split
            .iter()
            .enumerate()
            .filter(|(_, p)| title.iter().chain(&abstract_).any(|seg| contains_run(seg, p)))
            .map(|(k, _)| k)
            .collect();
        let mut out_citations: Vec<String> = ids
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && rng.gen_bool(cite_p))
            .map(|(_, t)| t.clone())
            .collect();
        if rng.gen_bool(0.2) {
            out_citations.push(format!("X{}", rng.gen_range(0..10)));
        }
        records.push(PaperRecord {
            id: id.clone(),
            title: render(&mut rng, &title),
            abstract_text: render(&mut rng, &abstract_),
            body: String::new(),
            date: base + chrono::Duration::days(100 * rng.gen_range(0..6)),
            out_citations,
        });
        members.push(mine);
    }
    RandomCorpus {
        records,
        candidates,
        members,
    }
}

/// Brute-force term statistics and scores over raw records.
pub struct Oracle<'a> {
    corpus: &'a RandomCorpus,
    pos: HashMap<&'a str, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub n_t: usize,
    pub c_t: usize,
    pub c_out: usize,
}

impl<'a> Oracle<'a> {
    pub fn new(corpus: &'a RandomCorpus) -> Self {
        let pos = corpus.records.iter().enumerate().map(|(i, r)| (r.id.as_str(), i)).collect();
        Self { corpus, pos }
    }

    fn cites(&self, from: usize, to: usize) -> bool {
        self.corpus.records[from].out_citations.contains(&self.corpus.records[to].id)
    }

    fn in_corpus_targets(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        self.corpus.records[from]
            .out_citations
            .iter()
            .filter_map(|t| self.pos.get(t.as_str()).copied())
    }

    fn term_papers(&self, term: usize) -> Vec<usize> {
        (0..self.corpus.records.len())
            .filter(|&i| self.corpus.members[i].contains(&term))
            .collect()
    }

    fn before(&self, a: usize, b: usize) -> bool {
        let (ra, rb) = (&self.corpus.records[a], &self.corpus.records[b]);
        (ra.date, &ra.id) < (rb.date, &rb.id)
    }

    pub fn stats(&self, term: usize) -> Stats {
        let g = self.term_papers(term);
        let mut c_t = 0;
        let mut c_out = 0;
        for &q in &g {
            for t in self.in_corpus_targets(q) {
                if g.contains(&t) {
                    c_t += 1;
                } else {
                    c_out += 1;
                }
            }
        }
        Stats { n_t: g.len(), c_t, c_out }
    }

    pub fn cnlc(&self, term: usize) -> Option<f64> {
        let s = self.stats(term);
        (s.n_t > 0).then(|| s.c_t as f64 / s.n_t as f64 - s.c_out as f64 / self.corpus.records.len() as f64)
    }

    /// Exact forecite score and central paper id with `min_citations`.
    pub fn forecite(&self, term: usize, min_citations: usize) -> Option<(f64, String)> {
        let g = self.term_papers(term);
        let mut best: Option<(f64, usize)> = None;
        for &p in &g {
            let future: Vec<usize> = g.iter().copied().filter(|&q| self.before(p, q)).collect();
            let f_p_t = future.iter().filter(|&&q| self.cites(q, p)).count();
            if future.is_empty() || f_p_t < min_citations {
                continue;
            }
            let score = ((f_p_t + 1) as f64).ln() * f_p_t as f64 / future.len() as f64;
            let better = match best {
                None => true,
                Some((b, bp)) => score > b || (score == b && self.before(p, bp)),
            };
            if better {
                best = Some((score, p));
            }
        }
        best.map(|(s, p)| (s, self.corpus.records[p].id.clone()))
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Fisher p-values `(p_greater, p_two_sided)` by enumerating every table with
/// the observed margins in exact integer arithmetic.
pub fn fisher_by_enumeration(a: u64, b: u64, c: u64, d: u64) -> (f64, f64) {
    let (r1, r2, c1) = (a + b, c + d, a + c);
    let n = r1 + r2;
    let weight = |x: u64| binom(r1, x) * binom(r2, c1 - x);
    let total = binom(n, c1);
    let observed = weight(a);
    let lo = c1.saturating_sub(r2);
    let hi = r1.min(c1);
    let mut greater = 0u128;
    let mut two = 0u128;
    for x in lo..=hi {
        let w = weight(x);
        if x >= a {
            greater += w;
        }
        if w <= observed {
            two += w;
        }
    }
    (greater as f64 / total as f64, two as f64 / total as f64)
}

const FUZZ_WORDS: &[&str] = &[
    "deep", "learning", "neural", "networks", "graph", "kernels", "attention", "is", "all", "you", "need",
    "using", "based", "for", "of", "the", "a", "an", "with", "via", "on", "towards", "BERT", "GANs",
    "Wasserstein", "convolutional", "efficient", "scalable", "analysis", "processes", "3D", "2019", "v2",
    "self-supervised", "word-embeddings", "caches", "studies", "learned", "embedding", "quickly",
    "very", "not", "data", "sets", "model", "models", "bayesian", "inference", "Monte", "Carlo", "and",
    "or", "but", "into", "over", "under", "again", "same", "own", "just", "don't", "it's", "—", ":",
    ",", ".", "(", ")", "?", "!", "über", "naïve", "Café", "x", "y", "z", "O(n)", "k-means", "t-SNE",
];

/// Random title-like strings mixing stopwords, punctuation, numbers, casing
/// and inflection.
pub fn fuzz_titles(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=24);
            (0..len)
                .map(|_| {
                    let w = *FUZZ_WORDS.choose(&mut rng).unwrap();
                    if rng.gen_bool(0.2) {
                        let mut c = w.chars();
                        c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
                    } else {
                        w.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

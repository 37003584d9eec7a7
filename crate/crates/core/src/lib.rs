//! Concept extraction from scientific corpora.
//!
//! Candidate phrases come from paper titles ([`textnorm`]), an inverted index
//! links each phrase to the papers mentioning it and to the citation graph
//! among them ([`index`]), and [`scoring`] ranks phrases by how much their
//! term citation graph concentrates on a single early paper. [`eval`] holds
//! precision, curve and significance tooling plus a synthetic corpus
//! generator.

pub mod corpus;
pub mod eval;
pub mod index;
pub mod scoring;
pub mod textnorm;

pub use corpus::{load_corpus, parse_corpus, Corpus, PaperIdx, PaperRecord};
pub use index::Index;
pub use scoring::{rank_concepts, ForeCiteParams, Method, ScoredConcept};
pub use textnorm::PhraseKey;

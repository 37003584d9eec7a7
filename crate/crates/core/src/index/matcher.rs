//! Token-level multi-pattern matcher.
//!
//! Phrases are inserted into a trie over interned lemma ids. A stream is
//! scanned once: from every position the trie is walked for at most
//! [`MAX_PHRASE_TOKENS`] steps, so the cost per paper is linear in its length
//! regardless of how many phrases are indexed.

use std::collections::HashMap;

use crate::textnorm::{PhraseKey, StreamToken, MAX_PHRASE_TOKENS};

const NO_MATCH: u32 = u32::MAX;

#[derive(Debug, Default)]
pub struct PhraseMatcher {
    vocab: HashMap<String, u32>,
    edges: HashMap<(u32, u32), u32>,
    /// Pattern id ending at each trie node; node 0 is the root.
    terminal: Vec<Option<u32>>,
}

impl PhraseMatcher {
    /// Builds a matcher; the pattern id of `phrases[i]` is `i`.
    pub fn new<'a>(phrases: impl IntoIterator<Item = &'a PhraseKey>) -> Self {
        let mut m = Self {
            terminal: vec![None],
            ..Default::default()
        };
        for (id, phrase) in phrases.into_iter().enumerate() {
            let mut node = 0u32;
            for token in phrase.tokens() {
                let next_tok = m.vocab.len() as u32;
                let tok = *m.vocab.entry(token.to_string()).or_insert(next_tok);
                let next_node = m.terminal.len() as u32;
                node = *m.edges.entry((node, tok)).or_insert_with(|| next_node);
                if node == next_node {
                    m.terminal.push(None);
                }
            }
            m.terminal[node as usize] = Some(id as u32);
        }
        m
    }

    fn encode(&self, stream: &[StreamToken]) -> Vec<u32> {
        stream
            .iter()
            .map(|t| match t {
                StreamToken::Lemma(l) => self.vocab.get(l.as_str()).copied().unwrap_or(NO_MATCH),
                StreamToken::Boundary => NO_MATCH,
            })
            .collect()
    }

    /// Ids of all patterns occurring in the stream as contiguous token runs,
    /// sorted and deduplicated.
    pub fn find_all(&self, stream: &[StreamToken]) -> Vec<u32> {
        let ids = self.encode(stream);
        let mut found = Vec::new();
        for start in 0..ids.len() {
            let mut node = 0u32;
            for &tok in ids[start..].iter().take(MAX_PHRASE_TOKENS) {
                if tok == NO_MATCH {
                    break;
                }
                match self.edges.get(&(node, tok)) {
                    Some(&next) => node = next,
                    None => break,
                }
                if let Some(id) = self.terminal[node as usize] {
                    found.push(id);
                }
            }
        }
        found.sort_unstable();
        found.dedup();
        found
    }
}

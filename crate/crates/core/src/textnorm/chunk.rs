use std::ops::Range;

use super::phrase::MAX_PHRASE_TOKENS;
use super::Pos;

/// Finds noun-phrase spans over a tagged sequence.
///
/// A maximal span is a run of `(ADJ | NOUN | PROPN | NUM)*` ending in a
/// NOUN or PROPN. Besides each maximal span, every contiguous sub-span of it
/// that ends in a NOUN/PROPN and has at most eight tokens is returned. Spans
/// are ordered by `(start, end)` and are unique.
pub fn chunk_noun_phrases(tags: &[Pos]) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < tags.len() {
        if !tags[i].is_phrase_internal() {
            i += 1;
            continue;
        }
        let start = i;
        while i < tags.len() && tags[i].is_phrase_internal() {
            i += 1;
        }
        let Some(last_head) = (start..i).rev().find(|&k| tags[k].is_nominal()) else {
            continue;
        };
        let end = last_head + 1;
        for s in start..end {
            for e in (s + 1)..=end {
                let is_maximal = s == start && e == end;
                if tags[e - 1].is_nominal() && (is_maximal || e - s <= MAX_PHRASE_TOKENS) {
                    spans.push(s..e);
                }
            }
        }
    }
    spans.sort_by_key(|r| (r.start, r.end));
    spans
}

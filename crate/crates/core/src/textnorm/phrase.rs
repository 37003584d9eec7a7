use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Longest phrase, in tokens, that is kept as a candidate.
pub const MAX_PHRASE_TOKENS: usize = 8;

const STOPWORD_FILE: &str = include_str!("../../data/stopwords.txt");

/// Extra stopword added to the standard English list.
pub const EXTRA_STOPWORD: &str = "using";

fn stopwords() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| {
        STOPWORD_FILE
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .chain(std::iter::once(EXTRA_STOPWORD))
            .collect()
    })
}

/// True for the standard English stopwords and for "using". Expects lowercase.
pub fn is_stopword(word: &str) -> bool {
    stopwords().contains(word)
}

/// The pinned stopword list, in file order, without the extra word.
pub fn stopword_list() -> impl Iterator<Item = &'static str> {
    STOPWORD_FILE.lines().map(str::trim).filter(|l| !l.is_empty())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhraseError {
    #[error("empty phrase")]
    Empty,
    #[error("phrase has {0} tokens, the limit is {MAX_PHRASE_TOKENS}")]
    TooLong(usize),
    #[error("phrase token {0:?} is a stopword")]
    Stopword(String),
    #[error("phrase token {0:?} is not a lowercase lemma")]
    BadToken(String),
}

/// Canonical identity of a candidate concept: lowercase lemmas joined by single
/// spaces, with no stopwords and between one and eight tokens.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhraseKey(String);

impl PhraseKey {
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self, PhraseError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut canonical = String::new();
        let mut count = 0;
        for token in tokens {
            let token = token.as_ref();
            if token.is_empty()
                || token.chars().any(|c| c.is_whitespace() || c.is_uppercase())
            {
                return Err(PhraseError::BadToken(token.to_string()));
            }
            if is_stopword(token) {
                return Err(PhraseError::Stopword(token.to_string()));
            }
            if count > 0 {
                canonical.push(' ');
            }
            canonical.push_str(token);
            count += 1;
        }
        match count {
            0 => Err(PhraseError::Empty),
            n if n > MAX_PHRASE_TOKENS => Err(PhraseError::TooLong(n)),
            _ => Ok(Self(canonical)),
        }
    }

    /// Parses the canonical form (whitespace-separated lemmas).
    pub fn parse(text: &str) -> Result<Self, PhraseError> {
        Self::from_tokens(text.split_whitespace())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.0.split(' ')
    }

    pub fn len(&self) -> usize {
        self.tokens().count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for PhraseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

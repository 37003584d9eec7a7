//! Lexicon and suffix-rule part-of-speech tagger.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::phrase::is_stopword;

/// Coarse part-of-speech tag set shared by the built-in tagger and the tagged
/// interchange format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Propn,
    Adj,
    Verb,
    Det,
    Adp,
    Conj,
    Num,
    Punct,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 10] = [
        Pos::Noun,
        Pos::Propn,
        Pos::Adj,
        Pos::Verb,
        Pos::Det,
        Pos::Adp,
        Pos::Conj,
        Pos::Num,
        Pos::Punct,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Propn => "PROPN",
            Pos::Adj => "ADJ",
            Pos::Verb => "VERB",
            Pos::Det => "DET",
            Pos::Adp => "ADP",
            Pos::Conj => "CONJ",
            Pos::Num => "NUM",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        }
    }

    /// Noun-phrase heads.
    pub fn is_nominal(self) -> bool {
        matches!(self, Pos::Noun | Pos::Propn)
    }

    /// Tags allowed inside a noun phrase.
    pub fn is_phrase_internal(self) -> bool {
        matches!(self, Pos::Adj | Pos::Noun | Pos::Propn | Pos::Num)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPos(pub String);

impl fmt::Display for UnknownPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown POS tag {:?}", self.0)
    }
}

impl std::error::Error for UnknownPos {}

impl FromStr for Pos {
    type Err = UnknownPos;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| UnknownPos(s.to_string()))
    }
}

const DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any", "no", "all",
    "both", "either", "neither", "another", "such", "my", "your", "his", "her", "its", "our",
    "their", "which", "what", "whose",
];

const ADPOSITIONS: &[&str] = &[
    "of", "in", "on", "at", "by", "for", "with", "from", "to", "into", "onto", "over", "under",
    "via", "through", "throughout", "between", "among", "amongst", "about", "against", "during",
    "without", "within", "across", "toward", "towards", "upon", "after", "before", "beyond",
    "versus", "vs", "per", "than", "as", "around", "along", "behind", "beside", "besides", "below",
    "above", "despite", "except", "inside", "outside", "near", "off", "out", "up", "down", "until",
    "unlike", "like",
];

const CONJUNCTIONS: &[&str] = &[
    "and", "or", "but", "nor", "yet", "so", "if", "whether", "while", "although", "though",
    "because", "unless", "whereas", "since", "once", "when", "where", "how", "why",
];

const STOP_VERBS: &[&str] = &[
    "is", "are", "was", "were", "be", "been", "being", "am", "has", "have", "had", "having", "do",
    "does", "did", "doing", "can", "could", "may", "might", "must", "shall", "should", "will",
    "would", "using", "use", "uses", "used", "based", "make", "makes", "made", "get", "gets",
    "got", "let", "lets", "become", "becomes", "need", "needs", "meet", "meets",
];

const OTHERS: &[&str] = &[
    "i", "me", "we", "us", "you", "he", "him", "she", "it", "they", "them", "who", "whom",
    "there", "here", "not", "very", "too", "just", "only", "also", "now", "then", "again",
    "further", "more", "most", "less", "least", "few", "other", "same", "own", "much", "even",
];

const ADJECTIVES: &[&str] = &[
    "deep", "new", "novel", "large", "small", "big", "high", "low", "fast", "slow", "efficient",
    "robust", "simple", "good", "better", "best", "first", "second", "last", "open", "real",
    "sparse", "dense", "random", "hard", "soft", "long", "short", "strong", "weak", "full",
    "recent", "modern", "latent", "hidden", "joint", "single", "multiple", "various", "different",
    "generic", "specific", "common", "standard", "fine", "coarse", "many", "several",
    "unsupervised", "supervised", "semi-supervised", "self-supervised", "weakly-supervised",
    "pretrained", "pre-trained", "effective", "accurate", "approximate", "exact", "fair", "safe",
    "private", "public", "unified", "scalable", "wide", "narrow", "shallow", "neural",
    "adversarial", "generative", "discriminative", "stochastic", "dynamic", "static", "linear",
    "nonlinear", "non-linear", "convex", "non-convex", "nonconvex", "online", "offline",
    "implicit", "explicit", "automatic", "unknown", "known", "true", "false", "optimal",
];

/// Verb bases whose `-ing`/`-ed` forms are tagged VERB.
const VERB_BASES: &[&str] = &[
    "learn", "train", "improve", "use", "base", "generate", "predict", "model", "estimate",
    "detect", "classify", "compute", "optimize", "optimise", "solve", "design", "build",
    "evaluate", "analyze", "analyse", "explore", "exploit", "understand", "leverage", "rethink",
    "revisit", "measure", "find", "mine", "extract", "identify", "recognize", "track", "segment",
    "rank", "search", "match", "map", "plan", "control", "test", "compare", "combine", "reduce",
    "scale", "accelerate", "represent", "encode", "decode", "infer", "sample", "select", "adapt",
    "transfer", "fuse", "align", "translate", "summarize", "answer", "parse", "label", "cluster",
    "embed", "prune", "compress", "quantize", "attack", "defend", "verify", "synthesize",
    "simulate", "discover", "bridge", "unify", "integrate", "enhance", "boost", "tune",
    "pretrain", "distill", "regularize", "characterize", "quantify", "guide", "go", "make", "get",
    "take", "see", "show", "provide", "enable", "achieve", "address", "handle", "capture",
    "incorporate", "propose", "present", "introduce", "study", "investigate", "examine", "apply",
    "develop", "construct", "derive", "obtain", "perform", "manage", "support", "schedule",
    "allocate", "share", "monitor", "protect", "visualize", "interpret", "explain", "teach",
    "mitigate", "retrieve", "recommend", "personalize", "augment", "generalize", "localize",
    "initialize", "update", "fix", "repair", "bound", "cover", "partition", "sort", "count",
    "grow", "evolve", "hash", "filter", "mix", "attend", "benchmark", "revise", "count", "avoid",
    "exceed", "outperform", "overcome", "break", "beat", "fool", "ask", "tell", "read", "write",
];

/// Words ending in `-ly` that are nouns.
const LY_NOUNS: &[&str] = &[
    "family", "anomaly", "assembly", "supply", "reply", "rally", "ally", "butterfly", "monopoly",
    "jelly", "belly", "bully", "italy", "july", "lily", "poly", "oligopoly", "homily",
];

const ADJ_SUFFIXES: &[&str] = &["al", "ive", "ous", "ic", "able", "ible", "ful", "less"];

struct Lexicon {
    det: HashSet<&'static str>,
    adp: HashSet<&'static str>,
    conj: HashSet<&'static str>,
    verb: HashSet<&'static str>,
    other: HashSet<&'static str>,
    adj: HashSet<&'static str>,
    verb_bases: HashSet<&'static str>,
    ly_nouns: HashSet<&'static str>,
}

fn lexicon() -> &'static Lexicon {
    static LEXICON: OnceLock<Lexicon> = OnceLock::new();
    LEXICON.get_or_init(|| {
        let set = |words: &[&'static str]| words.iter().copied().collect();
        Lexicon {
            det: set(DETERMINERS),
            adp: set(ADPOSITIONS),
            conj: set(CONJUNCTIONS),
            verb: set(STOP_VERBS),
            other: set(OTHERS),
            adj: set(ADJECTIVES),
            verb_bases: set(VERB_BASES),
            ly_nouns: set(LY_NOUNS),
        }
    })
}

fn is_punctuation(token: &str) -> bool {
    !token.chars().any(char::is_alphanumeric)
}

fn is_numeric(token: &str) -> bool {
    token.starts_with(|c: char| c.is_ascii_digit())
        && token.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}

fn is_sentence_break(token: &str) -> bool {
    matches!(token, "." | "!" | "?" | ":" | ";")
}

fn has_internal_caps(token: &str) -> bool {
    token.chars().skip(1).any(char::is_uppercase)
}

fn is_capitalized(token: &str) -> bool {
    token.chars().next().is_some_and(char::is_uppercase)
}

/// Candidate base forms for an inflected `-ing` or `-ed` form.
fn verb_base_candidates(stem: &str) -> impl Iterator<Item = String> + '_ {
    let bytes = stem.as_bytes();
    let undoubled = (bytes.len() >= 2 && bytes[bytes.len() - 1] == bytes[bytes.len() - 2])
        .then(|| stem[..stem.len() - 1].to_string());
    [Some(stem.to_string()), Some(format!("{stem}e")), undoubled]
        .into_iter()
        .flatten()
}

fn is_known_verb_form(lower: &str) -> bool {
    let lex = lexicon();
    let known = |stem: &str| verb_base_candidates(stem).any(|b| lex.verb_bases.contains(b.as_str()));
    if let Some(stem) = lower.strip_suffix("ing") {
        return stem.len() >= 2 && known(stem);
    }
    if let Some(stem) = lower.strip_suffix("ied") {
        return lex.verb_bases.contains(format!("{stem}y").as_str());
    }
    if let Some(stem) = lower.strip_suffix("ed") {
        return stem.len() >= 2 && known(stem);
    }
    false
}

fn has_adj_suffix(lower: &str) -> bool {
    lower.chars().count() > 5 && ADJ_SUFFIXES.iter().any(|s| lower.ends_with(s))
}

/// Assigns a coarse tag to every token.
///
/// Rules are applied in order: punctuation, numbers, closed-class lexicon,
/// words with internal capitals (PROPN), `-ing`/`-ed` forms of known verbs
/// (VERB, except an `-ing` form directly after a nominal or adjective, which
/// heads a compound), `-ly` (OTHER), adjective suffixes, capitalization after
/// the first word of a sentence (PROPN), and finally NOUN. A suffix-derived
/// adjective that does not precede another phrase-internal token is retagged
/// NOUN since it is the phrase head.
pub fn pos_tag<S: AsRef<str>>(tokens: &[S]) -> Vec<Pos> {
    let lex = lexicon();
    let mut tags = Vec::with_capacity(tokens.len());
    let mut suffix_adj = vec![false; tokens.len()];

    for (i, token) in tokens.iter().enumerate() {
        let token = token.as_ref();
        let sentence_initial = i == 0 || is_sentence_break(tokens[i - 1].as_ref());
        let lower = token.to_lowercase();
        let prev = tags.last().copied();

        let tag = if is_punctuation(token) {
            Pos::Punct
        } else if is_numeric(token) {
            Pos::Num
        } else if lex.det.contains(lower.as_str()) {
            Pos::Det
        } else if lex.adp.contains(lower.as_str()) {
            Pos::Adp
        } else if lex.conj.contains(lower.as_str()) {
            Pos::Conj
        } else if lex.verb.contains(lower.as_str()) {
            Pos::Verb
        } else if lex.other.contains(lower.as_str()) || is_stopword(&lower) {
            Pos::Other
        } else if lex.adj.contains(lower.as_str()) {
            Pos::Adj
        } else if has_internal_caps(token) {
            Pos::Propn
        } else if is_known_verb_form(&lower)
            && !(lower.ends_with("ing")
                && matches!(prev, Some(Pos::Adj | Pos::Noun | Pos::Propn)))
        {
            Pos::Verb
        } else if lower.ends_with("ly") && lower.len() > 4 && !lex.ly_nouns.contains(lower.as_str()) {
            Pos::Other
        } else if has_adj_suffix(&lower) {
            suffix_adj[i] = true;
            Pos::Adj
        } else if is_capitalized(token) && !sentence_initial {
            Pos::Propn
        } else {
            Pos::Noun
        };
        tags.push(tag);
    }

    for i in 0..tags.len() {
        if suffix_adj[i] && !tags.get(i + 1).is_some_and(|t| t.is_phrase_internal()) {
            tags[i] = Pos::Noun;
        }
    }
    tags
}

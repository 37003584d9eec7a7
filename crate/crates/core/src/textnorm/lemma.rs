use super::Pos;

/// Nouns whose plural-looking form is also the singular.
const INVARIANT: &[&str] = &[
    "series", "species", "news", "physics", "mathematics", "economics", "robotics", "linguistics",
    "semantics", "analytics", "dynamics", "graphics", "ethics", "genomics", "optics", "means",
    "bias", "gas", "lens", "chaos", "atlas", "canvas", "alias", "corpus", "status", "thesis",
    "basis", "axis", "analysis",
];

/// Singular forms ending in `-ie`, `-che` or `-se` whose plurals would otherwise be cut too far.
const IE_SINGULARS: &[&str] = &[
    "movie", "cookie", "zombie", "calorie", "selfie", "prairie", "rookie", "lie", "tie", "die", "pie",
    "hippie", "goalie", "smoothie",
];

const CHE_SINGULARS: &[&str] = &["cache", "niche", "avalanche", "headache", "cliche", "moustache"];

/// Lowercases a token and, for nominal tags, strips English plural endings.
///
/// Plural rules, in order: `-ies` → `-y`; `-sses`, `-uses`, `-xes`, `-zzes`,
/// `-ches`, `-shes` lose `-es`; other `-ses`/`-zes` lose `-s`; a final `-s`
/// is dropped unless the word ends in `-ss`, `-us` or `-is`.
pub fn lemmatize(token: &str, pos: Pos) -> String {
    let lower = token.to_lowercase();
    if !pos.is_nominal() {
        return lower;
    }
    singularize(&lower).unwrap_or(lower)
}

fn singularize(word: &str) -> Option<String> {
    if word.chars().count() < 3 || !word.ends_with('s') || INVARIANT.contains(&word) {
        return None;
    }
    // hyphenated compounds inflect on the last part
    if let Some((head, last)) = word.rsplit_once('-') {
        return singularize(last).map(|s| format!("{head}-{s}"));
    }
    if let Some(stem) = word.strip_suffix("ies") {
        let ie = format!("{stem}ie");
        if IE_SINGULARS.contains(&ie.as_str()) {
            return Some(ie);
        }
        return Some(format!("{stem}y"));
    }
    if let Some(stem) = word.strip_suffix("es") {
        if stem.ends_with("ss")
            || stem.ends_with("us")
            || stem.ends_with('x')
            || stem.ends_with("zz")
            || stem.ends_with("sh")
        {
            return Some(stem.to_string());
        }
        if stem.ends_with("ch") {
            let che = format!("{stem}e");
            if CHE_SINGULARS.contains(&che.as_str()) {
                return Some(che);
            }
            return Some(stem.to_string());
        }
    }
    if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
        return None;
    }
    Some(word[..word.len() - 1].to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plural_rules() {
        let cases = [
            ("networks", "network"),
            ("GANs", "gan"),
            ("analysis", "analysis"),
            ("queries", "query"),
            ("processes", "process"),
            ("classes", "class"),
            ("boxes", "box"),
            ("approaches", "approach"),
            ("meshes", "mesh"),
            ("databases", "database"),
            ("responses", "response"),
            ("cases", "case"),
            ("sizes", "size"),
            ("caches", "cache"),
            ("movies", "movie"),
            ("loss", "loss"),
            ("virus", "virus"),
            ("viruses", "virus"),
            ("series", "series"),
            ("graphs", "graph"),
            ("word-embeddings", "word-embedding"),
            ("ids", "id"),
            ("as", "as"),
        ];
        for (word, lemma) in cases {
            assert_eq!(lemmatize(word, Pos::Noun), lemma, "{word}");
        }
    }

    #[test]
    fn non_nominal_only_lowercased() {
        assert_eq!(lemmatize("Networks", Pos::Verb), "networks");
        assert_eq!(lemmatize("Deep", Pos::Adj), "deep");
    }

    #[test]
    fn proper_nouns_also_singularized() {
        assert_eq!(lemmatize("Transformers", Pos::Propn), "transformer");
    }
}

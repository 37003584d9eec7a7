/// Splits text into surface tokens.
///
/// Words are runs of alphanumeric characters. A hyphen between two
/// alphanumerics stays inside the word, as does a `.` or `,` between two
/// digits (`3.14`, `1,000`). Every other non-space character becomes its own
/// one-character token.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            current.push(c);
            continue;
        }
        let prev = if i > 0 { Some(chars[i - 1]) } else { None };
        let next = chars.get(i + 1).copied();
        let joins = !current.is_empty()
            && match c {
                '-' | '\u{2010}' | '\u{2011}' => {
                    prev.is_some_and(char::is_alphanumeric) && next.is_some_and(char::is_alphanumeric)
                }
                '.' | ',' => {
                    prev.is_some_and(|p| p.is_ascii_digit()) && next.is_some_and(|n| n.is_ascii_digit())
                }
                _ => false,
            };
        if joins {
            current.push(c);
            continue;
        }
        if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
        if !c.is_whitespace() {
            tokens.push(c.to_string());
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyphenated_words_stay_intact() {
        assert_eq!(tokenize("Self-Taught Hashing!"), vec!["Self-Taught", "Hashing", "!"]);
    }

    #[test]
    fn empty() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("  \t\n").is_empty());
    }

    #[test]
    fn colon_split() {
        assert_eq!(tokenize("graph2vec: Learning"), vec!["graph2vec", ":", "Learning"]);
    }

    #[test]
    fn numbers() {
        assert_eq!(tokenize("pi is 3.14, e is 2.71."), vec!["pi", "is", "3.14", ",", "e", "is", "2.71", "."]);
        assert_eq!(tokenize("1,000 papers"), vec!["1,000", "papers"]);
    }

    #[test]
    fn dangling_hyphens_are_punctuation() {
        assert_eq!(tokenize("pre- and post-training"), vec!["pre", "-", "and", "post-training"]);
        assert_eq!(tokenize("a -- b"), vec!["a", "-", "-", "b"]);
    }

    #[test]
    fn unicode_letters() {
        assert_eq!(tokenize("Erdős–Rényi graphs"), vec!["Erdős", "–", "Rényi", "graphs"]);
    }
}

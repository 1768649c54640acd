//! The sentence model: lowercase word tokens, tokenization, and stop words.
//!
//! Tokenization is deliberately plain so that corpora are reproducible from
//! raw text: NFC-normalize, lowercase, split on whitespace, strip leading and
//! trailing characters outside `[a-z0-9'-]`, drop anything left empty.
//! Punctuation never becomes a token.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use unicode_normalization::UnicodeNormalization;

/// A single word token: non-empty, lowercase, and free of whitespace.
///
/// Tokens are only created through [`tokenize`], which guarantees the
/// invariants hold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token(String);

impl Token {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Crate-internal constructor; callers must pass text that already
    /// satisfies the token invariants (produced by the tokenizer).
    pub(crate) fn from_validated(text: String) -> Self {
        debug_assert!(!text.is_empty());
        debug_assert!(!text.chars().any(char::is_whitespace));
        Token(text)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// An ordered sequence of tokens; the unit every augmentation operation
/// consumes and produces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sentence {
    tokens: Vec<Token>,
}

impl Sentence {
    pub(crate) fn from_tokens(tokens: Vec<Token>) -> Self {
        Sentence { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Token> {
        self.tokens.iter()
    }

    /// Joins the tokens with single spaces.
    pub fn detokenize(&self) -> String {
        let mut out = String::new();
        for (i, tok) in self.tokens.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(tok.as_str());
        }
        out
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.detokenize())
    }
}

impl<'a> IntoIterator for &'a Sentence {
    type Item = &'a Token;
    type IntoIter = std::slice::Iter<'a, Token>;

    fn into_iter(self) -> Self::IntoIter {
        self.tokens.iter()
    }
}

fn keep_char(c: char) -> bool {
    matches!(c, 'a'..='z' | '0'..='9' | '\'' | '-')
}

/// Splits raw text into a [`Sentence`].
///
/// Empty input yields an empty sentence; there is no error path.
pub fn tokenize(text: &str) -> Sentence {
    let normalized: String = text.nfc().collect::<String>().to_lowercase().nfc().collect();
    let tokens = normalized
        .split_whitespace()
        .map(|raw| raw.trim_matches(|c| !keep_char(c)))
        .filter(|t| !t.is_empty())
        .map(|t| Token::from_validated(t.to_string()))
        .collect();
    Sentence::from_tokens(tokens)
}

/// A fixed set of lowercase function words excluded from synonym replacement
/// and random insertion.
#[derive(Debug, Clone)]
pub struct StopWordList {
    words: HashSet<String>,
}

/// The default English list shipped with the crate: articles, pronouns,
/// prepositions, auxiliaries, and a few conjunctions.
const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords.txt");

impl StopWordList {
    /// The embedded English default.
    pub fn default_english() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    /// Parses a stop-word file: UTF-8, one word per line, `#` starts a
    /// comment, blank lines ignored. Words are lowercased on ingest.
    pub fn parse(contents: &str) -> Self {
        let words = contents
            .lines()
            .map(|line| match line.find('#') {
                Some(idx) => &line[..idx],
                None => line,
            })
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| w.to_lowercase())
            .collect();
        StopWordList { words }
    }

    pub fn from_path(path: &Path) -> io::Result<Self> {
        Ok(Self::parse(&fs::read_to_string(path)?))
    }

    pub fn contains(&self, token: &Token) -> bool {
        self.words.contains(token.as_str())
    }

    pub fn contains_str(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

//! Raw answer text to the token stream used by matching and scoring.

mod porter;
mod token;

use std::collections::HashSet;
use std::path::Path;

use serde::Serialize;

use crate::error::{read_file, ResourceError};

pub use porter::porter_stem;
pub use token::{split_sentences, tokenize, Token, TokenKind};

const DEFAULT_STOPWORDS: &str = include_str!("../../resources/stopwords.txt");

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopList {
    words: HashSet<String>,
}

impl StopList {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The bundled English list.
    pub fn english() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    /// One word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        StopList { words }
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        read_file(path).map(|text| Self::parse(&text))
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopList {
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, normalized: &str) -> bool {
        self.words.contains(normalized)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProcessedText {
    pub raw: String,
    pub all_tokens: Vec<Token>,
    /// Non-stop-word, non-punctuation tokens in original order.
    pub content_tokens: Vec<Token>,
    pub sentence_count: usize,
}

impl ProcessedText {
    pub fn len(&self) -> usize {
        self.content_tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.content_tokens.is_empty()
    }
}

pub fn preprocess(raw: &str, stoplist: &StopList) -> ProcessedText {
    let mut all_tokens = tokenize(raw);
    let sentence_count = split_sentences(&mut all_tokens);
    for token in &mut all_tokens {
        if token.kind == TokenKind::Word {
            token.stem = porter_stem(&token.normalized);
        }
        token.is_stopword = stoplist.contains(&token.normalized);
    }
    let content_tokens = all_tokens
        .iter()
        .filter(|t| !t.is_stopword && t.kind != TokenKind::Punctuation)
        .cloned()
        .collect();
    ProcessedText {
        raw: raw.to_string(),
        all_tokens,
        content_tokens,
        sentence_count,
    }
}

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    pub stem: String,
    /// Index in the answer's full token sequence.
    pub position: usize,
    pub sentence_index: usize,
    pub kind: TokenKind,
    pub is_stopword: bool,
}

impl Token {
    fn new(surface: String, kind: TokenKind, position: usize) -> Self {
        let normalized = surface.to_lowercase();
        Token {
            stem: normalized.clone(),
            normalized,
            surface,
            position,
            sentence_index: 0,
            kind,
            is_stopword: false,
        }
    }

    /// Forms under which the token is looked up in lexical resources: the
    /// case-folded surface, then the stem when it differs.
    pub fn lemma_forms(&self) -> impl Iterator<Item = &str> {
        let stem = (self.stem != self.normalized).then_some(self.stem.as_str());
        std::iter::once(self.normalized.as_str()).chain(stem)
    }
}

const ORDINAL_SUFFIXES: [&str; 4] = ["st", "nd", "rd", "th"];

/// Splits raw text into word, number and punctuation tokens.
///
/// Words are maximal runs of letters, with apostrophes and hyphens kept when
/// they sit between two letters. Numbers are maximal digit runs, optionally
/// followed by an ordinal suffix that is not itself followed by a letter.
/// Every other non-whitespace character is a single punctuation token.
pub fn tokenize(raw: &str) -> Vec<Token> {
    let chars: Vec<char> = raw.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = if c.is_alphabetic() {
            i += 1;
            while i < chars.len() {
                if chars[i].is_alphabetic() {
                    i += 1;
                } else if is_joiner(chars[i]) && i + 1 < chars.len() && chars[i + 1].is_alphabetic() {
                    i += 2;
                } else {
                    break;
                }
            }
            TokenKind::Word
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if let Some(len) = ordinal_suffix_len(&chars[i..]) {
                i += len;
            }
            TokenKind::Number
        } else {
            i += 1;
            TokenKind::Punctuation
        };
        let surface: String = chars[start..i].iter().collect();
        tokens.push(Token::new(surface, kind, tokens.len()));
    }
    tokens
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-')
}

fn ordinal_suffix_len(rest: &[char]) -> Option<usize> {
    if rest.len() < 2 {
        return None;
    }
    let candidate: String = rest[..2].iter().collect::<String>().to_lowercase();
    let followed_by_letter = rest.get(2).is_some_and(|c| c.is_alphabetic());
    (ORDINAL_SUFFIXES.contains(&candidate.as_str()) && !followed_by_letter).then_some(2)
}

fn is_sentence_final(token: &Token) -> bool {
    token.kind == TokenKind::Punctuation && matches!(token.surface.as_str(), "." | "!" | "?")
}

fn starts_capitalized(token: &Token) -> bool {
    token.kind == TokenKind::Word && token.surface.chars().next().is_some_and(char::is_uppercase)
}

/// Assigns sentence indices: a new sentence starts after `.`, `!` or `?`
/// when the next token is a capitalized word. Returns the sentence count.
pub fn split_sentences(tokens: &mut [Token]) -> usize {
    if tokens.is_empty() {
        return 0;
    }
    let mut sentence = 0;
    for i in 0..tokens.len() {
        tokens[i].sentence_index = sentence;
        if is_sentence_final(&tokens[i]) && tokens.get(i + 1).is_some_and(starts_capitalized) {
            sentence += 1;
        }
    }
    sentence + 1
}

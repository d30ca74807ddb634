use crate::text::{Token, TokenKind};

const UNITS: [(&str, &str, u64); 20] = [
    ("zero", "zeroth", 0),
    ("one", "first", 1),
    ("two", "second", 2),
    ("three", "third", 3),
    ("four", "fourth", 4),
    ("five", "fifth", 5),
    ("six", "sixth", 6),
    ("seven", "seventh", 7),
    ("eight", "eighth", 8),
    ("nine", "ninth", 9),
    ("ten", "tenth", 10),
    ("eleven", "eleventh", 11),
    ("twelve", "twelfth", 12),
    ("thirteen", "thirteenth", 13),
    ("fourteen", "fourteenth", 14),
    ("fifteen", "fifteenth", 15),
    ("sixteen", "sixteenth", 16),
    ("seventeen", "seventeenth", 17),
    ("eighteen", "eighteenth", 18),
    ("nineteen", "nineteenth", 19),
];

const TENS: [(&str, &str, u64); 8] = [
    ("twenty", "twentieth", 20),
    ("thirty", "thirtieth", 30),
    ("forty", "fortieth", 40),
    ("fifty", "fiftieth", 50),
    ("sixty", "sixtieth", 60),
    ("seventy", "seventieth", 70),
    ("eighty", "eightieth", 80),
    ("ninety", "ninetieth", 90),
];

const SCALES: [(&str, &str, u64); 4] = [
    ("thousand", "thousandth", 1_000),
    ("million", "millionth", 1_000_000),
    ("billion", "billionth", 1_000_000_000),
    ("trillion", "trillionth", 1_000_000_000_000),
];

enum Part {
    Small(u64),
    Hundred,
    Scale(u64),
}

fn lookup(word: &str) -> Option<Part> {
    let find = |table: &[(&str, &str, u64)]| {
        table
            .iter()
            .find(|(card, ord, _)| *card == word || *ord == word)
            .map(|e| e.2)
    };
    if word == "hundred" || word == "hundredth" {
        return Some(Part::Hundred);
    }
    find(&UNITS)
        .or_else(|| find(&TENS))
        .map(Part::Small)
        .or_else(|| find(&SCALES).map(Part::Scale))
}

/// Value of a spelled-out cardinal or ordinal, with hyphenated compounds
/// such as `twenty-one` or `one-hundred-and-fifth`.
pub fn parse_number_words(word: &str) -> Option<u64> {
    let mut total: u64 = 0;
    let mut current: u64 = 0;
    let mut any = false;
    let mut last_scale = u64::MAX;
    for part in word.split('-').filter(|p| *p != "and") {
        match lookup(part)? {
            Part::Small(v) => {
                // "twenty-one" is fine, "one-twenty" is not
                if !current.is_multiple_of(100) && (!current.is_multiple_of(10) || v >= 10) {
                    return None;
                }
                current += v;
            }
            Part::Hundred => {
                if current >= 100 {
                    return None;
                }
                current = current.max(1) * 100;
            }
            Part::Scale(s) => {
                if s >= last_scale {
                    return None;
                }
                total = total.checked_add(current.max(1).checked_mul(s)?)?;
                current = 0;
                last_scale = s;
            }
        }
        any = true;
    }
    any.then(|| total.checked_add(current)).flatten()
}

fn parse_digits(text: &str) -> Option<u64> {
    let digits = text.trim_end_matches(|c: char| c.is_ascii_alphabetic());
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Numeric value a token denotes: digit strings (with or without an ordinal
/// suffix) and English number words. Cardinals and ordinals share values.
pub fn numeric_value(token: &Token) -> Option<u64> {
    match token.kind {
        TokenKind::Number => parse_digits(&token.normalized),
        TokenKind::Word => parse_number_words(&token.normalized),
        TokenKind::Punctuation => None,
    }
}

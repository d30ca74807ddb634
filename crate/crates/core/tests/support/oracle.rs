//! Brute-force clipped n-gram counting over plain token slices, written
//! without hashing so it shares no code path with the library.

use asags_core::alignment::StageList;
use asags_core::lexicon::Lexicons;
use asags_core::scoring::{clipped_ngram_count, modified_precision};
use asags_core::text::{preprocess, ProcessedText, StopList};

pub const ALPHABET: [&str; 4] = ["p", "q", "r", "s"];

fn occurrences(seq: &[&str], gram: &[&str]) -> usize {
    if seq.len() < gram.len() {
        return 0;
    }
    (0..=seq.len() - gram.len())
        .filter(|&i| &seq[i..i + gram.len()] == gram)
        .count()
}

pub fn brute_clipped(candidate: &[&str], references: &[&[&str]], n: usize) -> usize {
    if n == 0 || candidate.len() < n {
        return 0;
    }
    let mut total = 0;
    for i in 0..=candidate.len() - n {
        let gram = &candidate[i..i + n];
        if (0..i).any(|j| &candidate[j..j + n] == gram) {
            continue;
        }
        let in_refs = references.iter().map(|r| occurrences(r, gram)).max().unwrap_or(0);
        total += occurrences(candidate, gram).min(in_refs);
    }
    total
}

pub fn brute_precision(candidate: &[&str], references: &[&[&str]], n: usize) -> Option<f64> {
    (candidate.len() >= n).then(|| brute_clipped(candidate, references, n) as f64 / (candidate.len() - n + 1) as f64)
}

/// Every sequence over the alphabet of length at most `max_len`.
pub fn all_sequences(max_len: usize) -> Vec<Vec<&'static str>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<&str>| {
                ALPHABET.iter().map(move |c| {
                    let mut next = s.clone();
                    next.push(*c);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub struct Prepared {
    pub tokens: Vec<&'static str>,
    pub text: ProcessedText,
}

pub fn prepare(tokens: Vec<&'static str>) -> Prepared {
    let text = preprocess(&tokens.join(" "), &StopList::empty());
    Prepared { tokens, text }
}

/// First disagreement between the library and the oracle for one pair.
pub fn compare(candidate: &Prepared, reference: &Prepared, lexicons: &Lexicons) -> Option<String> {
    let exact = StageList::exact();
    let refs = [reference.tokens.as_slice()];
    for n in 1..=4 {
        let expected = brute_clipped(&candidate.tokens, &refs, n);
        let got = clipped_ngram_count(&candidate.text, &[&reference.text], n);
        if got != expected {
            return Some(format!(
                "clipped n={n} {:?} vs {:?}: {got} != {expected}",
                candidate.tokens, reference.tokens
            ));
        }
        let expected = brute_precision(&candidate.tokens, &refs, n);
        let got = modified_precision(&candidate.text, &[&reference.text], n, &exact, lexicons);
        if got != expected {
            return Some(format!(
                "precision n={n} {:?} vs {:?}: {got:?} != {expected:?}",
                candidate.tokens, reference.tokens
            ));
        }
    }
    None
}

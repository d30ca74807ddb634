use std::collections::HashMap;

use crate::alignment::{align, Alignment, StageList};
use crate::lexicon::Lexicons;
use crate::text::ProcessedText;

fn normalized_keys(text: &ProcessedText) -> Vec<&str> {
    text.content_tokens.iter().map(|t| t.normalized.as_str()).collect()
}

fn ngram_counts<'a>(keys: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], usize> {
    let mut counts = HashMap::new();
    if n == 0 || keys.len() < n {
        return counts;
    }
    for gram in keys.windows(n) {
        *counts.entry(gram).or_insert(0) += 1;
    }
    counts
}

/// Sum over distinct candidate n-grams of min(candidate count, highest count
/// in any single reference), comparing case-folded content tokens.
pub fn clipped_ngram_count(candidate: &ProcessedText, references: &[&ProcessedText], n: usize) -> usize {
    let cand_keys = normalized_keys(candidate);
    let cand = ngram_counts(&cand_keys, n);
    if cand.is_empty() {
        return 0;
    }
    let ref_keys: Vec<Vec<&str>> = references.iter().map(|r| normalized_keys(r)).collect();
    let ref_counts: Vec<HashMap<&[&str], usize>> = ref_keys.iter().map(|k| ngram_counts(k, n)).collect();
    cand.iter()
        .map(|(gram, &count)| {
            let max_ref = ref_counts
                .iter()
                .map(|rc| rc.get(gram).copied().unwrap_or(0))
                .max()
                .unwrap_or(0);
            count.min(max_ref)
        })
        .sum()
}

/// Number of candidate n-grams, or `None` when the candidate is shorter
/// than `n`.
pub fn ngram_total(candidate: &ProcessedText, n: usize) -> Option<usize> {
    (n >= 1 && candidate.len() >= n).then(|| candidate.len() - n + 1)
}

/// Candidate keys seen through an alignment: a token aligned one-to-one
/// takes the case-folded form of its reference token, every other token
/// keeps its own.
pub fn projected_keys<'a>(
    candidate: &'a ProcessedText,
    reference: &'a ProcessedText,
    alignment: &Alignment,
) -> Vec<&'a str> {
    let mut keys = normalized_keys(candidate);
    for p in &alignment.pairs {
        if p.student.len() == 1 && p.reference.len() == 1 {
            keys[p.student.start] = reference.content_tokens[p.reference.start].normalized.as_str();
        }
    }
    keys
}

/// Which candidate n-gram windows earn credit against one reference. Each
/// reference n-gram occurrence credits at most one candidate window, taken
/// left to right. Unigram credit is the alignment's coverage.
fn credited_windows(
    candidate: &ProcessedText,
    reference: &ProcessedText,
    alignment: &Alignment,
    n: usize,
) -> Vec<bool> {
    if n == 1 {
        return alignment.student_covered();
    }
    let cand = projected_keys(candidate, reference, alignment);
    let ref_keys = normalized_keys(reference);
    let mut remaining = ngram_counts(&ref_keys, n);
    if cand.len() < n {
        return Vec::new();
    }
    cand.windows(n)
        .map(|gram| match remaining.get_mut(gram) {
            Some(left) if *left > 0 => {
                *left -= 1;
                true
            }
            _ => false,
        })
        .collect()
}

/// Clipped n-gram credit against several aligned references: each distinct
/// candidate n-gram is credited with its windows matched against the most
/// generous reference. Under exact-only alignment this is the plain clipped
/// count.
pub fn aligned_ngram_credit(
    candidate: &ProcessedText,
    references: &[&ProcessedText],
    alignments: &[Alignment],
    n: usize,
) -> usize {
    let own = normalized_keys(candidate);
    if n == 0 || own.len() < n {
        return 0;
    }
    let windows: Vec<&[&str]> = own.windows(n).collect();
    let mut best: HashMap<&[&str], usize> = HashMap::new();
    for (reference, alignment) in references.iter().zip(alignments) {
        let mut per_gram: HashMap<&[&str], usize> = HashMap::new();
        for (gram, credited) in windows.iter().zip(credited_windows(candidate, reference, alignment, n)) {
            if credited {
                *per_gram.entry(gram).or_insert(0) += 1;
            }
        }
        for (gram, c) in per_gram {
            let slot = best.entry(gram).or_insert(0);
            *slot = (*slot).max(c);
        }
    }
    best.values().sum()
}

/// Modified n-gram precision of `candidate` against `references`, with
/// matches found by the given matcher stages. `None` when the candidate has
/// fewer than `n` content tokens.
pub fn modified_precision(
    candidate: &ProcessedText,
    references: &[&ProcessedText],
    n: usize,
    stages: &StageList,
    lexicons: &Lexicons,
) -> Option<f64> {
    let total = ngram_total(candidate, n)?;
    let alignments: Vec<Alignment> = references
        .iter()
        .map(|r| align(candidate, r, stages, lexicons))
        .collect();
    Some(aligned_ngram_credit(candidate, references, &alignments, n) as f64 / total as f64)
}

/// p_1..p_max_n against one reference whose alignment is already known.
pub(crate) fn precisions_against(
    candidate: &ProcessedText,
    reference: &ProcessedText,
    alignment: &Alignment,
    max_n: usize,
) -> Vec<Option<f64>> {
    (1..=max_n)
        .map(|n| {
            let total = ngram_total(candidate, n)?;
            let credited = credited_windows(candidate, reference, alignment, n);
            Some(credited.iter().filter(|c| **c).count() as f64 / total as f64)
        })
        .collect()
}

#[path = "support/oracle.rs"]
mod oracle;

use asags_core::alignment::{align, StageList};
use asags_core::lexicon::Lexicons;
use asags_core::scoring::{aligned_ngram_credit, clipped_ngram_count};
use asags_core::text::{preprocess, StopList};
use oracle::*;

#[test]
fn brute_force_counts_hand_examples() {
    let the = ["the"; 7];
    let mat = ["the", "cat", "is", "on", "the", "mat"];
    assert_eq!(brute_clipped(&the, &[&mat], 1), 2);
    assert_eq!(brute_precision(&the, &[&mat], 2), Some(0.0));
    assert_eq!(brute_precision(&["a"], &[&mat], 2), None);
}

#[test]
fn exact_counts_match_brute_force_up_to_four_tokens() {
    let lex = Lexicons::empty();
    let seqs: Vec<Prepared> = all_sequences(4).into_iter().map(prepare).collect();
    for c in &seqs {
        for r in &seqs {
            if let Some(err) = compare(c, r, &lex) {
                panic!("{err}");
            }
        }
    }
}

#[test]
fn several_references_clip_to_the_best_single_reference() {
    let seqs = all_sequences(3);
    let stop = StopList::empty();
    let lex = Lexicons::empty();
    let texts: Vec<_> = seqs.iter().map(|s| preprocess(&s.join(" "), &stop)).collect();
    for (ci, c) in seqs.iter().enumerate().step_by(3) {
        for (ai, a) in seqs.iter().enumerate().step_by(5) {
            for (bi, b) in seqs.iter().enumerate().step_by(7) {
                let refs = [&texts[ai], &texts[bi]];
                let alignments: Vec<_> = refs
                    .iter()
                    .map(|r| align(&texts[ci], r, &StageList::exact(), &lex))
                    .collect();
                for n in 1..=3 {
                    let expected = brute_clipped(c, &[a, b], n);
                    assert_eq!(clipped_ngram_count(&texts[ci], &refs, n), expected);
                    assert_eq!(aligned_ngram_credit(&texts[ci], &refs, &alignments, n), expected);
                }
            }
        }
    }
}

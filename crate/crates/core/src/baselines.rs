//! Comparison scorers: keyword overlap, tf-idf cosine similarity with a
//! five-fold protocol, and plain BLEU.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::scoring::{brevity_penalty, clipped_ngram_count, ngram_total};
use crate::text::ProcessedText;

pub const FOLDS: usize = 5;
pub const DEFAULT_ERB_MAX_N: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaselineError {
    #[error("no reference has content words")]
    NoUsableReference,
    #[error("tf-idf training needs at least two non-empty answers, got {0}")]
    TrainingInfeasible(usize),
    #[error("five-fold evaluation needs at least {FOLDS} scoreable answers, got {0}")]
    TooFewAnswers(usize),
}

fn stem_set(text: &ProcessedText) -> BTreeSet<&str> {
    text.content_tokens.iter().map(|t| t.stem.as_str()).collect()
}

/// Best fraction, over references, of a reference's distinct content stems
/// that also occur in the student answer.
pub fn keyword_score(student: &ProcessedText, references: &[&ProcessedText]) -> Result<f64, BaselineError> {
    let student_stems = stem_set(student);
    references
        .iter()
        .map(|r| stem_set(r))
        .filter(|r| !r.is_empty())
        .map(|r| r.intersection(&student_stems).count() as f64 / r.len() as f64)
        .reduce(f64::max)
        .ok_or(BaselineError::NoUsableReference)
}

/// Document frequencies of content stems over a training set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TfIdfModel {
    pub document_frequency: HashMap<String, usize>,
    pub document_count: usize,
}

impl TfIdfModel {
    /// `ln(D / df)` for seen terms, `ln(D + 1)` for unseen ones.
    pub fn idf(&self, term: &str) -> f64 {
        let d = self.document_count as f64;
        match self.document_frequency.get(term) {
            Some(&df) => (d / df as f64).ln(),
            None => (d + 1.0).ln(),
        }
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.document_frequency.keys().map(String::as_str)
    }

    /// Raw stem counts weighted by idf.
    pub fn vector(&self, text: &ProcessedText) -> HashMap<String, f64> {
        let mut tf: HashMap<&str, usize> = HashMap::new();
        for t in &text.content_tokens {
            *tf.entry(t.stem.as_str()).or_insert(0) += 1;
        }
        tf.into_iter()
            .map(|(term, count)| (term.to_string(), count as f64 * self.idf(term)))
            .collect()
    }
}

/// Fits document frequencies on the answers that have content words.
pub fn fit_tfidf(training: &[&ProcessedText]) -> Result<TfIdfModel, BaselineError> {
    let usable: Vec<&&ProcessedText> = training.iter().filter(|t| !t.is_empty()).collect();
    if usable.len() < 2 {
        return Err(BaselineError::TrainingInfeasible(usable.len()));
    }
    let mut document_frequency: HashMap<String, usize> = HashMap::new();
    for doc in &usable {
        for term in stem_set(doc) {
            *document_frequency.entry(term.to_string()).or_insert(0) += 1;
        }
    }
    Ok(TfIdfModel {
        document_frequency,
        document_count: usable.len(),
    })
}

pub fn cosine(a: &HashMap<String, f64>, b: &HashMap<String, f64>) -> f64 {
    // iterate in key order so the float sums do not depend on hash order
    let ordered = |m: &HashMap<String, f64>| -> Vec<(String, f64)> {
        let mut v: Vec<(String, f64)> = m.iter().map(|(k, v)| (k.clone(), *v)).collect();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    };
    let (a, b) = (ordered(a), ordered(b));
    let norm = |v: &[(String, f64)]| v.iter().map(|(_, x)| x * x).sum::<f64>().sqrt();
    let (na, nb) = (norm(&a), norm(&b));
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let lookup: HashMap<&str, f64> = b.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let dot: f64 = a
        .iter()
        .filter_map(|(k, x)| lookup.get(k.as_str()).map(|y| x * y))
        .sum();
    (dot / (na * nb)).clamp(0.0, 1.0)
}

/// Highest tf-idf cosine similarity between the student and any reference.
pub fn vsm_score(student: &ProcessedText, references: &[&ProcessedText], model: &TfIdfModel) -> f64 {
    let sv = model.vector(student);
    references
        .iter()
        .map(|r| cosine(&sv, &model.vector(r)))
        .fold(0.0, f64::max)
}

/// Plain BLEU over case-folded content tokens: geometric mean of clipped
/// precisions for n = 1..max_n times the brevity penalty against the
/// closest reference length. No stemming, no smoothing.
pub fn erb_score(student: &ProcessedText, references: &[&ProcessedText], max_n: usize) -> f64 {
    let refs: Vec<&ProcessedText> = references.iter().copied().filter(|r| !r.is_empty()).collect();
    if student.is_empty() || refs.is_empty() || max_n == 0 {
        return 0.0;
    }
    let mut log_sum = 0.0;
    let mut orders = 0;
    for n in 1..=max_n {
        let Some(total) = ngram_total(student, n) else {
            continue;
        };
        let clipped = clipped_ngram_count(student, &refs, n);
        if clipped == 0 {
            return 0.0;
        }
        log_sum += (clipped as f64 / total as f64).ln();
        orders += 1;
    }
    let c = student.len();
    let closest = refs
        .iter()
        .map(|r| r.len())
        .min_by_key(|&r| (r.abs_diff(c), r))
        .unwrap_or(c);
    brevity_penalty(c, closest) * (log_sum / orders as f64).exp()
}

/// Assignment of items to folds, a pure function of the seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldPlan {
    pub folds: Vec<usize>,
    pub fold_count: usize,
}

impl FoldPlan {
    pub fn new(items: usize, fold_count: usize, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..items).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut folds = vec![0; items];
        for (rank, &item) in order.iter().enumerate() {
            folds[item] = rank % fold_count;
        }
        FoldPlan { folds, fold_count }
    }

    pub fn members(&self, fold: usize) -> impl Iterator<Item = usize> + '_ {
        self.folds
            .iter()
            .enumerate()
            .filter(move |(_, f)| **f == fold)
            .map(|(i, _)| i)
    }

    pub fn sizes(&self) -> Vec<usize> {
        (0..self.fold_count).map(|f| self.members(f).count()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiveFoldOutcome {
    pub plan: FoldPlan,
    /// For each fold, the (answer index, score) pairs scored with the model
    /// trained on that fold.
    pub per_fold: Vec<Vec<(usize, f64)>>,
    /// Mean of each answer's scores across the folds it was scored in.
    pub scores: Vec<f64>,
}

/// Each fold in turn trains the tf-idf model; the answers of the other
/// folds are scored with it. Every answer ends up scored `FOLDS - 1` times.
pub fn five_fold_evaluate(
    answers: &[&ProcessedText],
    references: &[&ProcessedText],
    seed: u64,
) -> Result<FiveFoldOutcome, BaselineError> {
    let scoreable = answers.iter().filter(|a| !a.is_empty()).count();
    if scoreable < FOLDS {
        return Err(BaselineError::TooFewAnswers(scoreable));
    }
    let plan = FoldPlan::new(answers.len(), FOLDS, seed);
    let mut sums = vec![0.0; answers.len()];
    let mut counts = vec![0usize; answers.len()];
    let mut per_fold = Vec::with_capacity(FOLDS);
    for fold in 0..FOLDS {
        let training: Vec<&ProcessedText> = plan.members(fold).map(|i| answers[i]).collect();
        let model = fit_tfidf(&training)?;
        let scored: Vec<(usize, f64)> = (0..answers.len())
            .filter(|&i| plan.folds[i] != fold)
            .map(|i| (i, vsm_score(answers[i], references, &model)))
            .collect();
        for &(i, s) in &scored {
            sums[i] += s;
            counts[i] += 1;
        }
        per_fold.push(scored);
    }
    let scores = sums.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect();
    Ok(FiveFoldOutcome { plan, per_fold, scores })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{preprocess, StopList};

    fn pt(s: &str) -> ProcessedText {
        preprocess(s, &StopList::empty())
    }

    #[test]
    fn keyword_values() {
        let r = pt("stack push pop top");
        assert_eq!(keyword_score(&r, &[&r]).unwrap(), 1.0);
        assert_eq!(keyword_score(&pt("queue"), &[&r]).unwrap(), 0.0);
        assert_eq!(keyword_score(&pt("pushing the top"), &[&r]).unwrap(), 0.5);
        assert_eq!(keyword_score(&pt("pushing top top top"), &[&r]).unwrap(), 0.5);
        assert_eq!(keyword_score(&pt("x"), &[&pt(""), &pt("x y")]).unwrap(), 0.5);
        assert_eq!(
            keyword_score(&pt("x"), &[&pt(""), &pt(" ")]),
            Err(BaselineError::NoUsableReference)
        );
    }

    #[test]
    fn idf_values() {
        let docs: Vec<ProcessedText> = ["a b", "a c", "a d", "a e", "a f"].iter().map(|s| pt(s)).collect();
        let refs: Vec<&ProcessedText> = docs.iter().collect();
        let m = fit_tfidf(&refs).unwrap();
        assert_eq!(m.idf("a"), 0.0);
        assert!((m.idf("b") - 5f64.ln()).abs() < 1e-15);
        assert!((m.idf("zzz") - 6f64.ln()).abs() < 1e-15);
        assert_eq!(fit_tfidf(&[&pt("a")]), Err(BaselineError::TrainingInfeasible(1)));
        assert_eq!(
            fit_tfidf(&[&pt(""), &pt("")]),
            Err(BaselineError::TrainingInfeasible(0))
        );
    }

    #[test]
    fn vsm_values() {
        let docs = [pt("stack push pop"), pt("queue enqueue dequeue"), pt("tree node leaf")];
        let refs: Vec<&ProcessedText> = docs.iter().collect();
        let m = fit_tfidf(&refs).unwrap();
        let r = pt("stack push");
        assert!((vsm_score(&r, &[&r], &m) - 1.0).abs() < 1e-12);
        assert_eq!(vsm_score(&pt("queue"), &[&r], &m), 0.0);
        let once = vsm_score(&pt("stack pop"), &[&r], &m);
        let twice = vsm_score(&pt("stack pop stack pop"), &[&r], &m);
        assert!((once - twice).abs() < 1e-12);
    }

    #[test]
    fn erb_values() {
        let t = pt("the cat sat on the mat");
        assert_eq!(erb_score(&t, &[&t], 3), 1.0);
        assert_eq!(erb_score(&pt("dog"), &[&t], 3), 0.0);
        let sevens = pt("the the the the the the the");
        // candidate longer than the reference, so no brevity penalty
        assert!((erb_score(&sevens, &[&pt("the cat is on the mat")], 1) - 2.0 / 7.0).abs() < 1e-15);
        // orders longer than the candidate are dropped
        assert!((erb_score(&pt("cat sat"), &[&t], 3) - (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(erb_score(&pt("cat mat"), &[&t], 2), 0.0);
        // brevity against the closest reference length
        let long = pt("a b c d e f g h i j");
        assert_eq!(erb_score(&pt("the cat sat on the mat"), &[&t, &long], 3), 1.0);
    }

    #[test]
    fn fold_plan_properties() {
        let p = FoldPlan::new(23, 5, 42);
        let mut sizes = p.sizes();
        sizes.sort();
        assert_eq!(sizes, [4, 4, 5, 5, 5]);
        assert_eq!(p, FoldPlan::new(23, 5, 42));
        assert_ne!(p, FoldPlan::new(23, 5, 43));
        assert_eq!(FoldPlan::new(5, 5, 7).sizes(), [1; 5]);
    }

    #[test]
    fn five_fold_protocol() {
        let texts: Vec<ProcessedText> = (0..12)
            .map(|i| pt(&format!("stack push pop item{} value{}", i % 3, i % 4)))
            .collect();
        let answers: Vec<&ProcessedText> = texts.iter().collect();
        let r = pt("stack push pop");
        let out = five_fold_evaluate(&answers, &[&r], 42).unwrap();
        let mut times = vec![0; answers.len()];
        for fold in &out.per_fold {
            for (i, _) in fold {
                times[*i] += 1;
            }
        }
        assert!(times.iter().all(|&t| t == FOLDS - 1));
        assert_eq!(out, five_fold_evaluate(&answers, &[&r], 42).unwrap());
        assert!(out.scores.iter().all(|s| (0.0..=1.0).contains(s)));

        let three: Vec<&ProcessedText> = answers[..3].to_vec();
        assert_eq!(
            five_fold_evaluate(&three, &[&r], 42),
            Err(BaselineError::TooFewAnswers(3))
        );
        // one answer per fold leaves nothing to fit idf on
        let five: Vec<&ProcessedText> = answers[..5].to_vec();
        assert_eq!(
            five_fold_evaluate(&five, &[&r], 42),
            Err(BaselineError::TrainingInfeasible(1))
        );
    }
}

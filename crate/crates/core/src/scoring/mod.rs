//! Enhanced-BLEU scoring: clipped n-gram precision per reference, recall,
//! a recall-weighted F-mean, a fragmentation penalty, a brevity penalty,
//! combination across references and the mapping onto a grade scale.

mod config;
mod ngram;

use serde::Serialize;
use thiserror::Error;

use crate::alignment::{align, Alignment, StageList};
use crate::lexicon::Lexicons;
use crate::text::ProcessedText;

pub use config::{
    uniform_weights, ConfigError, GradeScale, ReferenceCombination, ScoreComponent, ScoringConfig, DEFAULT_MAX_N,
};
pub use ngram::{aligned_ngram_credit, clipped_ngram_count, modified_precision, ngram_total, projected_keys};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("reference `{0}` has no content words")]
    EmptyReference(String),
    #[error("at least one reference is required")]
    NoReferences,
    #[error("reference weights must be non-negative with a positive sum")]
    BadWeights,
}

/// Matched reference positions over reference length.
pub fn recall(alignment: &Alignment) -> Result<f64, ScoreError> {
    if alignment.reference_len == 0 {
        return Err(ScoreError::EmptyReference(String::new()));
    }
    Ok(alignment.matched_reference_count() as f64 / alignment.reference_len as f64)
}

/// Recall-weighted harmonic mean `P·R / (α·R + (1−α)·P)`, with α the
/// precision weight; zero when both are zero.
pub fn f_mean(precision: f64, recall: f64, alpha: f64) -> f64 {
    let denom = alpha * recall + (1.0 - alpha) * precision;
    if denom <= 0.0 {
        0.0
    } else {
        precision * recall / denom
    }
}

/// `γ·(chunks/matches)^β`, zero for an empty alignment.
pub fn chunk_penalty(alignment: &Alignment, gamma: f64, beta: f64) -> f64 {
    let matches = alignment.matched_count();
    if alignment.is_empty() || matches == 0 {
        return 0.0;
    }
    gamma * (alignment.chunk_count as f64 / matches as f64).powf(beta)
}

/// 1 for candidates at least as long as the reference, else
/// `exp(1 − reference_len/candidate_len)`.
pub fn brevity_penalty(candidate_len: usize, reference_len: usize) -> f64 {
    if candidate_len == 0 {
        return 0.0;
    }
    if candidate_len >= reference_len {
        1.0
    } else {
        (1.0 - reference_len as f64 / candidate_len as f64).exp()
    }
}

/// Weighted mean of the defined precisions, weights renormalized over the
/// orders that exist for this candidate.
fn combined_precision(precisions: &[Option<f64>], weights: &[f64]) -> f64 {
    let (num, den) = precisions
        .iter()
        .zip(weights)
        .filter_map(|(p, w)| p.map(|p| (p * w, *w)))
        .fold((0.0, 0.0), |(n, d), (pw, w)| (n + pw, d + w));
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceScore {
    pub reference_id: String,
    /// p_1..p_N; `None` where the student answer is shorter than n.
    pub precisions: Vec<Option<f64>>,
    pub precision: f64,
    pub recall: f64,
    pub f_mean: f64,
    pub chunk_penalty: f64,
    pub brevity_penalty: f64,
    /// The configured component; the full score by default.
    pub score: f64,
    /// The student answer had no content words.
    pub degenerate: bool,
}

impl ReferenceScore {
    pub fn component(&self, component: ScoreComponent) -> f64 {
        match component {
            ScoreComponent::Full => self.brevity_penalty * (1.0 - self.chunk_penalty) * self.f_mean,
            ScoreComponent::Precision => self.precision,
            ScoreComponent::Recall => self.recall,
            ScoreComponent::FMean => self.f_mean,
            ScoreComponent::PenalizedFMean => (1.0 - self.chunk_penalty) * self.f_mean,
            ScoreComponent::BrevityPrecision => self.brevity_penalty * self.precision,
        }
    }
}

/// Scores a student answer against a single reference.
pub fn score_against_reference(
    student: &ProcessedText,
    reference: &ProcessedText,
    reference_id: &str,
    config: &ScoringConfig,
    stages: &StageList,
    lexicons: &Lexicons,
) -> Result<(ReferenceScore, Alignment), ScoreError> {
    if reference.is_empty() {
        return Err(ScoreError::EmptyReference(reference_id.to_string()));
    }
    let alignment = align(student, reference, stages, lexicons);
    if student.is_empty() {
        let entry = ReferenceScore {
            reference_id: reference_id.to_string(),
            precisions: vec![None; config.max_n],
            precision: 0.0,
            recall: 0.0,
            f_mean: 0.0,
            chunk_penalty: 0.0,
            brevity_penalty: 0.0,
            score: 0.0,
            degenerate: true,
        };
        return Ok((entry, alignment));
    }
    let precisions = ngram::precisions_against(student, reference, &alignment, config.max_n);
    let precision = combined_precision(&precisions, &config.ngram_weights);
    let recall = recall(&alignment)?;
    let brevity = if config.use_brevity_penalty {
        brevity_penalty(student.len(), reference.len())
    } else {
        1.0
    };
    let mut entry = ReferenceScore {
        reference_id: reference_id.to_string(),
        precisions,
        precision,
        recall,
        f_mean: f_mean(precision, recall, config.alpha),
        chunk_penalty: chunk_penalty(&alignment, config.gamma, config.beta),
        brevity_penalty: brevity,
        score: 0.0,
        degenerate: false,
    };
    entry.score = entry.component(config.component);
    Ok((entry, alignment))
}

/// Combines per-reference scores. Returns the combined score and the index
/// of the chosen reference (`None` for a weighted average).
pub fn combine_references(
    scores: &[f64],
    weights: &[f64],
    strategy: ReferenceCombination,
) -> Result<(f64, Option<usize>), ScoreError> {
    if scores.is_empty() {
        return Err(ScoreError::NoReferences);
    }
    match strategy {
        ReferenceCombination::Best => {
            let (best, score) =
                scores.iter().enumerate().fold(
                    (0, f64::NEG_INFINITY),
                    |acc, (i, &s)| if s > acc.1 { (i, s) } else { acc },
                );
            Ok((score, Some(best)))
        }
        ReferenceCombination::Average => {
            if weights.len() != scores.len() || weights.iter().any(|w| w.is_nan() || *w < 0.0) {
                return Err(ScoreError::BadWeights);
            }
            let total: f64 = weights.iter().sum();
            if total <= 0.0 {
                return Err(ScoreError::BadWeights);
            }
            let sum: f64 = scores.iter().zip(weights).map(|(s, w)| s * w).sum();
            Ok(((sum / total).clamp(0.0, 1.0), None))
        }
    }
}

/// A reference answer ready for scoring.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreparedReference {
    pub id: String,
    pub weight: f64,
    pub text: ProcessedText,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreBreakdown {
    pub per_reference: Vec<ReferenceScore>,
    pub combined_score: f64,
    /// Reference id, or `average` for the weighted-average strategy.
    pub chosen_reference: String,
    /// Index of the reference with the highest score.
    #[serde(skip)]
    pub best_index: usize,
}

impl ScoreBreakdown {
    pub fn degenerate(&self) -> bool {
        self.per_reference.iter().any(|r| r.degenerate)
    }

    /// Recombines a different component with the same alignments.
    pub fn combined_component(
        &self,
        component: ScoreComponent,
        weights: &[f64],
        strategy: ReferenceCombination,
    ) -> Result<f64, ScoreError> {
        let scores: Vec<f64> = self.per_reference.iter().map(|r| r.component(component)).collect();
        combine_references(&scores, weights, strategy).map(|(s, _)| s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnswerScore {
    pub breakdown: ScoreBreakdown,
    /// One alignment per reference, same order as the references.
    pub alignments: Vec<Alignment>,
}

/// Scores one student answer against every reference and combines.
pub fn score_answer(
    student: &ProcessedText,
    references: &[PreparedReference],
    config: &ScoringConfig,
    stages: &StageList,
    lexicons: &Lexicons,
) -> Result<AnswerScore, ScoreError> {
    if references.is_empty() {
        return Err(ScoreError::NoReferences);
    }
    let mut per_reference = Vec::with_capacity(references.len());
    let mut alignments = Vec::with_capacity(references.len());
    for r in references {
        let (entry, alignment) = score_against_reference(student, &r.text, &r.id, config, stages, lexicons)?;
        per_reference.push(entry);
        alignments.push(alignment);
    }
    let scores: Vec<f64> = per_reference.iter().map(|r| r.score).collect();
    let weights: Vec<f64> = references.iter().map(|r| r.weight).collect();
    let (combined_score, chosen) = combine_references(&scores, &weights, config.combination)?;
    let (_, best_index) = combine_references(&scores, &weights, ReferenceCombination::Best)?;
    let chosen_reference = match chosen {
        Some(i) => references[i].id.clone(),
        None => "average".to_string(),
    };
    Ok(AnswerScore {
        breakdown: ScoreBreakdown {
            per_reference,
            combined_score,
            chosen_reference,
            best_index: best_index.unwrap_or(0),
        },
        alignments,
    })
}

/// Affine map of a [0,1] score onto the scale. No rounding.
pub fn to_grade(score: f64, scale: &GradeScale) -> f64 {
    scale.min + score.clamp(0.0, 1.0) * (scale.max - scale.min)
}

/// Half-up rounding to `decimals` places, for display.
pub fn round_half_up(value: f64, decimals: u32) -> f64 {
    let factor = 10f64.powi(decimals as i32);
    // the epsilon keeps 2.675-style binary representations rounding up
    ((value * factor) + 0.5 + 1e-9).floor() / factor
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Feedback {
    pub grade: f64,
    pub reference_id: String,
    /// Student content words credited by the alignment.
    pub matched_content: Vec<String>,
    /// Reference content words no pair covers.
    pub unmatched_reference_content: Vec<String>,
}

/// Grade plus matched and missing content, read from the best reference's
/// alignment.
pub fn feedback(
    answer: &AnswerScore,
    student: &ProcessedText,
    references: &[PreparedReference],
    scale: &GradeScale,
) -> Feedback {
    let best = answer.breakdown.best_index;
    let alignment = &answer.alignments[best];
    let matched_content = student
        .content_tokens
        .iter()
        .zip(alignment.student_covered())
        .filter(|(_, c)| *c)
        .map(|(t, _)| t.surface.clone())
        .collect();
    let unmatched_reference_content = references[best]
        .text
        .content_tokens
        .iter()
        .zip(alignment.reference_covered())
        .filter(|(_, c)| !*c)
        .map(|(t, _)| t.surface.clone())
        .collect();
    Feedback {
        grade: to_grade(answer.breakdown.combined_score, scale),
        reference_id: references[best].id.clone(),
        matched_content,
        unmatched_reference_content,
    }
}

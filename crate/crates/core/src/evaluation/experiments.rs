use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate, pearson, EvalSettings, Method, PreparedDataset};
use crate::alignment::{MatcherStage, StageList};
use crate::lexicon::Lexicons;
use crate::scoring::{score_answer, to_grade, ConfigError, ScoreComponent};

/// Target correlations for the four stage sets, kept as annotations.
pub const ABLATION_TARGETS: [f64; 4] = [0.46, 0.48, 0.49, 0.59];

/// Target row for asags, erb, keywords and vsm, kept as annotations.
pub const COMPARISON_TARGETS: [f64; 4] = [0.73, 0.58, 0.07, 0.31];

pub const METRIC_COMPONENTS: [ScoreComponent; 4] = [
    ScoreComponent::Precision,
    ScoreComponent::Recall,
    ScoreComponent::FMean,
    ScoreComponent::PenalizedFMean,
];

/// Plain mean of the defined values; `None` if there are none.
pub fn mean_defined(values: impl IntoIterator<Item = Option<f64>>) -> Option<f64> {
    let defined: Vec<f64> = values.into_iter().flatten().collect();
    (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub max_n: usize,
    pub r: Option<f64>,
}

/// Correlation of the main scorer for maximum n-gram order 1 to 4.
pub fn ngram_sweep(
    prepared: &PreparedDataset,
    settings: &EvalSettings,
    lexicons: &Lexicons,
) -> Result<Vec<SweepPoint>, ConfigError> {
    (1..=4)
        .map(|n| {
            let s = EvalSettings {
                scoring: settings.scoring.with_max_n(n)?,
                ..settings.clone()
            };
            Ok(SweepPoint {
                max_n: n,
                r: evaluate(prepared, Method::Asags, &s, lexicons).r,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricPoint {
    pub component: ScoreComponent,
    pub r: Option<f64>,
}

/// Correlation of precision, recall, F-mean and penalized F-mean alone.
/// Every answer is aligned once; the components are read off the same
/// alignments.
pub fn metric_comparison(prepared: &PreparedDataset, settings: &EvalSettings, lexicons: &Lexicons) -> Vec<MetricPoint> {
    let ds = &prepared.dataset;
    let weights: Vec<f64> = prepared.references.iter().map(|r| r.weight).collect();
    let scored: Vec<Option<_>> = prepared
        .answers
        .par_iter()
        .map(|a| score_answer(a, &prepared.references, &settings.scoring, &settings.stages, lexicons).ok())
        .collect();
    let human = ds.human_scores();
    METRIC_COMPONENTS
        .iter()
        .map(|&component| {
            let machine: Vec<f64> = scored
                .iter()
                .map(|s| {
                    let unit = s
                        .as_ref()
                        .and_then(|s| {
                            s.breakdown
                                .combined_component(component, &weights, settings.scoring.combination)
                                .ok()
                        })
                        .unwrap_or(0.0);
                    to_grade(unit, &ds.scale)
                })
                .collect();
            MetricPoint {
                component,
                r: pearson(&machine, &human),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationRow {
    pub experiment: usize,
    pub label: &'static str,
    pub stages: StageList,
    pub r: Option<f64>,
    pub reference_target: f64,
}

pub fn ablation_stage_sets() -> [(&'static str, StageList); 4] {
    let list = |s: Vec<MatcherStage>| StageList::new(s).expect("fixed stage list is valid");
    [
        ("Exact only", StageList::exact()),
        (
            "Exact, Porter stemmer",
            list(vec![MatcherStage::Exact, MatcherStage::Stem]),
        ),
        (
            "Exact, Heuristics",
            list(vec![MatcherStage::Exact, MatcherStage::heuristic()]),
        ),
        ("Exact, Porter stemmer, Heuristics", StageList::full()),
    ]
}

/// The main scorer under four matcher stage sets, in a fixed order.
pub fn module_ordering_experiment(
    prepared: &PreparedDataset,
    settings: &EvalSettings,
    lexicons: &Lexicons,
) -> Vec<AblationRow> {
    ablation_stage_sets()
        .into_iter()
        .zip(ABLATION_TARGETS)
        .enumerate()
        .map(|(i, ((label, stages), target))| {
            let s = EvalSettings {
                stages: stages.clone(),
                ..settings.clone()
            };
            AblationRow {
                experiment: i + 1,
                label,
                stages,
                r: evaluate(prepared, Method::Asags, &s, lexicons).r,
                reference_target: target,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub dataset_id: String,
    /// One entry per method in `Method::ALL` order.
    pub r: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonMatrix {
    pub methods: Vec<Method>,
    pub rows: Vec<ComparisonRow>,
    /// Mean over the datasets each method could evaluate.
    pub average: Vec<Option<f64>>,
    pub reference_targets: Vec<f64>,
}

/// Correlation per dataset and method, plus a per-method average.
pub fn method_comparison(
    datasets: &[PreparedDataset],
    settings: &EvalSettings,
    lexicons: &Lexicons,
) -> ComparisonMatrix {
    let rows: Vec<ComparisonRow> = datasets
        .par_iter()
        .map(|p| ComparisonRow {
            dataset_id: p.dataset.dataset_id.clone(),
            r: Method::ALL
                .iter()
                .map(|&m| evaluate(p, m, settings, lexicons).r)
                .collect(),
        })
        .collect();
    let average = (0..Method::ALL.len())
        .map(|j| mean_defined(rows.iter().map(|row| row.r[j])))
        .collect();
    ComparisonMatrix {
        methods: Method::ALL.to_vec(),
        rows,
        average,
        reference_targets: COMPARISON_TARGETS.to_vec(),
    }
}

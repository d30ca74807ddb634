//! Dataset loading, Pearson correlation against human scores, per-method
//! evaluation runs and the experiment tables built from them.

mod dataset;
mod experiments;
mod report;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::alignment::StageList;
use crate::baselines::{erb_score, five_fold_evaluate, keyword_score};
use crate::config::{RunConfig, DEFAULT_SEED};
use crate::lexicon::Lexicons;
use crate::scoring::{score_answer, to_grade, ConfigError, ScoringConfig};

pub use dataset::{
    import_benchmark_csv, load_benchmark_csv, load_dataset, Dataset, DatasetError, PreparedDataset, ReferenceAnswer,
    StudentAnswer,
};
pub use experiments::{
    mean_defined, method_comparison, metric_comparison, module_ordering_experiment, ngram_sweep, AblationRow,
    ComparisonMatrix, ComparisonRow, MetricPoint, SweepPoint, ABLATION_TARGETS, COMPARISON_TARGETS, METRIC_COMPONENTS,
};
pub use report::{fig2_csv, fig3_csv, format_r, rows_csv, table1_csv, table2_csv, NOT_EVALUABLE};

/// Sample Pearson correlation. `None` when the lengths differ, fewer than
/// two pairs are given, or either vector has zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Asags,
    Erb,
    Keywords,
    Vsm,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Asags, Method::Erb, Method::Keywords, Method::Vsm];

    pub fn name(self) -> &'static str {
        match self {
            Method::Asags => "asags",
            Method::Erb => "erb",
            Method::Keywords => "keywords",
            Method::Vsm => "vsm",
        }
    }
}

impl FromStr for Method {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ConfigError::Unknown {
                what: "method",
                value: s.to_string(),
            })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything an evaluation run depends on besides the data and lexicons.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalSettings {
    pub scoring: ScoringConfig,
    pub stages: StageList,
    pub seed: u64,
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            scoring: ScoringConfig::default(),
            stages: StageList::full(),
            seed: DEFAULT_SEED,
        }
    }
}

impl From<&RunConfig> for EvalSettings {
    fn from(cfg: &RunConfig) -> Self {
        EvalSettings {
            scoring: cfg.scoring.clone(),
            stages: cfg.stages.clone(),
            seed: cfg.seed,
        }
    }
}

impl EvalSettings {
    /// Short hex digest identifying the method and every setting that can
    /// change its scores.
    pub fn digest(&self, method: Method) -> String {
        let s = &self.scoring;
        let canonical = format!(
            "method={};max_n={};weights={:?};alpha={:?};gamma={:?};beta={:?};brevity={};combination={};component={};stages={};seed={}",
            method, s.max_n, s.ngram_weights, s.alpha, s.gamma, s.beta, s.use_brevity_penalty, s.combination,
            s.component, self.stages, self.seed
        );
        let hash = Sha256::digest(canonical.as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub dataset_id: String,
    pub method: Method,
    pub config_digest: String,
    /// `None` when the run is not evaluable.
    pub r: Option<f64>,
    pub n_answers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_evaluable: Option<String>,
    /// Answers the scorer rejected; they were scored at the scale minimum.
    pub flagged: Vec<String>,
    /// Machine grades on the dataset's scale, in answer order.
    pub machine_scores: Vec<f64>,
}

fn row(
    prepared: &PreparedDataset,
    method: Method,
    settings: &EvalSettings,
    scores: Result<Vec<Result<f64, String>>, String>,
) -> ReportRow {
    let ds = &prepared.dataset;
    let mut row = ReportRow {
        dataset_id: ds.dataset_id.clone(),
        method,
        config_digest: settings.digest(method),
        r: None,
        n_answers: ds.answers.len(),
        not_evaluable: None,
        flagged: Vec::new(),
        machine_scores: Vec::new(),
    };
    match scores {
        Err(reason) => row.not_evaluable = Some(reason),
        Ok(scores) => {
            for (answer, s) in ds.answers.iter().zip(&scores) {
                let unit = match s {
                    Ok(v) => *v,
                    Err(_) => {
                        row.flagged.push(answer.id.clone());
                        0.0
                    }
                };
                row.machine_scores.push(to_grade(unit, &ds.scale));
            }
            row.r = pearson(&row.machine_scores, &ds.human_scores());
            if row.r.is_none() {
                row.not_evaluable = Some("correlation undefined (fewer than two answers or zero variance)".into());
            }
        }
    }
    row
}

/// Scores every answer of a dataset with one method and correlates the
/// machine grades with the human scores.
pub fn evaluate(prepared: &PreparedDataset, method: Method, settings: &EvalSettings, lexicons: &Lexicons) -> ReportRow {
    let refs = prepared.reference_texts();
    let scores: Result<Vec<Result<f64, String>>, String> = match method {
        Method::Asags => Ok(prepared
            .answers
            .par_iter()
            .map(|a| {
                score_answer(a, &prepared.references, &settings.scoring, &settings.stages, lexicons)
                    .map(|s| s.breakdown.combined_score)
                    .map_err(|e| e.to_string())
            })
            .collect()),
        Method::Erb => Ok(prepared
            .answers
            .par_iter()
            .map(|a| Ok(erb_score(a, &refs, settings.scoring.max_n)))
            .collect()),
        Method::Keywords => Ok(prepared
            .answers
            .par_iter()
            .map(|a| keyword_score(a, &refs).map_err(|e| e.to_string()))
            .collect()),
        Method::Vsm => five_fold_evaluate(&prepared.answer_texts(), &refs, settings.seed)
            .map(|out| out.scores.into_iter().map(Ok).collect())
            .map_err(|e| e.to_string()),
    };
    row(prepared, method, settings, scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::StopList;

    #[test]
    fn pearson_examples() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-15);
        let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((r - 0.8).abs() < 1e-15);
        assert_eq!(pearson(&[1.0, 1.0], &[1.0, 2.0]), None);
        assert_eq!(pearson(&[1.0], &[1.0]), None);
        assert_eq!(pearson(&[1.0, 2.0], &[1.0]), None);
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("lsa".parse::<Method>().is_err());
    }

    #[test]
    fn digest_tracks_settings() {
        let s = EvalSettings::default();
        assert_eq!(s.digest(Method::Asags), s.digest(Method::Asags));
        assert_ne!(s.digest(Method::Asags), s.digest(Method::Erb));
        let other = EvalSettings { seed: 1, ..s.clone() };
        assert_ne!(s.digest(Method::Vsm), other.digest(Method::Vsm));
        assert_eq!(s.digest(Method::Asags).len(), 16);
    }

    fn dataset(answers: &[(&str, f64)]) -> PreparedDataset {
        let d = Dataset {
            dataset_id: "d".into(),
            question: String::new(),
            note: None,
            scale: Default::default(),
            references: vec![ReferenceAnswer {
                id: "r".into(),
                text: "stack push pop top element".into(),
                weight: 1.0,
            }],
            answers: answers
                .iter()
                .enumerate()
                .map(|(i, (t, h))| StudentAnswer {
                    id: format!("a{i}"),
                    text: t.to_string(),
                    human_score: *h,
                })
                .collect(),
        };
        PreparedDataset::new(d, &StopList::english())
    }

    #[test]
    fn evaluation_rows() {
        let lex = Lexicons::empty();
        let s = EvalSettings::default();
        let p = dataset(&[
            ("stack push pop top element", 5.0),
            ("stack push", 3.0),
            ("banana", 0.0),
        ]);
        let row = evaluate(&p, Method::Asags, &s, &lex);
        assert_eq!(row.n_answers, 3);
        let m = &row.machine_scores;
        assert!(m[0] > m[1] && m[1] > m[2]);
        assert!(row.r.unwrap() > 0.0);
        assert_eq!(row, evaluate(&p, Method::Asags, &s, &lex));

        let vsm = evaluate(&p, Method::Vsm, &s, &lex);
        assert_eq!(vsm.r, None);
        assert!(vsm.not_evaluable.is_some());

        let constant = dataset(&[("banana", 5.0), ("apple", 3.0)]);
        let row = evaluate(&constant, Method::Keywords, &s, &lex);
        assert_eq!(row.r, None);
        assert_eq!(row.machine_scores, [0.0, 0.0]);
    }

    #[test]
    fn empty_answers_stay_in_the_vector() {
        let p = dataset(&[("stack push pop", 5.0), ("the of", 0.0), ("stack", 2.0)]);
        let row = evaluate(&p, Method::Asags, &EvalSettings::default(), &Lexicons::empty());
        assert_eq!(row.machine_scores.len(), 3);
        assert_eq!(row.machine_scores[1], 0.0);
    }
}

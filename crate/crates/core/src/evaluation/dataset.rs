use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scoring::{GradeScale, PreparedReference};
use crate::text::{preprocess, ProcessedText, StopList};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}: at `{field}`: {message}")]
    Schema {
        origin: String,
        field: String,
        message: String,
    },
    #[error("{origin}: {message}")]
    Invalid { origin: String, message: String },
    #[error("{origin}: {source}")]
    Csv { origin: String, source: csv::Error },
}

fn default_weight() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceAnswer {
    pub id: String,
    pub text: String,
    #[serde(default = "default_weight")]
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudentAnswer {
    pub id: String,
    pub text: String,
    pub human_score: f64,
}

/// One question with its references and human-scored student answers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub dataset_id: String,
    #[serde(default)]
    pub question: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default)]
    pub scale: GradeScale,
    pub references: Vec<ReferenceAnswer>,
    #[serde(default)]
    pub answers: Vec<StudentAnswer>,
}

impl Dataset {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, DatasetError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let dataset: Dataset = serde_path_to_error::deserialize(de).map_err(|e| DatasetError::Schema {
            origin: origin.to_string(),
            field: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        dataset.validate(origin)?;
        Ok(dataset)
    }

    pub fn validate(&self, origin: &str) -> Result<(), DatasetError> {
        let invalid = |message: String| DatasetError::Invalid {
            origin: origin.to_string(),
            message,
        };
        GradeScale::new(self.scale.min, self.scale.max).map_err(|e| invalid(e.to_string()))?;
        if self.references.is_empty() {
            return Err(invalid("at least one reference is required".into()));
        }
        if let Some(r) = self
            .references
            .iter()
            .find(|r| !(r.weight >= 0.0 && r.weight.is_finite()))
        {
            return Err(invalid(format!("reference `{}` has invalid weight {}", r.id, r.weight)));
        }
        let mut seen = HashSet::new();
        for a in &self.answers {
            if !seen.insert(a.id.as_str()) {
                return Err(invalid(format!("answer id `{}` is not unique", a.id)));
            }
            if !self.scale.contains(a.human_score) {
                return Err(invalid(format!(
                    "answer `{}` has human score {} outside the scale {}",
                    a.id, a.human_score, self.scale
                )));
            }
        }
        Ok(())
    }

    pub fn human_scores(&self) -> Vec<f64> {
        self.answers.iter().map(|a| a.human_score).collect()
    }
}

pub fn load_dataset(path: &Path) -> Result<Dataset, DatasetError> {
    let text = std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Dataset::from_json(&text, &path.display().to_string())
}

#[derive(Debug, Deserialize)]
struct BenchmarkRow {
    id: String,
    question: String,
    desired_answer: String,
    student_answer: String,
    score_avg: f64,
}

/// Reads the public short-answer benchmark's flat CSV layout: one row per
/// student answer with columns `id` (question id), `question`,
/// `desired_answer`, `student_answer` and `score_avg` (0 to 5). Rows are
/// grouped into one dataset per question id, ordered by id; the desired
/// answer becomes the single reference.
pub fn import_benchmark_csv(text: &str, origin: &str) -> Result<Vec<Dataset>, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut groups: BTreeMap<String, Dataset> = BTreeMap::new();
    for row in reader.deserialize() {
        let row: BenchmarkRow = row.map_err(|source| DatasetError::Csv {
            origin: origin.to_string(),
            source,
        })?;
        let ds = groups.entry(row.id.clone()).or_insert_with(|| Dataset {
            dataset_id: row.id.clone(),
            question: row.question.clone(),
            note: None,
            scale: GradeScale::default(),
            references: vec![ReferenceAnswer {
                id: format!("{}-ref", row.id),
                text: row.desired_answer.clone(),
                weight: 1.0,
            }],
            answers: Vec::new(),
        });
        let id = format!("{}-{}", row.id, ds.answers.len() + 1);
        ds.answers.push(StudentAnswer {
            id,
            text: row.student_answer,
            human_score: row.score_avg,
        });
    }
    let datasets: Vec<Dataset> = groups.into_values().collect();
    for d in &datasets {
        d.validate(&format!("{origin} question {}", d.dataset_id))?;
    }
    Ok(datasets)
}

pub fn load_benchmark_csv(path: &Path) -> Result<Vec<Dataset>, DatasetError> {
    let text = std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    import_benchmark_csv(&text, &path.display().to_string())
}

/// A dataset with every text preprocessed once.
#[derive(Debug, Clone)]
pub struct PreparedDataset {
    pub dataset: Dataset,
    pub references: Vec<PreparedReference>,
    pub answers: Vec<ProcessedText>,
}

impl PreparedDataset {
    pub fn new(dataset: Dataset, stoplist: &StopList) -> Self {
        let references = dataset
            .references
            .iter()
            .map(|r| PreparedReference {
                id: r.id.clone(),
                weight: r.weight,
                text: preprocess(&r.text, stoplist),
            })
            .collect();
        let answers = dataset.answers.iter().map(|a| preprocess(&a.text, stoplist)).collect();
        PreparedDataset {
            dataset,
            references,
            answers,
        }
    }

    pub fn reference_texts(&self) -> Vec<&ProcessedText> {
        self.references.iter().map(|r| &r.text).collect()
    }

    pub fn answer_texts(&self) -> Vec<&ProcessedText> {
        self.answers.iter().collect()
    }
}

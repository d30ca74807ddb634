use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("max_n must be between 1 and 4, got {0}")]
    MaxN(usize),
    #[error("expected {expected} n-gram weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("n-gram weights must be non-negative with a positive sum")]
    Weights,
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    Alpha(f64),
    #[error("gamma must lie in [0, 1], got {0}")]
    Gamma(f64),
    #[error("beta must be non-negative, got {0}")]
    Beta(f64),
    #[error("grade scale needs min < max, got {0}..{1}")]
    Scale(f64, f64),
    #[error("unknown {what} `{value}`")]
    Unknown { what: &'static str, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceCombination {
    /// Score of the best-matching reference.
    #[default]
    Best,
    /// Reference scores averaged with the references' weights.
    Average,
}

impl FromStr for ReferenceCombination {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "best" | "bestreference" | "best-reference" | "max" => Ok(ReferenceCombination::Best),
            "average" | "weightedaverage" | "weighted-average" | "mean" => Ok(ReferenceCombination::Average),
            other => Err(ConfigError::Unknown {
                what: "combination",
                value: other.into(),
            }),
        }
    }
}

impl fmt::Display for ReferenceCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceCombination::Best => "best",
            ReferenceCombination::Average => "average",
        })
    }
}

/// Which quantity a reference score reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScoreComponent {
    /// brevity x (1 - chunk penalty) x F_mean
    #[default]
    Full,
    Precision,
    Recall,
    FMean,
    /// (1 - chunk penalty) x F_mean
    PenalizedFMean,
    /// brevity x precision, the recall-free alternative
    BrevityPrecision,
}

impl ScoreComponent {
    pub const ALL: [ScoreComponent; 6] = [
        ScoreComponent::Full,
        ScoreComponent::Precision,
        ScoreComponent::Recall,
        ScoreComponent::FMean,
        ScoreComponent::PenalizedFMean,
        ScoreComponent::BrevityPrecision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScoreComponent::Full => "full",
            ScoreComponent::Precision => "precision",
            ScoreComponent::Recall => "recall",
            ScoreComponent::FMean => "f-mean",
            ScoreComponent::PenalizedFMean => "penalized-f-mean",
            ScoreComponent::BrevityPrecision => "brevity-precision",
        }
    }
}

impl FromStr for ScoreComponent {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or(ConfigError::Unknown {
                what: "score component",
                value: key,
            })
    }
}

impl fmt::Display for ScoreComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoringConfig {
    pub max_n: usize,
    /// One weight per n-gram order, summing to 1.
    pub ngram_weights: Vec<f64>,
    /// Precision weight in the F-mean; recall gets `1 - alpha`.
    pub alpha: f64,
    pub gamma: f64,
    pub beta: f64,
    pub use_brevity_penalty: bool,
    pub combination: ReferenceCombination,
    pub component: ScoreComponent,
}

pub const DEFAULT_MAX_N: usize = 3;

impl Default for ScoringConfig {
    fn default() -> Self {
        ScoringConfig {
            max_n: DEFAULT_MAX_N,
            ngram_weights: uniform_weights(DEFAULT_MAX_N),
            alpha: 0.1,
            gamma: 0.5,
            beta: 3.0,
            use_brevity_penalty: true,
            combination: ReferenceCombination::Best,
            component: ScoreComponent::Full,
        }
    }
}

pub fn uniform_weights(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

impl ScoringConfig {
    /// Same config with a different maximum order and uniform weights.
    pub fn with_max_n(&self, max_n: usize) -> Result<Self, ConfigError> {
        let cfg = ScoringConfig {
            max_n,
            ngram_weights: uniform_weights(max_n.max(1)),
            ..self.clone()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_component(&self, component: ScoreComponent) -> Self {
        ScoringConfig {
            component,
            ..self.clone()
        }
    }

    /// Replaces the weights, rescaling them to sum to one.
    pub fn set_weights(&mut self, weights: Vec<f64>) -> Result<(), ConfigError> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(ConfigError::Weights);
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(ConfigError::Weights);
        }
        self.ngram_weights = weights.into_iter().map(|w| w / sum).collect();
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(1..=4).contains(&self.max_n) {
            return Err(ConfigError::MaxN(self.max_n));
        }
        if self.ngram_weights.len() != self.max_n {
            return Err(ConfigError::WeightCount {
                expected: self.max_n,
                got: self.ngram_weights.len(),
            });
        }
        let sum: f64 = self.ngram_weights.iter().sum();
        if self.ngram_weights.iter().any(|w| !w.is_finite() || *w < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(ConfigError::Weights);
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ConfigError::Alpha(self.alpha));
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(ConfigError::Gamma(self.gamma));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(ConfigError::Beta(self.beta));
        }
        Ok(())
    }
}

/// The teacher's numeric grading scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradeScale {
    pub min: f64,
    pub max: f64,
}

impl Default for GradeScale {
    fn default() -> Self {
        GradeScale { min: 0.0, max: 5.0 }
    }
}

impl GradeScale {
    pub fn new(min: f64, max: f64) -> Result<Self, ConfigError> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(ConfigError::Scale(min, max));
        }
        Ok(GradeScale { min, max })
    }

    pub fn contains(&self, grade: f64) -> bool {
        (self.min..=self.max).contains(&grade)
    }
}

impl FromStr for GradeScale {
    type Err = ConfigError;

    /// `min-max` or `min:max`, e.g. `0-5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigError::Unknown {
            what: "grade scale",
            value: s.to_string(),
        };
        let s = s.trim();
        let (lo, hi) = s
            .split_once(':')
            .or_else(|| {
                let (i, _) = s.char_indices().skip(1).find(|(_, c)| *c == '-')?;
                Some((&s[..i], &s[i + 1..]))
            })
            .ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        GradeScale::new(lo, hi)
    }
}

impl fmt::Display for GradeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.min, self.max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = ScoringConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.max_n, 3);
        assert_eq!(cfg.alpha, 0.1);
        assert_eq!(cfg.gamma, 0.5);
        assert_eq!(cfg.beta, 3.0);
    }

    #[test]
    fn validation() {
        let cfg = ScoringConfig::default();
        assert_eq!(cfg.with_max_n(5), Err(ConfigError::MaxN(5)));
        assert_eq!(cfg.with_max_n(0), Err(ConfigError::MaxN(0)));
        assert_eq!(cfg.with_max_n(4).unwrap().ngram_weights, vec![0.25; 4]);
        let mut c = cfg.clone();
        c.set_weights(vec![2.0, 1.0, 1.0]).unwrap();
        assert_eq!(c.ngram_weights, vec![0.5, 0.25, 0.25]);
        assert_eq!(c.set_weights(vec![-1.0, 1.0, 1.0]), Err(ConfigError::Weights));
        c.alpha = 1.0;
        assert!(matches!(c.validate(), Err(ConfigError::Alpha(_))));
    }

    #[test]
    fn scale_parsing() {
        assert_eq!("0-5".parse::<GradeScale>().unwrap(), GradeScale::new(0.0, 5.0).unwrap());
        assert_eq!(
            "2:10".parse::<GradeScale>().unwrap(),
            GradeScale::new(2.0, 10.0).unwrap()
        );
        assert_eq!(
            "-1-1".parse::<GradeScale>().unwrap(),
            GradeScale::new(-1.0, 1.0).unwrap()
        );
        assert!("5-0".parse::<GradeScale>().is_err());
        assert!("five".parse::<GradeScale>().is_err());
    }

    #[test]
    fn names_parse_back() {
        for c in ScoreComponent::ALL {
            assert_eq!(c.name().parse::<ScoreComponent>().unwrap(), c);
        }
        assert_eq!(
            "Average".parse::<ReferenceCombination>().unwrap(),
            ReferenceCombination::Average
        );
    }
}

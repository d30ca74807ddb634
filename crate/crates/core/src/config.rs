//! Run configuration: scoring parameters, matcher stages, resource paths,
//! seed and output settings, read from a `key = value` file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::alignment::{StageList, StageParseError};
use crate::resources::ResourcePaths;
use crate::scoring::{ConfigError, ReferenceCombination, ScoreComponent, ScoringConfig};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error)]
pub enum RunConfigError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}:{line}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Scoring(#[from] ConfigError),
    #[error(transparent)]
    Stages(#[from] StageParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(ConfigError::Unknown {
                what: "output format",
                value: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scoring: ScoringConfig,
    pub stages: StageList,
    pub resources: ResourcePaths,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scoring: ScoringConfig::default(),
            stages: StageList::full(),
            resources: ResourcePaths::default(),
            seed: DEFAULT_SEED,
            out_dir: None,
            format: OutputFormat::Csv,
        }
    }
}

fn parse_bool(value: &str) -> Option<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Some(true),
        "false" | "no" | "off" | "0" => Some(false),
        _ => None,
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse()
        .map_err(|_| format!("`{key}` expects a number, got `{value}`"))
}

impl RunConfig {
    /// Parses a config file body. Blank lines and `#` comments are ignored;
    /// unknown keys are errors. Relative resource paths resolve against
    /// `base`.
    pub fn parse(text: &str, origin: &str, base: Option<&Path>) -> Result<Self, RunConfigError> {
        let mut cfg = RunConfig::default();
        let mut weights: Option<Vec<f64>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| RunConfigError::Syntax {
                origin: origin.to_string(),
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let path = |v: &str| {
                let p = PathBuf::from(v);
                match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p,
                }
            };
            match key {
                "max_n" => {
                    let n: usize = value
                        .parse()
                        .map_err(|_| syntax(format!("`max_n` expects an integer, got `{value}`")))?;
                    cfg.scoring = cfg.scoring.with_max_n(n)?;
                }
                "weights" => {
                    let parsed = value
                        .split(',')
                        .map(|w| parse_f64(key, w.trim()))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(syntax)?;
                    weights = Some(parsed);
                }
                "alpha" => cfg.scoring.alpha = parse_f64(key, value).map_err(syntax)?,
                "gamma" => cfg.scoring.gamma = parse_f64(key, value).map_err(syntax)?,
                "beta" => cfg.scoring.beta = parse_f64(key, value).map_err(syntax)?,
                "brevity" => {
                    cfg.scoring.use_brevity_penalty = parse_bool(value)
                        .ok_or_else(|| syntax(format!("`brevity` expects true or false, got `{value}`")))?
                }
                "combination" => cfg.scoring.combination = value.parse::<ReferenceCombination>()?,
                "component" => cfg.scoring.component = value.parse::<ScoreComponent>()?,
                "stages" => cfg.stages = value.parse()?,
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| syntax(format!("`seed` expects an integer, got `{value}`")))?
                }
                "out" => cfg.out_dir = Some(path(value)),
                "format" => cfg.format = value.parse()?,
                "resources" => cfg.resources.dir = Some(path(value)),
                "stoplist" => cfg.resources.stoplist = Some(path(value)),
                "synonyms" => cfg.resources.synonyms = Some(path(value)),
                "derivations" => cfg.resources.derivations = Some(path(value)),
                "gazetteer" => cfg.resources.gazetteer = Some(path(value)),
                _ => return Err(syntax(format!("unknown key `{key}`"))),
            }
        }
        if let Some(w) = weights {
            if w.len() != cfg.scoring.max_n {
                return Err(ConfigError::WeightCount {
                    expected: cfg.scoring.max_n,
                    got: w.len(),
                }
                .into());
            }
            cfg.scoring.set_weights(w)?;
        }
        cfg.scoring.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, RunConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| RunConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string(), path.parent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::MatcherStage;

    #[test]
    fn defaults() {
        let cfg = RunConfig::parse("", "t", None).unwrap();
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.scoring, ScoringConfig::default());
        assert_eq!(cfg.stages, StageList::full());
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn full_file() {
        let text = "\
# comment
max_n = 2
weights = 3, 1
alpha = 0.2
brevity = off
combination = average
stages = exact, stem
seed = 7
synonyms = lex/syn.tsv   # trailing comment
format = json
";
        let cfg = RunConfig::parse(text, "t", Some(Path::new("/base"))).unwrap();
        assert_eq!(cfg.scoring.max_n, 2);
        assert_eq!(cfg.scoring.ngram_weights, [0.75, 0.25]);
        assert_eq!(cfg.scoring.alpha, 0.2);
        assert!(!cfg.scoring.use_brevity_penalty);
        assert_eq!(cfg.scoring.combination, ReferenceCombination::Average);
        assert_eq!(cfg.stages.stages(), [MatcherStage::Exact, MatcherStage::Stem]);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.resources.synonyms, Some(PathBuf::from("/base/lex/syn.tsv")));
        assert_eq!(cfg.format, OutputFormat::Json);
    }

    #[test]
    fn rejections() {
        for bad in [
            "colour = blue",
            "alpha",
            "alpha = x",
            "alpha = 1.5",
            "gamma = 2",
            "max_n = 9",
            "weights = 1, 1",
            "stages = exact, exact",
            "combination = median",
            "brevity = maybe",
        ] {
            assert!(RunConfig::parse(bad, "t", None).is_err(), "{bad}");
        }
        let err = RunConfig::parse("\n\nfoo = 1", "run.conf", None).unwrap_err();
        assert_eq!(err.to_string(), "run.conf:3: unknown key `foo`");
    }
}

use std::path::PathBuf;

use asags_core::alignment::StageList;
use asags_core::config::{OutputFormat, RunConfig, RunConfigError};
use asags_core::evaluation::Method;
use asags_core::scoring::{GradeScale, ReferenceCombination, ScoreComponent};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "asags",
    version,
    about = "Grade short free-text answers against reference answers",
    propagate_version = true
)]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand. Flags override the config file.
#[derive(Debug, Args)]
pub struct Options {
    /// `key = value` run configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Scorer: asags, erb, keywords or vsm
    #[arg(long, global = true)]
    pub method: Option<Method>,
    /// Matcher stages, e.g. `exact,stem,heuristic(synonym,acronym)`
    #[arg(long, global = true)]
    pub stages: Option<StageList>,
    /// Largest n-gram order, 1 to 4
    #[arg(long = "max-n", global = true)]
    pub max_n: Option<usize>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// best or average
    #[arg(long, global = true)]
    pub combination: Option<ReferenceCombination>,
    /// Score component used as the grade (full, precision, recall, ...)
    #[arg(long, global = true)]
    pub component: Option<ScoreComponent>,
    /// Grade scale such as `0-5` or `2:10`
    #[arg(long, global = true)]
    pub scale: Option<GradeScale>,
    /// Seed for the fold assignment of the vsm baseline
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory (or file, for import-wordnet); stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
    /// Directory holding stopwords.txt, synonyms.tsv, derivations.tsv and gazetteer.csv
    #[arg(long, global = true, env = "ASAGS_RESOURCES")]
    pub resources: Option<PathBuf>,
    #[arg(long, global = true)]
    pub stoplist: Option<PathBuf>,
    #[arg(long, global = true)]
    pub synonyms: Option<PathBuf>,
    #[arg(long, global = true)]
    pub derivations: Option<PathBuf>,
    #[arg(long, global = true)]
    pub gazetteer: Option<PathBuf>,
}

impl Options {
    pub fn run_config(&self) -> Result<RunConfig, RunConfigError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(n) = self.max_n {
            cfg.scoring = cfg.scoring.with_max_n(n)?;
        }
        if let Some(v) = self.alpha {
            cfg.scoring.alpha = v;
        }
        if let Some(v) = self.gamma {
            cfg.scoring.gamma = v;
        }
        if let Some(v) = self.beta {
            cfg.scoring.beta = v;
        }
        if let Some(v) = self.combination {
            cfg.scoring.combination = v;
        }
        if let Some(v) = self.component {
            cfg.scoring.component = v;
        }
        if let Some(v) = &self.stages {
            cfg.stages = v.clone();
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.out {
            cfg.out_dir = Some(v.clone());
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        let r = &mut cfg.resources;
        for (flag, slot) in [
            (&self.resources, &mut r.dir),
            (&self.stoplist, &mut r.stoplist),
            (&self.synonyms, &mut r.synonyms),
            (&self.derivations, &mut r.derivations),
            (&self.gazetteer, &mut r.gazetteer),
        ] {
            if flag.is_some() {
                *slot = flag.clone();
            }
        }
        cfg.scoring.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grade one student answer and list matched and missing content
    Grade(GradeArgs),
    /// Correlate machine grades with human scores on one or more datasets
    Evaluate(DataArgs),
    /// Run one of the experiments and write its table or curve
    Experiment {
        #[arg(value_enum)]
        name: Experiment,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Convert WordNet data.* files into the flat synonym format
    ImportWordnet {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GradeArgs {
    /// Dataset file whose references (and scale) are used
    #[arg(long, conflicts_with = "reference")]
    pub dataset: Option<PathBuf>,
    /// Reference answer text; repeat for several references
    #[arg(long, required_unless_present = "dataset")]
    pub reference: Vec<String>,
    /// Student answer text
    #[arg(long, conflicts_with = "answer_file", required_unless_present = "answer_file")]
    pub answer: Option<String>,
    /// File holding the student answer
    #[arg(long)]
    pub answer_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Dataset files: JSON documents, or `.csv` files in the benchmark layout.
    /// The bundled fixtures are used when none are given (experiments only).
    pub datasets: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Correlation for maximum n-gram order 1 to 4 (fig2)
    Sweep,
    /// Precision, recall, F-mean and penalized F-mean alone (fig3)
    Metrics,
    /// Four matcher stage sets (table1)
    Ablation,
    /// All four scorers per dataset (table2)
    Compare,
}

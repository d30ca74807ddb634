use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use asags_core::config::{OutputFormat, RunConfig};
use asags_core::evaluation::{
    self, evaluate, fig2_csv, fig3_csv, format_r, mean_defined, method_comparison, metric_comparison,
    module_ordering_experiment, ngram_sweep, rows_csv, table1_csv, table2_csv, AblationRow, Dataset, EvalSettings,
    Method, MetricPoint, PreparedDataset, SweepPoint,
};
use asags_core::fixtures;
use asags_core::lexicon::{import_wordnet_data, SynonymLexicon};
use asags_core::scoring::{feedback, round_half_up, score_answer, GradeScale, PreparedReference};
use asags_core::text::preprocess;
use asags_core::Resources;
use serde_json::json;

use crate::options::{Cli, Command, DataArgs, Experiment, GradeArgs};
use crate::{CmdResult, Failure};

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn data(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Data(e.into())
}

pub fn run(cli: Cli) -> CmdResult {
    let cfg = cli.options.run_config().map_err(usage)?;
    let method = cli.options.method.unwrap_or(Method::Asags);
    match cli.command {
        Command::ImportWordnet { files } => import_wordnet(&files, cfg.out_dir.as_deref()),
        Command::Grade(args) => {
            if method != Method::Asags {
                return Err(usage(anyhow!("grade supports only the asags method")));
            }
            let resources = Resources::load(&cfg.resources).map_err(usage)?;
            grade(&args, &cfg, cli.options.scale, &resources)
        }
        Command::Evaluate(args) => {
            let resources = Resources::load(&cfg.resources).map_err(usage)?;
            evaluate_cmd(&args, method, &cfg, &resources)
        }
        Command::Experiment { name, data } => {
            let resources = Resources::load(&cfg.resources).map_err(usage)?;
            experiment(name, &data, &cfg, &resources)
        }
    }
}

/// Writes `content` to `dir/name`, or to stdout without a directory.
fn emit(dir: Option<&Path>, name: &str, content: &str) -> CmdResult {
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)
                .with_context(|| format!("cannot create {}", dir.display()))
                .map_err(usage)?;
            let path = dir.join(name);
            fs::write(&path, content)
                .with_context(|| format!("cannot write {}", path.display()))
                .map_err(usage)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

fn import_wordnet(files: &[PathBuf], out: Option<&Path>) -> CmdResult {
    let mut synsets = Vec::new();
    for f in files {
        let text = fs::read_to_string(f)
            .with_context(|| format!("cannot read {}", f.display()))
            .map_err(data)?;
        synsets.extend(import_wordnet_data(&text, &f.display().to_string()).map_err(data)?);
    }
    let lexicon = SynonymLexicon::from_synsets(synsets).map_err(|e| data(anyhow!(e)))?;
    let flat = lexicon.to_flat();
    match out {
        Some(path) => {
            fs::write(path, flat)
                .with_context(|| format!("cannot write {}", path.display()))
                .map_err(usage)?;
            eprintln!("wrote {} synsets to {}", lexicon.synsets().len(), path.display());
        }
        None => print!("{flat}"),
    }
    Ok(())
}

fn grade(args: &GradeArgs, cfg: &RunConfig, scale: Option<GradeScale>, resources: &Resources) -> CmdResult {
    let (texts, scale) = match &args.dataset {
        Some(path) => {
            let ds = evaluation::load_dataset(path).map_err(data)?;
            let refs: Vec<(String, String, f64)> =
                ds.references.into_iter().map(|r| (r.id, r.text, r.weight)).collect();
            (refs, scale.unwrap_or(ds.scale))
        }
        None => {
            let refs = args
                .reference
                .iter()
                .enumerate()
                .map(|(i, t)| (format!("ref-{}", i + 1), t.clone(), 1.0))
                .collect();
            (refs, scale.unwrap_or_default())
        }
    };
    let references: Vec<PreparedReference> = texts
        .into_iter()
        .map(|(id, text, weight)| PreparedReference {
            id,
            weight,
            text: preprocess(&text, &resources.stoplist),
        })
        .collect();
    let answer = match (&args.answer, &args.answer_file) {
        (Some(a), _) => a.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))
            .map_err(data)?,
        (None, None) => unreachable!("clap requires an answer"),
    };
    let student = preprocess(&answer, &resources.stoplist);
    if student.is_empty() {
        eprintln!("warning: the answer has no content words; it receives the scale minimum");
    }
    let scored = score_answer(&student, &references, &cfg.scoring, &cfg.stages, &resources.lexicons).map_err(data)?;
    let fb = feedback(&scored, &student, &references, &scale);
    let grade = round_half_up(fb.grade, 2);
    let text = match cfg.format {
        OutputFormat::Json => to_json(&json!({
            "grade": grade,
            "scale": scale,
            "score": scored.breakdown.combined_score,
            "reference_id": fb.reference_id,
            "matched": fb.matched_content,
            "missing": fb.unmatched_reference_content,
            "breakdown": scored.breakdown,
        })),
        OutputFormat::Csv => format!(
            "grade: {grade:.2} on {scale}\nreference: {}\nmatched: {}\nmissing: {}\n",
            fb.reference_id,
            fb.matched_content.join(" "),
            fb.unmatched_reference_content.join(" ")
        ),
    };
    print!("{text}");
    Ok(())
}

struct Loaded {
    datasets: Vec<PreparedDataset>,
    errors: Vec<String>,
}

fn load_datasets(args: &DataArgs, resources: &Resources, fallback_to_fixtures: bool) -> Loaded {
    let mut raw: Vec<Dataset> = Vec::new();
    let mut errors = Vec::new();
    if args.datasets.is_empty() && fallback_to_fixtures {
        raw = fixtures::datasets();
    }
    for path in &args.datasets {
        let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        let loaded = if is_csv {
            evaluation::load_benchmark_csv(path)
        } else {
            evaluation::load_dataset(path).map(|d| vec![d])
        };
        match loaded {
            Ok(sets) => raw.extend(sets),
            Err(e) => errors.push(e.to_string()),
        }
    }
    Loaded {
        datasets: raw
            .into_iter()
            .map(|d| PreparedDataset::new(d, &resources.stoplist))
            .collect(),
        errors,
    }
}

fn report_errors(errors: &[String]) {
    for e in errors {
        eprintln!("error: {e}");
    }
}

fn evaluate_cmd(args: &DataArgs, method: Method, cfg: &RunConfig, resources: &Resources) -> CmdResult {
    if args.datasets.is_empty() {
        return Err(usage(anyhow!("evaluate needs at least one dataset file")));
    }
    let loaded = load_datasets(args, resources, false);
    report_errors(&loaded.errors);
    if loaded.datasets.is_empty() {
        return Err(data(anyhow!("no dataset could be loaded")));
    }
    let settings = EvalSettings::from(cfg);
    let rows: Vec<_> = loaded
        .datasets
        .iter()
        .map(|p| evaluate(p, method, &settings, &resources.lexicons))
        .collect();
    let (name, content) = match cfg.format {
        OutputFormat::Csv => {
            let mut s = rows_csv(&rows);
            for e in &loaded.errors {
                s.push_str(&format!("# error: {}\n", e.replace('\n', " ")));
            }
            ("report.csv", s)
        }
        OutputFormat::Json => (
            "report.json",
            to_json(&json!({ "rows": rows, "errors": loaded.errors })),
        ),
    };
    if cfg.out_dir.is_some() {
        for r in &rows {
            println!("{}\t{}\t{}", r.dataset_id, r.method, format_r(r.r));
        }
    }
    emit(cfg.out_dir.as_deref(), name, &content)
}

/// Mean over datasets of each position's correlation.
fn averaged<T: Clone>(
    per_dataset: &[Vec<T>],
    r: impl Fn(&T) -> Option<f64>,
    set: impl Fn(&mut T, Option<f64>),
) -> Vec<T> {
    let Some(first) = per_dataset.first() else {
        return Vec::new();
    };
    first
        .iter()
        .enumerate()
        .map(|(i, template)| {
            let mut t = template.clone();
            set(&mut t, mean_defined(per_dataset.iter().map(|d| r(&d[i]))));
            t
        })
        .collect()
}

fn experiment(name: Experiment, args: &DataArgs, cfg: &RunConfig, resources: &Resources) -> CmdResult {
    let loaded = load_datasets(args, resources, true);
    report_errors(&loaded.errors);
    if loaded.datasets.is_empty() {
        return Err(data(anyhow!("no dataset could be loaded")));
    }
    let settings = EvalSettings::from(cfg);
    let lex = &resources.lexicons;
    let sets = &loaded.datasets;
    let ids: Vec<&str> = sets.iter().map(|p| p.dataset.dataset_id.as_str()).collect();
    let json = cfg.format == OutputFormat::Json;
    let (stem, content) = match name {
        Experiment::Sweep => {
            let curves = sets
                .iter()
                .map(|p| ngram_sweep(p, &settings, lex))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let avg = averaged(&curves, |p: &SweepPoint| p.r, |p, r| p.r = r);
            let content = if json {
                to_json(&json!({ "experiment": "sweep", "datasets": ids, "per_dataset": curves, "average": avg }))
            } else {
                fig2_csv(&avg)
            };
            ("fig2", content)
        }
        Experiment::Metrics => {
            let points: Vec<Vec<MetricPoint>> = sets.iter().map(|p| metric_comparison(p, &settings, lex)).collect();
            let avg = averaged(&points, |p: &MetricPoint| p.r, |p, r| p.r = r);
            let content = if json {
                to_json(&json!({ "experiment": "metrics", "datasets": ids, "per_dataset": points, "average": avg }))
            } else {
                fig3_csv(&avg)
            };
            ("fig3", content)
        }
        Experiment::Ablation => {
            let tables: Vec<Vec<AblationRow>> = sets
                .iter()
                .map(|p| module_ordering_experiment(p, &settings, lex))
                .collect();
            let avg = averaged(&tables, |r: &AblationRow| r.r, |row, r| row.r = r);
            let content = if json {
                to_json(&json!({ "experiment": "ablation", "datasets": ids, "per_dataset": tables, "average": avg }))
            } else {
                table1_csv(&avg)
            };
            ("table1", content)
        }
        Experiment::Compare => {
            let matrix = method_comparison(sets, &settings, lex);
            let content = if json {
                to_json(&json!({ "experiment": "compare", "matrix": matrix }))
            } else {
                table2_csv(&matrix)
            };
            ("table2", content)
        }
    };
    let file = format!("{stem}.{}", if json { "json" } else { "csv" });
    emit(cfg.out_dir.as_deref(), &file, &content)
}

//! Generators and invariant checks shared by the property tests and the
//! acceptance runner.

use std::collections::HashMap;
use std::sync::OnceLock;

use asags_core::alignment::{align, HeuristicRule, MatchKind, MatcherStage, StageList};
use asags_core::baselines::{cosine, erb_score, fit_tfidf, keyword_score, vsm_score, FoldPlan};
use asags_core::evaluation::pearson;
use asags_core::lexicon::{DerivationTable, Gazetteer, Lexicons, SynonymLexicon};
use asags_core::scoring::{
    score_against_reference, score_answer, to_grade, GradeScale, PreparedReference, ReferenceCombination,
    ScoreComponent, ScoringConfig,
};
use asags_core::text::{preprocess, ProcessedText, StopList, TokenKind};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

/// Small vocabulary dense in stems, synonyms, derivations, numbers,
/// acronyms and place names so random answers hit every matcher rule.
pub const WORDS: &[&str] = &[
    "run",
    "runs",
    "running",
    "execute",
    "executes",
    "execution",
    "start",
    "begin",
    "began",
    "destroy",
    "destruction",
    "ruin",
    "CPU",
    "central",
    "processing",
    "unit",
    "India",
    "Indian",
    "Bharat",
    "two",
    "2",
    "second",
    "2nd",
    "the",
    "of",
    "a",
    ",",
    ".",
];

pub fn lexicons() -> &'static Lexicons {
    static LEX: OnceLock<Lexicons> = OnceLock::new();
    LEX.get_or_init(|| Lexicons {
        synonyms: SynonymLexicon::parse("v\ts1\tbegin,start\nv\ts2\texecute,run\nv\ts3\tdestroy,ruin\n", "props")
            .unwrap(),
        derivations: DerivationTable::parse("execution\texecute\ndestruction\tdestroy\n", "props").unwrap(),
        gazetteer: Gazetteer::parse("india,bharat,indian,indians\n", "props").unwrap(),
    })
}

pub fn stoplist() -> &'static StopList {
    static STOP: OnceLock<StopList> = OnceLock::new();
    STOP.get_or_init(StopList::english)
}

pub fn process(raw: &str) -> ProcessedText {
    preprocess(raw, stoplist())
}

pub fn text(max_words: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS), 0..=max_words).prop_map(|w| w.join(" "))
}

pub fn non_empty_text(max_words: usize) -> impl Strategy<Value = String> {
    text(max_words).prop_filter("needs content", |t| !process(t).is_empty())
}

fn rules() -> impl Strategy<Value = Vec<HeuristicRule>> {
    Just(HeuristicRule::DEFAULT_ORDER.to_vec())
        .prop_shuffle()
        .prop_flat_map(|all| (1..=all.len()).prop_map(move |k| all[..k].to_vec()))
}

/// Any valid stage list: a non-empty ordered subset of the three kinds.
pub fn stage_list() -> impl Strategy<Value = StageList> {
    (rules(), Just(vec![0u8, 1, 2]).prop_shuffle(), 1usize..=3).prop_map(|(rules, order, k)| {
        let stages = order[..k]
            .iter()
            .map(|kind| match kind {
                0 => MatcherStage::Exact,
                1 => MatcherStage::Stem,
                _ => MatcherStage::Heuristic(rules.clone()),
            })
            .collect();
        StageList::new(stages).unwrap()
    })
}

fn covered_once(len: usize, spans: impl Iterator<Item = std::ops::Range<usize>>) -> bool {
    let mut seen = vec![false; len];
    for span in spans {
        for i in span {
            if i >= len || seen[i] {
                return false;
            }
            seen[i] = true;
        }
    }
    true
}

/// No position is used twice after any prefix of the stages; spans and
/// chunk counts have the documented shape.
pub fn alignment_one_to_one((student, reference, stages): (String, String, StageList)) -> Check {
    let (s, r) = (process(&student), process(&reference));
    let all = stages.stages();
    for k in 1..=all.len() {
        let prefix = StageList::new(all[..k].to_vec()).unwrap();
        let a = align(&s, &r, &prefix, lexicons());
        prop_assert!(covered_once(s.len(), a.pairs.iter().map(|p| p.student.clone())));
        prop_assert!(covered_once(r.len(), a.pairs.iter().map(|p| p.reference.clone())));
        for p in &a.pairs {
            let (sl, rl) = (p.student.len(), p.reference.len());
            if matches!(p.kind, MatchKind::Heuristic(HeuristicRule::Acronym)) {
                prop_assert!((sl == 1) != (rl == 1) && sl.max(rl) >= 2);
            } else {
                prop_assert!(sl == 1 && rl == 1);
            }
        }
        let acronyms = a.pairs.iter().any(|p| p.student.len() != p.reference.len());
        if !acronyms {
            prop_assert!(a.matched_count() <= s.len().min(r.len()));
        }
        if a.pairs.is_empty() {
            prop_assert_eq!(a.chunk_count, 0);
        } else {
            prop_assert!(a.chunk_count >= 1 && a.chunk_count <= a.pairs.len());
        }
    }
    Ok(())
}

fn unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

#[derive(Debug, Clone)]
pub struct ScoreCase {
    pub student: String,
    pub references: Vec<(String, f64)>,
    pub stages: StageList,
    pub config: ScoringConfig,
    pub scale: (f64, f64),
}

pub fn score_case() -> impl Strategy<Value = ScoreCase> {
    (
        text(9),
        prop::collection::vec((non_empty_text(9), 0.0f64..5.0), 1..=3),
        stage_list(),
        (
            1usize..=4,
            0.01f64..0.99,
            0.0f64..=1.0,
            0.0f64..6.0,
            any::<bool>(),
            any::<bool>(),
        ),
        prop::sample::select(ScoreComponent::ALL.to_vec()),
        (-10.0f64..10.0, 0.5f64..20.0),
    )
        .prop_map(|(student, references, stages, knobs, component, (min, width))| {
            let (max_n, alpha, gamma, beta, brevity, average) = knobs;
            let mut config = ScoringConfig::default().with_max_n(max_n).unwrap();
            config.alpha = alpha;
            config.gamma = gamma;
            config.beta = beta;
            config.use_brevity_penalty = brevity;
            config.component = component;
            config.combination = if average {
                ReferenceCombination::Average
            } else {
                ReferenceCombination::Best
            };
            ScoreCase {
                student,
                references,
                stages,
                config,
                scale: (min, min + width),
            }
        })
}

/// Every breakdown component and the combined score lie in [0,1]; grades
/// lie on the scale.
pub fn scores_in_unit_interval(case: ScoreCase) -> Check {
    let student = process(&case.student);
    let mut references: Vec<PreparedReference> = case
        .references
        .iter()
        .enumerate()
        .map(|(i, (t, w))| PreparedReference {
            id: format!("r{i}"),
            weight: *w,
            text: process(t),
        })
        .collect();
    if references.iter().all(|r| r.weight == 0.0) {
        references[0].weight = 1.0;
    }
    let scored = score_answer(&student, &references, &case.config, &case.stages, lexicons())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = &scored.breakdown;
    prop_assert!(unit(b.combined_score), "combined {}", b.combined_score);
    for r in &b.per_reference {
        for p in r.precisions.iter().flatten() {
            prop_assert!(unit(*p));
        }
        for v in [
            r.precision,
            r.recall,
            r.f_mean,
            r.chunk_penalty,
            r.brevity_penalty,
            r.score,
        ] {
            prop_assert!(unit(v), "component {v} out of range in {r:?}");
        }
    }
    let scale = GradeScale::new(case.scale.0, case.scale.1).unwrap();
    let grade = to_grade(b.combined_score, &scale);
    prop_assert!(grade >= scale.min && grade <= scale.max);
    Ok(())
}

/// Appending a stage never lowers the matched count or the recall.
pub fn stage_monotonicity((student, reference, stages, extra): (String, String, StageList, usize)) -> Check {
    let (s, r) = (process(&student), process(&reference));
    let kinds = [MatcherStage::Exact, MatcherStage::Stem, MatcherStage::heuristic()];
    let present = |k: &MatcherStage| {
        stages
            .stages()
            .iter()
            .any(|s| std::mem::discriminant(s) == std::mem::discriminant(k))
    };
    let Some(added) = kinds.iter().cycle().skip(extra).take(3).find(|k| !present(k)) else {
        return Ok(());
    };
    let mut longer = stages.stages().to_vec();
    longer.push(added.clone());
    let longer = StageList::new(longer).unwrap();
    let before = align(&s, &r, &stages, lexicons());
    let after = align(&s, &r, &longer, lexicons());
    prop_assert!(after.matched_count() >= before.matched_count());
    prop_assert!(after.matched_reference_count() >= before.matched_reference_count());
    for p in &before.pairs {
        prop_assert!(after.pairs.contains(p));
    }
    Ok(())
}

/// Term weights of two vectors, a scale factor, a student answer and a
/// training set.
pub type CosineCase = (Vec<(u8, f64, f64)>, f64, String, Vec<String>);

/// Scaling either vector by a positive factor leaves the cosine unchanged,
/// and so does repeating the student answer in the vector-space baseline.
pub fn cosine_scale_invariance((terms, factor, student, training): CosineCase) -> Check {
    let a: HashMap<String, f64> = terms.iter().map(|(t, x, _)| (format!("t{t}"), *x)).collect();
    let b: HashMap<String, f64> = terms.iter().map(|(t, _, y)| (format!("t{t}"), *y)).collect();
    let scaled: HashMap<String, f64> = a.iter().map(|(k, v)| (k.clone(), v * factor)).collect();
    prop_assert!((cosine(&a, &b) - cosine(&scaled, &b)).abs() < 1e-12);
    prop_assert!((cosine(&a, &b) - cosine(&b, &a)).abs() < 1e-12);

    let train: Vec<ProcessedText> = training.iter().map(|t| process(t)).collect();
    let train_refs: Vec<&ProcessedText> = train.iter().collect();
    let Ok(model) = fit_tfidf(&train_refs) else {
        return Ok(());
    };
    let reference = process("the CPU executes the execution of a second unit");
    let once = process(&student);
    let twice = process(&format!("{student} {student}"));
    let (x, y) = (
        vsm_score(&once, &[&reference], &model),
        vsm_score(&twice, &[&reference], &model),
    );
    prop_assert!((x - y).abs() < 1e-12, "{x} vs {y}");
    Ok(())
}

/// Lexicon relations do not depend on argument order.
pub fn symmetric_lexicon_queries((a, b): (String, String)) -> Check {
    let lex = lexicons();
    let (a, b) = (a.to_lowercase(), b.to_lowercase());
    prop_assert_eq!(lex.synonyms.share_synset(&a, &b), lex.synonyms.share_synset(&b, &a));
    prop_assert_eq!(
        lex.synonyms.shared_synset_by_stem(&a, &b).map(|s| &s.id),
        lex.synonyms.shared_synset_by_stem(&b, &a).map(|s| &s.id)
    );
    prop_assert_eq!(lex.gazetteer.related(&a, &b), lex.gazetteer.related(&b, &a));
    Ok(())
}

pub fn lemma_pair() -> impl Strategy<Value = (String, String)> {
    let pool = prop::sample::select(
        [
            "begin", "start", "started", "execute", "run", "runs", "destroy", "ruin", "india", "bharat", "indian",
            "indians", "unit", "cpu", "",
        ]
        .to_vec(),
    );
    (pool.clone(), pool).prop_map(|(a, b)| (a.to_string(), b.to_string()))
}

/// A text scores 1 against itself under plain BLEU and nothing scores
/// above 1.
pub fn erb_identity((t, other, n): (String, String, usize)) -> Check {
    let t = process(&t);
    let o = process(&other);
    prop_assert!((erb_score(&t, &[&t], n) - 1.0).abs() < 1e-12);
    let v = erb_score(&o, &[&t], n);
    prop_assert!(unit(v));
    Ok(())
}

/// Repeating the student answer does not change the keyword score.
pub fn keyword_duplication((student, reference): (String, String)) -> Check {
    let r = process(&reference);
    let once = process(&student);
    let twice = process(&format!("{student} {student}"));
    prop_assert_eq!(
        keyword_score(&once, &[&r]).unwrap(),
        keyword_score(&twice, &[&r]).unwrap()
    );
    Ok(())
}

/// Symmetry, and invariance under positive affine maps of either side.
pub fn pearson_symmetry_affine((pairs, a, b): (Vec<(f64, f64)>, f64, f64)) -> Check {
    let x: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let r = pearson(&x, &y);
    let back = pearson(&y, &x);
    prop_assert_eq!(r.is_some(), back.is_some());
    let Some(r) = r else {
        return Ok(());
    };
    prop_assert!((r - back.unwrap()).abs() < 1e-12);
    prop_assert!((-1.0..=1.0).contains(&r));
    let mapped: Vec<f64> = x.iter().map(|v| a * v + b).collect();
    if let Some(m) = pearson(&mapped, &y) {
        prop_assert!((m - r).abs() < 1e-9, "{m} vs {r}");
    }
    Ok(())
}

pub fn pearson_case() -> impl Strategy<Value = (Vec<(f64, f64)>, f64, f64)> {
    (
        prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 2..60),
        0.01f64..100.0,
        -50.0f64..50.0,
    )
}

/// Under exact matching and the default configuration, the reference
/// graded against itself is never beaten by another answer.
pub fn self_grading_maximal((reference, student): (String, String)) -> Check {
    let r = process(&reference);
    let s = process(&student);
    let cfg = ScoringConfig::default();
    let exact = StageList::exact();
    let (own, _) = score_against_reference(&r, &r, "r", &cfg, &exact, lexicons()).unwrap();
    let (other, _) = score_against_reference(&s, &r, "r", &cfg, &exact, lexicons()).unwrap();
    prop_assert!(own.score >= other.score, "{} < {}", own.score, other.score);
    Ok(())
}

/// Fold plans partition the items into near-equal folds and depend only on
/// the seed.
pub fn fold_plan_partition((items, k, seed): (usize, usize, u64)) -> Check {
    let plan = FoldPlan::new(items, k, seed);
    prop_assert_eq!(plan.folds.len(), items);
    prop_assert!(plan.folds.iter().all(|&f| f < k));
    let sizes = plan.sizes();
    prop_assert_eq!(sizes.iter().sum::<usize>(), items);
    prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    prop_assert_eq!(plan, FoldPlan::new(items, k, seed));
    Ok(())
}

/// Token fields and the content subsequence keep their documented shape
/// for arbitrary input text.
pub fn token_invariants(raw: String) -> Check {
    let p = process(&raw);
    for (i, t) in p.all_tokens.iter().enumerate() {
        prop_assert_eq!(t.position, i);
        prop_assert_eq!(&t.normalized, &t.surface.to_lowercase());
        prop_assert!(!t.normalized.is_empty());
        match t.kind {
            TokenKind::Word => prop_assert!(!t.stem.is_empty()),
            _ => prop_assert_eq!(&t.stem, &t.normalized),
        }
        if i > 0 {
            prop_assert!(t.sentence_index >= p.all_tokens[i - 1].sentence_index);
        }
    }
    let expected: Vec<_> = p
        .all_tokens
        .iter()
        .filter(|t| !t.is_stopword && t.kind != TokenKind::Punctuation)
        .collect();
    prop_assert_eq!(expected, p.content_tokens.iter().collect::<Vec<_>>());
    if raw.trim().is_empty() {
        prop_assert_eq!(p.sentence_count, 0);
    }
    Ok(())
}

pub fn raw_text() -> impl Strategy<Value = String> {
    prop_oneof!["[ -~]{0,60}", "[a-zA-Z0-9 .,!?'’-]{0,60}", "\\PC{0,30}", text(12),]
}

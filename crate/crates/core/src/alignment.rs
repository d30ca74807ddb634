//! One-to-one unigram alignment between a student answer and a reference.
//!
//! Matcher stages run in the configured order and only ever look at content
//! positions that earlier stages left unmatched. Within a stage the student
//! side is scanned left to right and each student token takes the leftmost
//! compatible unmatched reference token.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::lexicon::{acronym_matches, is_acronym, numeric_value, Lexicons};
use crate::text::{ProcessedText, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeuristicRule {
    Synonym,
    Numeric,
    Acronym,
    Derivational,
    Gazetteer,
}

impl HeuristicRule {
    pub const DEFAULT_ORDER: [HeuristicRule; 5] = [
        HeuristicRule::Synonym,
        HeuristicRule::Numeric,
        HeuristicRule::Acronym,
        HeuristicRule::Derivational,
        HeuristicRule::Gazetteer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HeuristicRule::Synonym => "synonym",
            HeuristicRule::Numeric => "numeric",
            HeuristicRule::Acronym => "acronym",
            HeuristicRule::Derivational => "derivational",
            HeuristicRule::Gazetteer => "gazetteer",
        }
    }
}

impl FromStr for HeuristicRule {
    type Err = StageParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "synonym" | "synonyms" => Ok(HeuristicRule::Synonym),
            "numeric" | "number" => Ok(HeuristicRule::Numeric),
            "acronym" | "acronyms" => Ok(HeuristicRule::Acronym),
            "derivational" | "derivation" => Ok(HeuristicRule::Derivational),
            "gazetteer" | "demonym" | "place" => Ok(HeuristicRule::Gazetteer),
            other => Err(StageParseError::UnknownRule(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatcherStage {
    Exact,
    Stem,
    Heuristic(Vec<HeuristicRule>),
}

impl MatcherStage {
    pub fn heuristic() -> Self {
        MatcherStage::Heuristic(HeuristicRule::DEFAULT_ORDER.to_vec())
    }

    fn kind_name(&self) -> &'static str {
        match self {
            MatcherStage::Exact => "exact",
            MatcherStage::Stem => "stem",
            MatcherStage::Heuristic(_) => "heuristic",
        }
    }
}

impl fmt::Display for MatcherStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatcherStage::Heuristic(rules) => {
                let names: Vec<&str> = rules.iter().map(|r| r.name()).collect();
                write!(f, "heuristic({})", names.join(","))
            }
            other => f.write_str(other.kind_name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StageParseError {
    #[error("stage list is empty")]
    Empty,
    #[error("unknown matcher stage `{0}`")]
    UnknownStage(String),
    #[error("unknown heuristic rule `{0}`")]
    UnknownRule(String),
    #[error("stage `{0}` listed twice")]
    DuplicateStage(String),
    #[error("heuristic rule `{0}` listed twice")]
    DuplicateRule(String),
    #[error("heuristic stage has no rules")]
    NoRules,
    #[error("unbalanced parentheses in `{0}`")]
    Unbalanced(String),
}

/// Ordered, non-empty list of matcher stages without repeated kinds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StageList(Vec<MatcherStage>);

impl StageList {
    pub fn new(stages: Vec<MatcherStage>) -> Result<Self, StageParseError> {
        if stages.is_empty() {
            return Err(StageParseError::Empty);
        }
        for (i, s) in stages.iter().enumerate() {
            if stages[..i].iter().any(|t| t.kind_name() == s.kind_name()) {
                return Err(StageParseError::DuplicateStage(s.kind_name().into()));
            }
            if let MatcherStage::Heuristic(rules) = s {
                if rules.is_empty() {
                    return Err(StageParseError::NoRules);
                }
                for (j, r) in rules.iter().enumerate() {
                    if rules[..j].contains(r) {
                        return Err(StageParseError::DuplicateRule(r.name().into()));
                    }
                }
            }
        }
        Ok(StageList(stages))
    }

    pub fn exact() -> Self {
        StageList(vec![MatcherStage::Exact])
    }

    /// Exact, then stem, then every heuristic rule in default order.
    pub fn full() -> Self {
        StageList(vec![MatcherStage::Exact, MatcherStage::Stem, MatcherStage::heuristic()])
    }

    pub fn stages(&self) -> &[MatcherStage] {
        &self.0
    }

    pub fn has_stem(&self) -> bool {
        self.0.contains(&MatcherStage::Stem)
    }
}

impl Default for StageList {
    fn default() -> Self {
        Self::full()
    }
}

impl fmt::Display for StageList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>, StageParseError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if !(0..=1).contains(&depth) {
            return Err(StageParseError::Unbalanced(s.to_string()));
        }
    }
    if depth != 0 {
        return Err(StageParseError::Unbalanced(s.to_string()));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

impl FromStr for StageList {
    type Err = StageParseError;

    /// Parses e.g. `exact,stem,heuristic(synonym,numeric)`; a bare
    /// `heuristic` means all rules in default order. Case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut stages = Vec::new();
        for part in split_top_level(s)? {
            let part = part.trim().to_ascii_lowercase();
            if part.is_empty() {
                continue;
            }
            let (name, args) = match part.split_once('(') {
                Some((name, rest)) => {
                    let inner = rest
                        .strip_suffix(')')
                        .ok_or_else(|| StageParseError::Unbalanced(part.clone()))?;
                    (name.trim().to_string(), Some(inner.to_string()))
                }
                None => (part.clone(), None),
            };
            let stage = match (name.as_str(), args) {
                ("exact", None) => MatcherStage::Exact,
                ("stem" | "stemming" | "porter", None) => MatcherStage::Stem,
                ("heuristic" | "heuristics", None) => MatcherStage::heuristic(),
                ("heuristic" | "heuristics", Some(inner)) => MatcherStage::Heuristic(
                    inner
                        .split(',')
                        .filter(|r| !r.trim().is_empty())
                        .map(str::parse)
                        .collect::<Result<_, _>>()?,
                ),
                _ => return Err(StageParseError::UnknownStage(part)),
            };
            stages.push(stage);
        }
        StageList::new(stages)
    }
}

/// Which stage (and rule) produced a match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchKind {
    Exact,
    Stem,
    Heuristic(HeuristicRule),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchPair {
    /// Range of student content positions.
    pub student: Range<usize>,
    /// Range of reference content positions.
    pub reference: Range<usize>,
    pub kind: MatchKind,
}

impl MatchPair {
    fn unigram(s: usize, r: usize, kind: MatchKind) -> Self {
        MatchPair {
            student: s..s + 1,
            reference: r..r + 1,
            kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Alignment {
    /// Sorted by student position.
    pub pairs: Vec<MatchPair>,
    pub student_len: usize,
    pub reference_len: usize,
    pub chunk_count: usize,
}

impl Alignment {
    pub fn empty(student_len: usize, reference_len: usize) -> Self {
        Alignment {
            student_len,
            reference_len,
            ..Default::default()
        }
    }

    fn from_pairs(mut pairs: Vec<MatchPair>, student_len: usize, reference_len: usize) -> Self {
        pairs.sort_by_key(|p| p.student.start);
        let chunk_count = count_chunks(&pairs);
        Alignment {
            pairs,
            student_len,
            reference_len,
            chunk_count,
        }
    }

    pub fn student_covered(&self) -> Vec<bool> {
        let mut covered = vec![false; self.student_len];
        for p in &self.pairs {
            covered[p.student.clone()].fill(true);
        }
        covered
    }

    pub fn reference_covered(&self) -> Vec<bool> {
        let mut covered = vec![false; self.reference_len];
        for p in &self.pairs {
            covered[p.reference.clone()].fill(true);
        }
        covered
    }

    /// Student positions covered by some pair.
    pub fn matched_count(&self) -> usize {
        self.pairs.iter().map(|p| p.student.len()).sum()
    }

    /// Reference positions covered by some pair.
    pub fn matched_reference_count(&self) -> usize {
        self.pairs.iter().map(|p| p.reference.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Number of maximal runs of pairs that are adjacent and in the same order
/// on both sides. Expects pairs sorted by student position.
pub fn count_chunks(pairs: &[MatchPair]) -> usize {
    if pairs.is_empty() {
        return 0;
    }
    1 + pairs
        .windows(2)
        .filter(|w| !(w[0].student.end == w[1].student.start && w[0].reference.end == w[1].reference.start))
        .count()
}

struct Occupancy {
    student: Vec<bool>,
    reference: Vec<bool>,
}

impl Occupancy {
    fn of(existing: &Alignment) -> Self {
        Occupancy {
            student: existing.student_covered(),
            reference: existing.reference_covered(),
        }
    }

    fn take(&mut self, pair: &MatchPair) {
        self.student[pair.student.clone()].fill(true);
        self.reference[pair.reference.clone()].fill(true);
    }
}

fn greedy_unigrams(
    student: &[Token],
    reference: &[Token],
    occupied: &mut Occupancy,
    kind: MatchKind,
    compatible: impl Fn(&Token, &Token) -> bool,
) -> Vec<MatchPair> {
    let mut out = Vec::new();
    for (s, st) in student.iter().enumerate() {
        if occupied.student[s] {
            continue;
        }
        let found = reference
            .iter()
            .enumerate()
            .find(|(r, rt)| !occupied.reference[*r] && compatible(st, rt));
        if let Some((r, _)) = found {
            let pair = MatchPair::unigram(s, r, kind);
            occupied.take(&pair);
            out.push(pair);
        }
    }
    out
}

/// Single acronym tokens on `short_side` against windows of free tokens on
/// `long_side`. Returns (acronym position, window range) pairs.
fn acronym_spans(
    short_side: &[Token],
    short_taken: &mut [bool],
    long_side: &[Token],
    long_taken: &mut [bool],
) -> Vec<(usize, Range<usize>)> {
    let mut out = Vec::new();
    for (i, tok) in short_side.iter().enumerate() {
        if short_taken[i] || !is_acronym(&tok.surface) {
            continue;
        }
        let width = tok.surface.chars().count();
        if width > long_side.len() {
            continue;
        }
        let window = (0..=long_side.len() - width).find(|&start| {
            let span = start..start + width;
            !long_taken[span.clone()].iter().any(|t| *t) && acronym_matches(&tok.surface, &long_side[span])
        });
        if let Some(start) = window {
            short_taken[i] = true;
            long_taken[start..start + width].fill(true);
            out.push((i, start..start + width));
        }
    }
    out
}

fn synonym_compatible(a: &Token, b: &Token, lex: &Lexicons) -> bool {
    a.kind == TokenKind::Word
        && b.kind == TokenKind::Word
        && (a
            .lemma_forms()
            .any(|fa| b.lemma_forms().any(|fb| lex.synonyms.share_synset(fa, fb)))
            || lex.synonyms.shared_synset_by_stem(&a.stem, &b.stem).is_some())
}

fn numeric_compatible(a: &Token, b: &Token) -> bool {
    matches!((numeric_value(a), numeric_value(b)), (Some(x), Some(y)) if x == y)
}

/// Same root form, or roots that share a synset. At least one side must be
/// listed in the derivation table.
fn derivational_compatible(a: &Token, b: &Token, lex: &Lexicons) -> bool {
    if a.kind != TokenKind::Word || b.kind != TokenKind::Word {
        return false;
    }
    let table = &lex.derivations;
    a.lemma_forms().any(|fa| {
        b.lemma_forms().any(|fb| {
            let (ha, hb) = (table.lookup(fa), table.lookup(fb));
            if ha.is_none() && hb.is_none() {
                return false;
            }
            let (ra, rb) = (ha.unwrap_or(fa), hb.unwrap_or(fb));
            ra == rb || lex.synonyms.share_synset(ra, rb)
        })
    })
}

fn gazetteer_compatible(a: &Token, b: &Token, lex: &Lexicons) -> bool {
    a.kind == TokenKind::Word && b.kind == TokenKind::Word && lex.gazetteer.related(&a.normalized, &b.normalized)
}

/// New pairs found by one stage among positions unmatched in `existing`.
pub fn run_stage(
    stage: &MatcherStage,
    student: &ProcessedText,
    reference: &ProcessedText,
    existing: &Alignment,
    lexicons: &Lexicons,
) -> Vec<MatchPair> {
    let (st, rt) = (&student.content_tokens, &reference.content_tokens);
    let mut occupied = Occupancy::of(existing);
    match stage {
        MatcherStage::Exact => greedy_unigrams(st, rt, &mut occupied, MatchKind::Exact, |a, b| {
            a.normalized == b.normalized
        }),
        MatcherStage::Stem => greedy_unigrams(st, rt, &mut occupied, MatchKind::Stem, |a, b| a.stem == b.stem),
        MatcherStage::Heuristic(rules) => {
            let mut out = Vec::new();
            for &rule in rules {
                let kind = MatchKind::Heuristic(rule);
                let found = match rule {
                    HeuristicRule::Synonym => {
                        greedy_unigrams(st, rt, &mut occupied, kind, |a, b| synonym_compatible(a, b, lexicons))
                    }
                    HeuristicRule::Numeric => greedy_unigrams(st, rt, &mut occupied, kind, numeric_compatible),
                    HeuristicRule::Derivational => greedy_unigrams(st, rt, &mut occupied, kind, |a, b| {
                        derivational_compatible(a, b, lexicons)
                    }),
                    HeuristicRule::Gazetteer => {
                        greedy_unigrams(st, rt, &mut occupied, kind, |a, b| gazetteer_compatible(a, b, lexicons))
                    }
                    HeuristicRule::Acronym => {
                        let Occupancy {
                            student: s_taken,
                            reference: r_taken,
                        } = &mut occupied;
                        let mut pairs: Vec<MatchPair> = acronym_spans(st, s_taken, rt, r_taken)
                            .into_iter()
                            .map(|(s, window)| MatchPair {
                                student: s..s + 1,
                                reference: window,
                                kind,
                            })
                            .collect();
                        pairs.extend(acronym_spans(rt, r_taken, st, s_taken).into_iter().map(|(r, window)| {
                            MatchPair {
                                student: window,
                                reference: r..r + 1,
                                kind,
                            }
                        }));
                        pairs
                    }
                };
                out.extend(found);
            }
            out
        }
    }
}

/// Runs every stage in order, each on what the previous ones left unmatched.
pub fn align(student: &ProcessedText, reference: &ProcessedText, stages: &StageList, lexicons: &Lexicons) -> Alignment {
    let (slen, rlen) = (student.len(), reference.len());
    let mut alignment = Alignment::empty(slen, rlen);
    for stage in stages.stages() {
        let found = run_stage(stage, student, reference, &alignment, lexicons);
        let mut pairs = std::mem::take(&mut alignment.pairs);
        pairs.extend(found);
        alignment = Alignment::from_pairs(pairs, slen, rlen);
    }
    alignment
}

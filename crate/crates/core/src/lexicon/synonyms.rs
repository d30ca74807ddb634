use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{read_file, ResourceError};
use crate::text::porter_stem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartOfSpeech {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl PartOfSpeech {
    pub fn tag(self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "n",
            PartOfSpeech::Verb => "v",
            PartOfSpeech::Adjective => "a",
            PartOfSpeech::Adverb => "r",
        }
    }
}

impl FromStr for PartOfSpeech {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "n" | "noun" => Ok(PartOfSpeech::Noun),
            "v" | "verb" => Ok(PartOfSpeech::Verb),
            "a" | "s" | "adj" | "adjective" => Ok(PartOfSpeech::Adjective),
            "r" | "adv" | "adverb" => Ok(PartOfSpeech::Adverb),
            other => Err(format!("unknown part of speech `{other}`")),
        }
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Synset {
    pub id: String,
    pub pos: PartOfSpeech,
    pub members: Vec<String>,
}

/// Synsets indexed by member lemma and by the Porter stem of each member.
///
/// Synsets are kept sorted by id, so queries do not depend on the order of
/// lines in the source file.
#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    synsets: Vec<Synset>,
    index: HashMap<String, Vec<usize>>,
    stem_index: HashMap<String, Vec<usize>>,
}

/// First common entry of two ascending lists.
fn first_common(a: &[usize], b: &[usize]) -> Option<usize> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return Some(a[i]),
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    None
}

impl SynonymLexicon {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_synsets(mut synsets: Vec<Synset>) -> Result<Self, String> {
        for s in &mut synsets {
            let mut seen = HashSet::new();
            s.members = s
                .members
                .iter()
                .map(|m| m.trim().to_lowercase())
                .filter(|m| !m.is_empty() && seen.insert(m.clone()))
                .collect();
            if s.members.is_empty() {
                return Err(format!("synset {} has no members", s.id));
            }
        }
        synsets.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = synsets.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(format!("duplicate synset id {}", w[0].id));
        }
        let mut index: HashMap<String, Vec<usize>> = HashMap::new();
        let mut stem_index: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, s) in synsets.iter().enumerate() {
            for m in &s.members {
                index.entry(m.clone()).or_default().push(i);
                let ids = stem_index.entry(porter_stem(m)).or_default();
                if ids.last() != Some(&i) {
                    ids.push(i);
                }
            }
        }
        Ok(SynonymLexicon {
            synsets,
            index,
            stem_index,
        })
    }

    /// Parses the flat format: `pos<TAB>synset_id<TAB>lemma1,lemma2,...`.
    pub fn parse(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let mut synsets = Vec::new();
        let mut first_line = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(ResourceError::malformed(
                    origin,
                    line_no,
                    "expected `pos<TAB>synset_id<TAB>lemma,lemma,...`",
                ));
            }
            let pos = fields[0]
                .trim()
                .parse()
                .map_err(|e: String| ResourceError::malformed(origin, line_no, e))?;
            let id = fields[1].trim().to_string();
            if id.is_empty() {
                return Err(ResourceError::malformed(origin, line_no, "empty synset id"));
            }
            if let Some(prev) = first_line.insert(id.clone(), line_no) {
                return Err(ResourceError::malformed(
                    origin,
                    line_no,
                    format!("duplicate synset id {id} (first defined on line {prev})"),
                ));
            }
            let members: Vec<String> = fields[2].split(',').map(str::to_string).collect();
            if members.iter().all(|m| m.trim().is_empty()) {
                return Err(ResourceError::malformed(origin, line_no, "synset has no lemmas"));
            }
            synsets.push(Synset { id, pos, members });
        }
        Self::from_synsets(synsets).map_err(|e| ResourceError::malformed(origin, 0, e))
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        let text = read_file(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synsets(&self) -> &[Synset] {
        &self.synsets
    }

    /// First synset (by id) containing both lemmas. Its part of speech is
    /// the evidence that both words can share a part of speech.
    pub fn shared_synset(&self, a: &str, b: &str) -> Option<&Synset> {
        let i = first_common(self.index.get(a)?, self.index.get(b)?)?;
        Some(&self.synsets[i])
    }

    pub fn share_synset(&self, a: &str, b: &str) -> bool {
        self.shared_synset(a, b).is_some()
    }

    /// Like `shared_synset`, but for two Porter stems, matched against the
    /// stems of the members. Lets inflected forms such as `handles` reach
    /// the lemma `handle`.
    pub fn shared_synset_by_stem(&self, a: &str, b: &str) -> Option<&Synset> {
        let i = first_common(self.stem_index.get(a)?, self.stem_index.get(b)?)?;
        Some(&self.synsets[i])
    }

    pub fn synonyms(&self, lemma: &str) -> BTreeSet<&str> {
        self.index
            .get(lemma)
            .into_iter()
            .flatten()
            .flat_map(|&i| self.synsets[i].members.iter().map(String::as_str))
            .collect()
    }

    /// Renders the lexicon in the flat file format.
    pub fn to_flat(&self) -> String {
        let mut out = String::new();
        for s in &self.synsets {
            out.push_str(&format!("{}\t{}\t{}\n", s.pos, s.id, s.members.join(",")));
        }
        out
    }
}

/// Reads synsets from a WordNet `data.*` file (`data.noun`, `data.verb`, ...).
///
/// Only the offset, synset type and word list of each line are used. Ids are
/// the synset type letter followed by the offset, with satellite adjectives
/// folded into `a`. Adjective position markers such as `(p)` are dropped.
pub fn import_wordnet_data(text: &str, origin: &str) -> Result<Vec<Synset>, ResourceError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        // license header lines start with two spaces
        if line.starts_with("  ") || line.trim().is_empty() {
            continue;
        }
        let body = line.split(" | ").next().unwrap_or(line);
        let fields: Vec<&str> = body.split_whitespace().collect();
        let bad = |msg: &str| ResourceError::malformed(origin, line_no, msg);
        if fields.len() < 4 {
            return Err(bad("truncated synset line"));
        }
        let offset = fields[0];
        let pos: PartOfSpeech = fields[2].parse().map_err(|e: String| bad(&e))?;
        let count = usize::from_str_radix(fields[3], 16).map_err(|_| bad("bad word count"))?;
        if fields.len() < 4 + 2 * count {
            return Err(bad("word list shorter than its count"));
        }
        let members = (0..count)
            .map(|i| {
                let word = fields[4 + 2 * i];
                let word = word.split('(').next().unwrap_or(word);
                word.to_lowercase()
            })
            .collect();
        out.push(Synset {
            id: format!("{}{}", pos.tag(), offset),
            pos,
            members,
        });
    }
    Ok(out)
}

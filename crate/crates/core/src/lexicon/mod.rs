//! Lexical resources behind the heuristic matching rules: synonym sets,
//! number words, acronyms, derivational roots and a place-name gazetteer.
//!
//! Everything here is immutable after loading and safe to share across
//! threads.

mod acronym;
mod derivation;
mod gazetteer;
mod numeric;
mod synonyms;

pub use acronym::{acronym_matches, is_acronym};
pub use derivation::DerivationTable;
pub use gazetteer::{Gazetteer, Place};
pub use numeric::{numeric_value, parse_number_words};
pub use synonyms::{import_wordnet_data, PartOfSpeech, SynonymLexicon, Synset};

/// The three heuristic lexicons, loaded together.
#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub synonyms: SynonymLexicon,
    pub derivations: DerivationTable,
    pub gazetteer: Gazetteer,
}

impl Lexicons {
    pub fn empty() -> Self {
        Self::default()
    }
}

pub fn share_synset(a: &str, b: &str, lex: &SynonymLexicon) -> bool {
    lex.share_synset(a, b)
}

pub fn derivational_root<'a>(lemma: &'a str, table: &'a DerivationTable) -> &'a str {
    table.root(lemma)
}

pub fn gazetteer_related(a: &str, b: &str, gaz: &Gazetteer) -> bool {
    gaz.related(a, b)
}

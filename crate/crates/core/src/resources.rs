use std::env;
use std::path::{Path, PathBuf};

use crate::error::ResourceError;
use crate::lexicon::{DerivationTable, Gazetteer, Lexicons, SynonymLexicon};
use crate::text::StopList;

pub const STOPLIST_FILE: &str = "stopwords.txt";
pub const SYNONYMS_FILE: &str = "synonyms.tsv";
pub const DERIVATIONS_FILE: &str = "derivations.tsv";
pub const GAZETTEER_FILE: &str = "gazetteer.csv";

/// Environment variable naming a directory that holds the four resource
/// files under their default names.
pub const RESOURCES_ENV: &str = "ASAGS_RESOURCES";

const BUNDLED_SYNONYMS: &str = include_str!("../resources/synonyms.tsv");
const BUNDLED_DERIVATIONS: &str = include_str!("../resources/derivations.tsv");
const BUNDLED_GAZETTEER: &str = include_str!("../resources/gazetteer.csv");

/// Stop list plus lexicons: everything preprocessing and matching read.
#[derive(Debug, Clone, Default)]
pub struct Resources {
    pub stoplist: StopList,
    pub lexicons: Lexicons,
}

/// Per-file overrides; `None` falls back to the directory or bundled copy.
#[derive(Debug, Clone, Default)]
pub struct ResourcePaths {
    pub dir: Option<PathBuf>,
    pub stoplist: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub derivations: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
}

impl Resources {
    /// The resources shipped with the crate.
    pub fn bundled() -> Self {
        let lexicons = Lexicons {
            synonyms: SynonymLexicon::parse(BUNDLED_SYNONYMS, "bundled synonyms").expect("bundled synonyms parse"),
            derivations: DerivationTable::parse(BUNDLED_DERIVATIONS, "bundled derivations")
                .expect("bundled derivations parse"),
            gazetteer: Gazetteer::parse(BUNDLED_GAZETTEER, "bundled gazetteer").expect("bundled gazetteer parse"),
        };
        Resources {
            stoplist: StopList::english(),
            lexicons,
        }
    }

    /// Empty lexicons and no stop words.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Loads each resource from its explicit path, else from `dir` (or the
    /// `ASAGS_RESOURCES` directory), else the bundled copy.
    pub fn load(paths: &ResourcePaths) -> Result<Self, ResourceError> {
        let dir = paths
            .dir
            .clone()
            .or_else(|| env::var_os(RESOURCES_ENV).map(PathBuf::from));
        let pick = |explicit: &Option<PathBuf>, name: &str| -> Option<PathBuf> {
            explicit.clone().or_else(|| dir.as_ref().map(|d| d.join(name)))
        };
        let bundled = Resources::bundled();
        let stoplist = match pick(&paths.stoplist, STOPLIST_FILE) {
            Some(p) => StopList::load(&p)?,
            None => bundled.stoplist,
        };
        let synonyms = match pick(&paths.synonyms, SYNONYMS_FILE) {
            Some(p) => SynonymLexicon::load(&p)?,
            None => bundled.lexicons.synonyms,
        };
        let derivations = match pick(&paths.derivations, DERIVATIONS_FILE) {
            Some(p) => DerivationTable::load(&p)?,
            None => bundled.lexicons.derivations,
        };
        let gazetteer = match pick(&paths.gazetteer, GAZETTEER_FILE) {
            Some(p) => Gazetteer::load(&p)?,
            None => bundled.lexicons.gazetteer,
        };
        Ok(Resources {
            stoplist,
            lexicons: Lexicons {
                synonyms,
                derivations,
                gazetteer,
            },
        })
    }

    pub fn load_dir(dir: &Path) -> Result<Self, ResourceError> {
        Self::load(&ResourcePaths {
            dir: Some(dir.to_path_buf()),
            ..Default::default()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_resources_load() {
        let r = Resources::bundled();
        assert!(r.stoplist.contains("the"));
        assert!(r.lexicons.synonyms.share_synset("begin", "start"));
        assert_eq!(r.lexicons.derivations.root("destruction"), "destroy");
        assert!(r.lexicons.gazetteer.related("chennai", "madras"));
    }

    #[test]
    fn directory_loading() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join(STOPLIST_FILE), "foo\n").unwrap();
        std::fs::write(dir.path().join(SYNONYMS_FILE), "n\t1\tfoo,bar\n").unwrap();
        std::fs::write(dir.path().join(DERIVATIONS_FILE), "").unwrap();
        std::fs::write(dir.path().join(GAZETTEER_FILE), "").unwrap();
        let r = Resources::load_dir(dir.path()).unwrap();
        assert!(r.stoplist.contains("foo") && !r.stoplist.contains("the"));
        assert!(r.lexicons.synonyms.share_synset("foo", "bar"));
        assert!(r.lexicons.derivations.is_empty());

        std::fs::remove_file(dir.path().join(GAZETTEER_FILE)).unwrap();
        assert!(matches!(Resources::load_dir(dir.path()), Err(ResourceError::Io { .. })));
    }
}

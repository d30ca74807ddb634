use std::collections::HashMap;
use std::path::Path;

use crate::error::{read_file, ResourceError};

/// Derived lemma to root lemma, e.g. `destruction -> destroy`.
///
/// Chains are rejected at load time, so a root is never itself derived and
/// `root(root(w)) == root(w)`.
#[derive(Debug, Clone, Default)]
pub struct DerivationTable {
    roots: HashMap<String, String>,
}

impl DerivationTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `lemma<TAB>root` per line; `#` comments and blank lines skipped.
    pub fn parse(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let mut roots: HashMap<String, String> = HashMap::new();
        let mut lines: HashMap<String, usize> = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((lemma, root)) = line.split_once('\t') else {
                return Err(ResourceError::malformed(origin, line_no, "expected `lemma<TAB>root`"));
            };
            let (lemma, root) = (lemma.trim().to_lowercase(), root.trim().to_lowercase());
            if lemma.is_empty() || root.is_empty() || root.contains('\t') {
                return Err(ResourceError::malformed(origin, line_no, "expected `lemma<TAB>root`"));
            }
            if let Some(prev) = roots.get(&lemma) {
                if *prev != root {
                    return Err(ResourceError::malformed(
                        origin,
                        line_no,
                        format!("{lemma} already has root {prev}"),
                    ));
                }
            }
            lines.entry(lemma.clone()).or_insert(line_no);
            roots.insert(lemma, root);
        }
        for (lemma, root) in &roots {
            if let Some(next) = roots.get(root) {
                if next != root {
                    return Err(ResourceError::malformed(
                        origin,
                        lines[lemma],
                        format!("root {root} of {lemma} is itself derived from {next}"),
                    ));
                }
            }
        }
        Ok(DerivationTable { roots })
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        let text = read_file(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Root recorded for `lemma`, if any.
    pub fn lookup(&self, lemma: &str) -> Option<&str> {
        self.roots.get(lemma).map(String::as_str)
    }

    /// Root of `lemma`, or the lemma itself when the table has no entry.
    pub fn root<'a>(&'a self, lemma: &'a str) -> &'a str {
        self.lookup(lemma).unwrap_or(lemma)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

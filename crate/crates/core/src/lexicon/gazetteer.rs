use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::error::{read_file, ResourceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub canonical: String,
    pub alternates: Vec<String>,
    pub adjectivals: Vec<String>,
    pub demonyms: Vec<String>,
}

impl Place {
    pub fn forms(&self) -> impl Iterator<Item = &str> {
        std::iter::once(&self.canonical)
            .chain(&self.alternates)
            .chain(&self.adjectivals)
            .chain(&self.demonyms)
            .map(String::as_str)
    }
}

/// Place names with their alternate names, adjectival forms and demonyms.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    places: Vec<Place>,
    index: HashMap<String, Vec<usize>>,
}

fn split_list(field: Option<&str>) -> Vec<String> {
    field
        .unwrap_or("")
        .split(';')
        .map(|s| s.trim().to_lowercase())
        .filter(|s| !s.is_empty())
        .collect()
}

impl Gazetteer {
    pub fn empty() -> Self {
        Self::default()
    }

    /// CSV rows `canonical,alternates,adjectivals,demonyms`, lists separated
    /// by `;`. A first row starting with `canonical` is treated as a header.
    pub fn parse(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut places = Vec::new();
        for (n, record) in reader.records().enumerate() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                ResourceError::malformed(origin, line, e.to_string())
            })?;
            let line = record.position().map_or(n + 1, |p| p.line() as usize);
            if n == 0
                && record
                    .get(0)
                    .is_some_and(|f| f.trim().eq_ignore_ascii_case("canonical"))
            {
                continue;
            }
            if record.len() > 4 {
                return Err(ResourceError::malformed(origin, line, "more than four columns"));
            }
            let canonical = record.get(0).unwrap_or("").trim().to_lowercase();
            if canonical.is_empty() {
                return Err(ResourceError::malformed(origin, line, "empty canonical name"));
            }
            let place = Place {
                canonical,
                alternates: split_list(record.get(1)),
                adjectivals: split_list(record.get(2)),
                demonyms: split_list(record.get(3)),
            };
            let mut seen = HashSet::new();
            if let Some(dup) = place.forms().find(|f| !seen.insert(*f)) {
                return Err(ResourceError::malformed(
                    origin,
                    line,
                    format!("form `{dup}` appears twice in one entry"),
                ));
            }
            places.push(place);
        }
        Ok(Self::from_places(places))
    }

    pub fn from_places(places: Vec<Place>) -> Self {
        let mut index: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, p) in places.iter().enumerate() {
            for f in p.forms() {
                index.entry(f.to_string()).or_default().push(i);
            }
        }
        Gazetteer { places, index }
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        let text = read_file(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    /// True iff one entry lists both forms.
    pub fn related(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(ia), Some(ib)) => ia.iter().any(|i| ib.contains(i)),
            _ => false,
        }
    }
}

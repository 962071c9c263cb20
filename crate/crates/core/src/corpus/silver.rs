use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scheme::{orient, ComponentType, Interval, SentenceAnnotation, Typing};

use super::io::CorpusRecord;

/// Lowercased multi-word names, plus the set of words occurring in them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeSet<String>,
    words: BTreeSet<String>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry; blank entries are ignored. Returns whether it was new.
    pub fn insert(&mut self, entry: &str) -> bool {
        let words: Vec<String> = entry.split_whitespace().map(str::to_lowercase).collect();
        if words.is_empty() {
            return false;
        }
        let normalized = words.join(" ");
        self.words.extend(words);
        self.entries.insert(normalized)
    }

    pub fn entries(&self) -> &BTreeSet<String> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact, case-insensitive whole-word lookup.
    pub fn contains_word(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        fs::read_to_string(path)?.parse()
    }
}

impl FromStr for Lexicon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(s.lines().collect())
    }
}

impl<'a> FromIterator<&'a str> for Lexicon {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        let mut lex = Lexicon::new();
        for entry in iter {
            lex.insert(entry);
        }
        lex
    }
}

/// Types the components of every set from lexicon matches.
///
/// A component with at least one word in the lexicon is typed `x`, and one
/// match is enough to orient its whole set. Sets with no match, or with
/// matches on both sides, are left [`Typing::Structural`].
pub fn silver_type(
    ann: &SentenceAnnotation,
    tokens: &[String],
    lex: &Lexicon,
) -> SentenceAnnotation {
    let typer = |iv: Interval| {
        iv.words()
            .any(|w| tokens.get(w).is_some_and(|t| lex.contains_word(t)))
            .then_some(ComponentType::X)
    };
    SentenceAnnotation {
        n: ann.n,
        continuous: ann.continuous.clone(),
        sets: ann.sets.iter().map(|set| orient(set, &typer)).collect(),
    }
}

/// Replaces the component types of every compatible record with silver types.
/// Records that cannot be converted are returned unchanged.
pub fn silver_corpus(records: &[CorpusRecord], lex: &Lexicon) -> Vec<CorpusRecord> {
    records
        .iter()
        .map(|record| {
            let Ok(ann) = record.annotation() else {
                return record.clone();
            };
            let typed = silver_type(&ann, record.tokens(), lex);
            let types = typed
                .sets
                .iter()
                .filter(|s| s.typing == Typing::Semantic)
                .flat_map(|s| s.components().iter().map(|c| (c.interval, c.ty)));
            CorpusRecord::new(record.tokens().to_vec(), record.mentions().clone())
                .and_then(|r| r.with_component_types(types))
                .expect("spans come from a valid record")
        })
        .collect()
}

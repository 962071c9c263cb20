use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Inclusive word-index interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidMention(format!(
                "interval {start}-{end} is reversed"
            )));
        }
        Ok(Interval { start, end })
    }

    pub fn single(word: usize) -> Self {
        Interval {
            start: word,
            end: word,
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, word: usize) -> bool {
        self.start <= word && word <= self.end
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn words(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (b, e) = s
            .split_once('-')
            .ok_or_else(|| Error::InvalidMention(format!("expected b-e, got {s:?}")))?;
        let parse = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| Error::InvalidMention(format!("bad word index {v:?} in {s:?}")))
        };
        Interval::new(parse(b)?, parse(e)?)
    }
}

/// A possibly discontinuous mention: sorted, disjoint, non-adjacent fragments.
///
/// Adjacent fragments are merged on construction so that two mentions over the
/// same words always compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mention {
    fragments: Vec<Interval>,
}

impl Mention {
    pub fn new(fragments: impl IntoIterator<Item = Interval>) -> Result<Self> {
        let mut fragments: Vec<Interval> = fragments.into_iter().collect();
        if fragments.is_empty() {
            return Err(Error::InvalidMention(
                "a mention needs at least one fragment".into(),
            ));
        }
        fragments.sort();
        let mut merged: Vec<Interval> = Vec::with_capacity(fragments.len());
        for frag in fragments {
            match merged.last_mut() {
                Some(last) if frag.start <= last.end => {
                    return Err(Error::InvalidMention(format!(
                        "fragments {last} and {frag} overlap"
                    )));
                }
                Some(last) if frag.start == last.end + 1 => last.end = frag.end,
                _ => merged.push(frag),
            }
        }
        Ok(Mention { fragments: merged })
    }

    pub fn continuous(start: usize, end: usize) -> Result<Self> {
        Ok(Mention {
            fragments: vec![Interval::new(start, end)?],
        })
    }

    /// Builds the mention covering exactly `words`.
    pub fn from_words(words: impl IntoIterator<Item = usize>) -> Result<Self> {
        let words: BTreeSet<usize> = words.into_iter().collect();
        Mention::new(words.into_iter().map(Interval::single))
    }

    pub fn fragments(&self) -> &[Interval] {
        &self.fragments
    }

    pub fn is_continuous(&self) -> bool {
        self.fragments.len() == 1
    }

    pub fn start(&self) -> usize {
        self.fragments[0].start
    }

    pub fn end(&self) -> usize {
        self.fragments[self.fragments.len() - 1].end
    }

    pub fn words(&self) -> impl Iterator<Item = usize> + '_ {
        self.fragments.iter().flat_map(|f| f.words())
    }

    pub fn contains(&self, word: usize) -> bool {
        self.fragments.iter().any(|f| f.contains(word))
    }

    pub fn shares_word_with(&self, other: &Mention) -> bool {
        self.fragments
            .iter()
            .any(|a| other.fragments.iter().any(|b| a.overlaps(b)))
    }
}

impl fmt::Display for Mention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, frag) in self.fragments.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{frag}")?;
        }
        Ok(())
    }
}

impl FromStr for Mention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mention::new(s.split(';').map(str::parse).collect::<Result<Vec<_>>>()?)
    }
}

/// The mentions of one sentence, with set semantics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MentionSet(BTreeSet<Mention>);

impl MentionSet {
    pub fn new() -> Self {
        MentionSet::default()
    }

    pub fn insert(&mut self, mention: Mention) -> bool {
        self.0.insert(mention)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, mention: &Mention) -> bool {
        self.0.contains(mention)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Mention> {
        self.0.iter()
    }

    pub fn discontinuous(&self) -> impl Iterator<Item = &Mention> {
        self.0.iter().filter(|m| !m.is_continuous())
    }

    /// Largest word index used by any mention, if any.
    pub fn max_word(&self) -> Option<usize> {
        self.0.iter().map(Mention::end).max()
    }
}

impl FromIterator<Mention> for MentionSet {
    fn from_iter<I: IntoIterator<Item = Mention>>(iter: I) -> Self {
        MentionSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a MentionSet {
    type Item = &'a Mention;
    type IntoIter = std::collections::btree_set::Iter<'a, Mention>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for MentionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MentionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(MentionSet::new());
        }
        s.split('|').map(str::parse).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_fragments_merge() {
        let m: Mention = "0-1;2-2".parse().unwrap();
        assert!(m.is_continuous());
        assert_eq!(m.to_string(), "0-2");
        assert_eq!(m, Mention::continuous(0, 2).unwrap());
    }

    #[test]
    fn fragments_are_sorted() {
        let m: Mention = "4-4;0-1".parse().unwrap();
        assert_eq!(m.to_string(), "0-1;4-4");
        assert!(!m.is_continuous());
    }

    #[test]
    fn overlapping_fragments_are_rejected() {
        assert!("0-2;2-3".parse::<Mention>().is_err());
        assert!("3-1".parse::<Mention>().is_err());
        assert!("".parse::<Mention>().is_err());
    }

    #[test]
    fn from_words_builds_runs() {
        let m = Mention::from_words([4, 0, 1, 2, 6]).unwrap();
        assert_eq!(m.to_string(), "0-2;4-4;6-6");
    }

    #[test]
    fn mention_set_text() {
        let ms: MentionSet = "0-1;4-4|0-1;2-2".parse().unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms.discontinuous().count(), 1);
        assert_eq!(ms.to_string(), "0-1;4-4|0-2");
        assert!("".parse::<MentionSet>().unwrap().is_empty());
    }
}

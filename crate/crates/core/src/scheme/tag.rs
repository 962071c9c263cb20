use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Component type inside a set of mentions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentType {
    X,
    Y,
}

impl ComponentType {
    pub fn flipped(self) -> Self {
        match self {
            ComponentType::X => ComponentType::Y,
            ComponentType::Y => ComponentType::X,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ComponentType::X => "x",
            ComponentType::Y => "y",
        }
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ComponentType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(ComponentType::X),
            "y" => Ok(ComponentType::Y),
            other => Err(Error::InvalidAnnotation(format!(
                "unknown component type {other:?}"
            ))),
        }
    }
}

/// Whether component types carry meaning or only mark agreement with the
/// leftmost component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Either type may come first; `x`/`y` carry a meaning such as body part
    /// and event.
    #[default]
    Semantic,
    /// The leftmost component of every set is typed `x`.
    Structural,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semantic" => Ok(Mode::Semantic),
            "structural" => Ok(Mode::Structural),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

/// The ten tags, in canonical index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Tag {
    Cb = 0,
    Ci = 1,
    O = 2,
    DbBx = 3,
    DbBy = 4,
    DiBx = 5,
    DiBy = 6,
    DiIx = 7,
    DiIy = 8,
    DiO = 9,
}

impl Tag {
    pub const COUNT: usize = 10;

    pub const ALL: [Tag; Tag::COUNT] = [
        Tag::Cb,
        Tag::Ci,
        Tag::O,
        Tag::DbBx,
        Tag::DbBy,
        Tag::DiBx,
        Tag::DiBy,
        Tag::DiIx,
        Tag::DiIy,
        Tag::DiO,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Tag> {
        Tag::ALL.get(index).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Cb => "CB",
            Tag::Ci => "CI",
            Tag::O => "O",
            Tag::DbBx => "DB-Bx",
            Tag::DbBy => "DB-By",
            Tag::DiBx => "DI-Bx",
            Tag::DiBy => "DI-By",
            Tag::DiIx => "DI-Ix",
            Tag::DiIy => "DI-Iy",
            Tag::DiO => "DI-O",
        }
    }

    /// First word of the span of a set (`DB-*`).
    pub fn opens_set(self) -> bool {
        matches!(self, Tag::DbBx | Tag::DbBy)
    }

    /// Non-initial word of the span of a set (`DI-*`).
    pub fn continues_set(self) -> bool {
        matches!(
            self,
            Tag::DiBx | Tag::DiBy | Tag::DiIx | Tag::DiIy | Tag::DiO
        )
    }

    pub fn in_set(self) -> bool {
        self.opens_set() || self.continues_set()
    }

    /// Type of the component this word belongs to, if any.
    pub fn component_type(self) -> Option<ComponentType> {
        match self {
            Tag::DbBx | Tag::DiBx | Tag::DiIx => Some(ComponentType::X),
            Tag::DbBy | Tag::DiBy | Tag::DiIy => Some(ComponentType::Y),
            _ => None,
        }
    }

    /// `*-Bx` or `*-By`.
    pub fn begins_component(self) -> bool {
        matches!(self, Tag::DbBx | Tag::DbBy | Tag::DiBx | Tag::DiBy)
    }

    /// Swap `x` and `y`; identity on the other tags.
    pub fn flipped(self) -> Tag {
        match self {
            Tag::DbBx => Tag::DbBy,
            Tag::DbBy => Tag::DbBx,
            Tag::DiBx => Tag::DiBy,
            Tag::DiBy => Tag::DiBx,
            Tag::DiIx => Tag::DiIy,
            Tag::DiIy => Tag::DiIx,
            other => other,
        }
    }

    pub(crate) fn begin(ty: ComponentType, opens: bool) -> Tag {
        match (ty, opens) {
            (ComponentType::X, true) => Tag::DbBx,
            (ComponentType::Y, true) => Tag::DbBy,
            (ComponentType::X, false) => Tag::DiBx,
            (ComponentType::Y, false) => Tag::DiBy,
        }
    }

    pub(crate) fn inside(ty: ComponentType) -> Tag {
        match ty {
            ComponentType::X => Tag::DiIx,
            ComponentType::Y => Tag::DiIy,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_owned()))
    }
}

/// One tag per word of a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TagSequence(Vec<Tag>);

impl TagSequence {
    pub fn new(tags: Vec<Tag>) -> Self {
        TagSequence(tags)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Tag] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Tag> + '_ {
        self.0.iter().copied()
    }

    pub fn into_inner(self) -> Vec<Tag> {
        self.0
    }

    /// Swap `x` and `y` everywhere.
    pub fn flipped(&self) -> TagSequence {
        TagSequence(self.0.iter().map(|t| t.flipped()).collect())
    }

    /// Sequence from canonical tag indices; `None` on an out-of-range index.
    pub fn from_indices(indices: &[usize]) -> Option<TagSequence> {
        indices
            .iter()
            .map(|&i| Tag::from_index(i))
            .collect::<Option<Vec<_>>>()
            .map(TagSequence)
    }
}

impl std::ops::Index<usize> for TagSequence {
    type Output = Tag;

    fn index(&self, i: usize) -> &Tag {
        &self.0[i]
    }
}

impl From<Vec<Tag>> for TagSequence {
    fn from(tags: Vec<Tag>) -> Self {
        TagSequence(tags)
    }
}

impl FromIterator<Tag> for TagSequence {
    fn from_iter<I: IntoIterator<Item = Tag>>(iter: I) -> Self {
        TagSequence(iter.into_iter().collect())
    }
}

impl fmt::Display for TagSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, tag) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(tag.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for TagSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(TagSequence)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_are_a_bijection() {
        for (i, tag) in Tag::ALL.iter().enumerate() {
            assert_eq!(tag.index(), i);
            assert_eq!(Tag::from_index(i), Some(*tag));
        }
        assert_eq!(Tag::from_index(10), None);
    }

    #[test]
    fn no_set_opening_tag_continues_a_component() {
        for tag in Tag::ALL {
            if tag.opens_set() {
                assert!(tag.begins_component(), "{tag}");
            }
        }
        for bad in ["DB-Ix", "DB-Iy", "DB-O", "IB-Bx"] {
            assert!(bad.parse::<Tag>().is_err());
        }
    }

    #[test]
    fn flip_is_an_involution() {
        for tag in Tag::ALL {
            assert_eq!(tag.flipped().flipped(), tag);
            assert_eq!(
                tag.flipped().component_type(),
                tag.component_type().map(|t| t.flipped())
            );
        }
    }

    #[test]
    fn sequence_text_round_trip() {
        let ts: TagSequence = "DB-Bx DI-Ix DI-By DI-O DI-By".parse().unwrap();
        assert_eq!(ts.len(), 5);
        assert_eq!(ts.to_string(), "DB-Bx DI-Ix DI-By DI-O DI-By");
        assert_eq!("".parse::<TagSequence>().unwrap(), TagSequence::default());
    }
}

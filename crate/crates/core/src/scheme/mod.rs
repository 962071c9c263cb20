//! The tagging scheme: tags, mentions, the two-layer representation and the
//! mappings between mention sets and tag sequences.

mod encoding;
mod mention;
mod tag;
mod two_layer;

pub use encoding::{decode, encode, is_well_formed, is_well_formed_in, parse_annotation};
pub use mention::{Interval, Mention, MentionSet};
pub use tag::{ComponentType, Mode, Tag, TagSequence};
pub(crate) use two_layer::orient;
pub use two_layer::{
    from_two_layer, to_two_layer, Component, ComponentTyper, SentenceAnnotation, TwoLayerSet,
    Typing,
};

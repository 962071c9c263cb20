use super::mention::{Interval, MentionSet};
use super::tag::{ComponentType, Mode, Tag, TagSequence};
use super::two_layer::{from_two_layer, Component, SentenceAnnotation, TwoLayerSet, Typing};
use crate::error::{Error, Result};

/// Writes a two-layer annotation as a tag sequence.
pub fn encode(ann: &SentenceAnnotation) -> Result<TagSequence> {
    ann.validate()
        .map_err(|e| Error::EncodingViolation(e.to_string()))?;
    let mut tags = vec![Tag::O; ann.n];
    for m in &ann.continuous {
        let iv = m.fragments()[0];
        tags[iv.start] = Tag::Cb;
        tags[iv.start + 1..=iv.end].fill(Tag::Ci);
    }
    for set in &ann.sets {
        let span = set.span();
        tags[span.start..=span.end].fill(Tag::DiO);
        for c in set.components() {
            tags[c.interval.start] = Tag::begin(c.ty, c.interval.start == span.start);
            tags[c.interval.start + 1..=c.interval.end].fill(Tag::inside(c.ty));
        }
    }
    let ts = TagSequence::new(tags);
    if let Err(why) = check_rules(ts.as_slice()) {
        return Err(Error::EncodingViolation(why));
    }
    Ok(ts)
}

/// Reads the two-layer annotation back from a well-formed tag sequence.
///
/// Component types are taken as written; every set is marked
/// [`Typing::Semantic`].
pub fn parse_annotation(ts: &TagSequence) -> Result<SentenceAnnotation> {
    check_rules(ts.as_slice()).map_err(Error::IllFormed)?;
    let tags = ts.as_slice();
    let mut ann = SentenceAnnotation::empty(tags.len());
    let mut i = 0;
    while i < tags.len() {
        match tags[i] {
            Tag::O => i += 1,
            Tag::Cb => {
                let start = i;
                i += 1;
                while i < tags.len() && tags[i] == Tag::Ci {
                    i += 1;
                }
                ann.continuous
                    .push(super::Mention::continuous(start, i - 1).expect("start <= end"));
            }
            _ => {
                let mut components: Vec<Component> = Vec::new();
                let mut j = i;
                while j < tags.len() && (j == i || tags[j].continues_set()) {
                    let t = tags[j];
                    if t.begins_component() {
                        let ty = t.component_type().expect("component tag");
                        components.push(Component {
                            interval: Interval::single(j),
                            ty,
                        });
                    } else if t.component_type().is_some() {
                        components.last_mut().expect("rule 3").interval.end = j;
                    }
                    j += 1;
                }
                ann.sets
                    .push(TwoLayerSet::new(components, Typing::Semantic)?);
                i = j;
            }
        }
    }
    Ok(ann)
}

/// Maps a well-formed tag sequence to its mention set.
pub fn decode(ts: &TagSequence) -> Result<MentionSet> {
    parse_annotation(ts).map(|ann| from_two_layer(&ann))
}

/// True iff the sequence satisfies all six well-formedness rules.
pub fn is_well_formed(ts: &TagSequence) -> bool {
    check_rules(ts.as_slice()).is_ok()
}

/// Well-formedness under a mode: structural mode additionally requires the
/// leftmost component of every set to be typed `x`.
pub fn is_well_formed_in(ts: &TagSequence, mode: Mode) -> bool {
    is_well_formed(ts) && (mode == Mode::Semantic || ts.iter().all(|t| t != Tag::DbBy))
}

fn check_rules(tags: &[Tag]) -> std::result::Result<(), String> {
    let mut prev: Option<Tag> = None;
    for (i, &t) in tags.iter().enumerate() {
        let ok = match t {
            Tag::Ci => matches!(prev, Some(Tag::Cb | Tag::Ci)),
            _ if t.continues_set() && !prev.is_some_and(Tag::in_set) => false,
            Tag::DiIx => matches!(prev, Some(Tag::DbBx | Tag::DiBx | Tag::DiIx)),
            Tag::DiIy => matches!(prev, Some(Tag::DbBy | Tag::DiBy | Tag::DiIy)),
            _ => true,
        };
        if !ok {
            let after = prev.map_or("sentence start".to_owned(), |p| p.to_string());
            return Err(format!("{t} at position {i} cannot follow {after}"));
        }
        prev = Some(t);
    }

    let mut i = 0;
    while i < tags.len() {
        if !tags[i].opens_set() {
            i += 1;
            continue;
        }
        let start = i;
        i += 1;
        while i < tags.len() && tags[i].continues_set() {
            i += 1;
        }
        let run = &tags[start..i];
        let begins = |ty| {
            run.iter()
                .filter(|t| t.begins_component() && t.component_type() == Some(ty))
                .count()
        };
        let (nx, ny) = (begins(ComponentType::X), begins(ComponentType::Y));
        if nx == 0 || ny == 0 {
            return Err(format!("set at {start} lacks an x or a y component"));
        }
        if nx == 1 && ny == 1 && !run.contains(&Tag::DiO) {
            return Err(format!("set at {start} yields a single continuous mention"));
        }
        if run[run.len() - 1] == Tag::DiO {
            return Err(format!("set at {start} ends with DI-O"));
        }
    }
    Ok(())
}

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::mention::{Interval, Mention, MentionSet};
use super::tag::ComponentType;
use crate::error::{Error, IncompatibleReason, Result};

/// A contiguous, typed run of words inside a set of mentions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub interval: Interval,
    pub ty: ComponentType,
}

/// Where the component types of a set come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Typing {
    /// Types only record agreement with the leftmost component, which is `x`.
    /// In semantic mode this means the orientation is unknown.
    #[default]
    Structural,
    /// Types were fixed by external evidence (gold types, a lexicon).
    Semantic,
}

/// A set of mentions: typed components whose Cartesian product gives the
/// mentions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoLayerSet {
    components: Vec<Component>,
    pub typing: Typing,
}

impl TwoLayerSet {
    pub fn new(mut components: Vec<Component>, typing: Typing) -> Result<Self> {
        components.sort_by_key(|c| c.interval);
        for pair in components.windows(2) {
            if pair[0].interval.end >= pair[1].interval.start {
                return Err(Error::InvalidAnnotation(format!(
                    "components {} and {} overlap",
                    pair[0].interval, pair[1].interval
                )));
            }
        }
        let has = |ty| components.iter().any(|c| c.ty == ty);
        if !has(ComponentType::X) || !has(ComponentType::Y) {
            return Err(Error::InvalidAnnotation(
                "a set needs at least one x and one y component".into(),
            ));
        }
        Ok(TwoLayerSet { components, typing })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// From the first word of the leftmost component to the last word of the
    /// rightmost one.
    pub fn span(&self) -> Interval {
        Interval {
            start: self.components[0].interval.start,
            end: self.components[self.components.len() - 1].interval.end,
        }
    }

    /// Words inside the span covered by no component.
    pub fn gaps(&self) -> Vec<usize> {
        let span = self.span();
        span.words()
            .filter(|w| !self.components.iter().any(|c| c.interval.contains(*w)))
            .collect()
    }

    pub fn leftmost_type(&self) -> ComponentType {
        self.components[0].ty
    }

    /// Same set with `x` and `y` swapped.
    pub fn flipped(&self) -> TwoLayerSet {
        TwoLayerSet {
            components: self
                .components
                .iter()
                .map(|c| Component {
                    interval: c.interval,
                    ty: c.ty.flipped(),
                })
                .collect(),
            typing: self.typing,
        }
    }

    /// Orientation with the leftmost component typed `x`.
    pub fn to_structural(&self) -> TwoLayerSet {
        if self.leftmost_type() == ComponentType::X {
            self.clone()
        } else {
            self.flipped()
        }
    }

    /// The mentions of the set: every `x` component joined with every `y`
    /// component.
    pub fn mentions(&self) -> impl Iterator<Item = Mention> + '_ {
        let of = |ty| self.components.iter().filter(move |c| c.ty == ty);
        of(ComponentType::X).flat_map(move |cx| {
            of(ComponentType::Y).map(move |cy| {
                Mention::new([cx.interval, cy.interval]).expect("components of a set are disjoint")
            })
        })
    }
}

/// Full two-layer representation of one sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SentenceAnnotation {
    pub n: usize,
    pub continuous: Vec<Mention>,
    pub sets: Vec<TwoLayerSet>,
}

impl SentenceAnnotation {
    pub fn empty(n: usize) -> Self {
        SentenceAnnotation {
            n,
            continuous: Vec::new(),
            sets: Vec::new(),
        }
    }

    /// Checks that every element lies inside the sentence and that no word is
    /// covered by two elements.
    pub fn validate(&self) -> Result<()> {
        let mut spans: Vec<Interval> = Vec::new();
        for m in &self.continuous {
            if !m.is_continuous() {
                return Err(Error::InvalidAnnotation(format!(
                    "standalone mention {m} is not continuous"
                )));
            }
            spans.push(m.fragments()[0]);
        }
        spans.extend(self.sets.iter().map(TwoLayerSet::span));
        spans.sort();
        if let Some(last) = spans.last() {
            if last.end >= self.n {
                return Err(Error::InvalidAnnotation(format!(
                    "{last} lies outside a sentence of {} words",
                    self.n
                )));
            }
        }
        for pair in spans.windows(2) {
            if pair[0].overlaps(&pair[1]) {
                return Err(Error::InvalidAnnotation(format!(
                    "{} and {} overlap",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(())
    }

    /// Every set oriented with its leftmost component typed `x`.
    pub fn to_structural(&self) -> SentenceAnnotation {
        SentenceAnnotation {
            n: self.n,
            continuous: self.continuous.clone(),
            sets: self.sets.iter().map(TwoLayerSet::to_structural).collect(),
        }
    }
}

/// Supplies semantic component types.
///
/// A typer may answer for some components only; a single answer fixes the
/// orientation of a whole set, since the split into two sides is determined
/// by the mentions.
pub trait ComponentTyper {
    fn component_type(&self, component: Interval) -> Option<ComponentType>;
}

impl<F> ComponentTyper for F
where
    F: Fn(Interval) -> Option<ComponentType>,
{
    fn component_type(&self, component: Interval) -> Option<ComponentType> {
        self(component)
    }
}

/// Orients a structurally typed set from the typer's votes. Returns the set
/// unchanged and [`Typing::Structural`] when there is no vote or the votes
/// disagree with each other.
pub(crate) fn orient(set: &TwoLayerSet, typer: &dyn ComponentTyper) -> TwoLayerSet {
    let base = set.to_structural();
    let (mut keep, mut flip) = (false, false);
    for c in base.components() {
        match typer.component_type(c.interval) {
            Some(ty) if ty == c.ty => keep = true,
            Some(_) => flip = true,
            None => {}
        }
    }
    match (keep, flip) {
        (true, false) => TwoLayerSet {
            typing: Typing::Semantic,
            ..base
        },
        (false, true) => TwoLayerSet {
            typing: Typing::Semantic,
            ..base.flipped()
        },
        _ => TwoLayerSet {
            typing: Typing::Structural,
            ..base
        },
    }
}

/// Converts a mention set to the two-layer representation.
///
/// Mentions sharing words are grouped; every group of two or more mentions,
/// and every standalone discontinuous mention, becomes a set whose components
/// are the maximal word runs covered by the same mentions. Without a typer the
/// leftmost component of each set is typed `x`.
pub fn to_two_layer(
    mentions: &MentionSet,
    n: usize,
    typer: Option<&dyn ComponentTyper>,
) -> Result<SentenceAnnotation> {
    let list: Vec<&Mention> = mentions.iter().collect();
    if let Some(m) = list.iter().find(|m| m.end() >= n) {
        return Err(Error::InvalidMention(format!(
            "{m} lies outside a sentence of {n} words"
        )));
    }

    let mut ann = SentenceAnnotation::empty(n);
    for group in overlap_groups(&list) {
        if group.len() == 1 && list[group[0]].is_continuous() {
            ann.continuous.push(list[group[0]].clone());
            continue;
        }
        let members: Vec<&Mention> = group.iter().map(|&i| list[i]).collect();
        let set = build_set(&members)?;
        ann.sets.push(match typer {
            Some(t) => orient(&set, t),
            None => set,
        });
    }
    ann.continuous.sort();
    ann.sets.sort_by_key(|s| s.span());

    ann.validate()
        .map_err(|_| Error::Incompatible(IncompatibleReason::SpanConflict))?;
    // The checks above make the encoding well-formed; keep the encoder as the
    // final word.
    super::encode(&ann)?;
    Ok(ann)
}

/// Connected components of the word-overlap graph, as sorted index lists.
fn overlap_groups(mentions: &[&Mention]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..mentions.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..mentions.len() {
        for j in i + 1..mentions.len() {
            if mentions[i].shares_word_with(mentions[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..mentions.len() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

fn build_set(members: &[&Mention]) -> Result<TwoLayerSet> {
    use IncompatibleReason::*;

    // word -> indices of the mentions covering it
    let mut coverage: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (mi, m) in members.iter().enumerate() {
        for w in m.words() {
            coverage.entry(w).or_default().insert(mi);
        }
    }

    // Maximal runs of consecutive words with identical coverage.
    let mut components: Vec<(Interval, &BTreeSet<usize>)> = Vec::new();
    for (&w, cov) in &coverage {
        match components.last_mut() {
            Some((iv, last)) if iv.end + 1 == w && *last == cov => iv.end = w,
            _ => components.push((Interval::single(w), cov)),
        }
    }

    // Each mention must consist of exactly two components.
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(members.len());
    for mi in 0..members.len() {
        let parts: Vec<usize> = (0..components.len())
            .filter(|&c| components[c].1.contains(&mi))
            .collect();
        match parts.len() {
            2 => edges.push((parts[0], parts[1])),
            0 | 1 => return Err(Error::Incompatible(PartialOverlap)),
            _ => return Err(Error::Incompatible(ThreeWaySplit)),
        }
    }

    // Two-colour the components, leftmost first.
    let mut colour: Vec<Option<ComponentType>> = vec![None; components.len()];
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); components.len()];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for start in 0..components.len() {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(ComponentType::X);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let other = colour[c].expect("queued components are coloured").flipped();
            for &d in &adjacency[c] {
                match colour[d] {
                    None => {
                        colour[d] = Some(other);
                        queue.push_back(d);
                    }
                    Some(ty) if ty != other => return Err(Error::Incompatible(PartialOverlap)),
                    Some(_) => {}
                }
            }
        }
    }

    let typed: Vec<Component> = components
        .iter()
        .zip(&colour)
        .map(|((iv, _), ty)| Component {
            interval: *iv,
            ty: ty.expect("all coloured"),
        })
        .collect();
    let set = TwoLayerSet::new(typed, Typing::Structural)
        .map_err(|_| Error::Incompatible(PartialOverlap))?;

    let product: BTreeSet<Mention> = set.mentions().collect();
    let original: BTreeSet<Mention> = members.iter().map(|m| (*m).clone()).collect();
    if product != original {
        return Err(Error::Incompatible(PartialOverlap));
    }
    Ok(set)
}

/// Rebuilds the mention set: continuous mentions as they are, plus the
/// Cartesian product of `x` and `y` components of every set.
pub fn from_two_layer(ann: &SentenceAnnotation) -> MentionSet {
    ann.continuous
        .iter()
        .cloned()
        .chain(
            ann.sets
                .iter()
                .flat_map(|s| s.mentions().collect::<Vec<_>>()),
        )
        .collect()
}

use super::semiring::log_sum_exp;
use crate::error::{Error, Result};
use crate::scheme::{encode, parse_annotation, SentenceAnnotation, TagSequence, Typing};
use crate::weights::{MarginalTable, WeightMatrix};

/// Above this many unresolved sets the member list is refused.
const MAX_UNRESOLVED_SETS: usize = 16;

/// All tag sequences that reproduce a gold annotation when the orientation of
/// some sets is unknown.
///
/// Each set typed [`Typing::Structural`] may be read either way, so with `k`
/// such sets there are `2^k` members. Member `j` flips the sets whose bit is
/// set in `j`; member 0 is the annotation as given.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialLabelSet {
    base: SentenceAnnotation,
    unresolved: Vec<usize>,
    members: Vec<TagSequence>,
}

impl PartialLabelSet {
    pub fn new(base: SentenceAnnotation) -> Result<Self> {
        let unresolved: Vec<usize> = base
            .sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.typing == Typing::Structural)
            .map(|(i, _)| i)
            .collect();
        if unresolved.len() > MAX_UNRESOLVED_SETS {
            return Err(Error::Config(format!(
                "{} unresolved sets exceed the limit of {MAX_UNRESOLVED_SETS}",
                unresolved.len()
            )));
        }
        let members = (0..1usize << unresolved.len())
            .map(|mask| {
                let mut ann = base.clone();
                for (bit, &s) in unresolved.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        ann.sets[s] = ann.sets[s].flipped();
                    }
                }
                encode(&ann)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PartialLabelSet {
            base,
            unresolved,
            members,
        })
    }

    /// Every set of a tag sequence treated as unresolved.
    pub fn from_tags(ts: &TagSequence) -> Result<Self> {
        let mut ann = parse_annotation(ts)?;
        for set in &mut ann.sets {
            set.typing = Typing::Structural;
        }
        PartialLabelSet::new(ann)
    }

    pub fn base(&self) -> &SentenceAnnotation {
        &self.base
    }

    /// Number of sets whose orientation is free.
    pub fn unresolved(&self) -> usize {
        self.unresolved.len()
    }

    pub fn members(&self) -> &[TagSequence] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub(crate) fn member_scores(&self, w: &WeightMatrix) -> Result<Vec<f64>> {
        w.ensure_rows(self.n())?;
        Ok(self.members.iter().map(|m| w.score(m)).collect())
    }
}

/// `log Σ_{y ∈ Ỹ} exp ⟨y, w⟩` over the members.
pub fn clamped_log_partition(pl: &PartialLabelSet, w: &WeightMatrix) -> Result<f64> {
    Ok(log_sum_exp(&pl.member_scores(w)?))
}

/// Gradient of [`clamped_log_partition`]: the posterior-weighted average of
/// the members' one-hot matrices.
pub fn clamped_marginals(pl: &PartialLabelSet, w: &WeightMatrix) -> Result<MarginalTable> {
    let scores = pl.member_scores(w)?;
    let log_z = log_sum_exp(&scores);
    let mut out = MarginalTable::zeros(pl.n());
    for (member, score) in pl.members.iter().zip(&scores) {
        let p = (score - log_z).exp();
        for (i, t) in member.iter().enumerate() {
            out[(i, t)] += p;
        }
    }
    Ok(out)
}

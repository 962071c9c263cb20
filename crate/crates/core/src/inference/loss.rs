use super::dp::{forward, marginals};
use super::partial::{clamped_log_partition, clamped_marginals, PartialLabelSet};
use crate::automata::Lattice;
use crate::error::{Error, Result};
use crate::scheme::{is_well_formed, TagSequence};
use crate::weights::{TagMatrix, WeightMatrix};

/// A loss value and its gradient with respect to the weight matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Loss {
    pub value: f64,
    pub grad: WeightMatrix,
}

fn check_target(lat: &Lattice, ts: &TagSequence) -> Result<()> {
    if ts.len() != lat.n() {
        return Err(Error::ShapeMismatch(format!(
            "target has {} tags for a {}-word lattice",
            ts.len(),
            lat.n()
        )));
    }
    if !is_well_formed(ts) || !lat.grammar().accepts(ts.as_slice()) {
        return Err(Error::IllFormed(format!(
            "{ts} is outside the grammar's language"
        )));
    }
    Ok(())
}

/// Negative log-likelihood `A(w) - ⟨y, w⟩`; gradient `marginals - onehot(y)`.
pub fn nll(lat: &Lattice, w: &WeightMatrix, gold: &TagSequence) -> Result<Loss> {
    check_target(lat, gold)?;
    let log_z = forward(lat, w)?;
    let mut grad = marginals(lat, w)?;
    grad.add_scaled(-1.0, &TagMatrix::one_hot(gold));
    Ok(Loss {
        value: (log_z - w.score(gold)).max(0.0),
        grad,
    })
}

/// Partial-label loss `A(w) - A_Ỹ(w)`; gradient `marginals - μ̂_Ỹ`, where the
/// clamped marginals are held fixed.
pub fn partial_nll(lat: &Lattice, w: &WeightMatrix, pl: &PartialLabelSet) -> Result<Loss> {
    for m in pl.members() {
        check_target(lat, m)?;
    }
    let log_z = forward(lat, w)?;
    let clamped = clamped_log_partition(pl, w)?;
    let mut grad = marginals(lat, w)?;
    grad.add_scaled(-1.0, &clamped_marginals(pl, w)?);
    Ok(Loss {
        value: (log_z - clamped).max(0.0),
        grad,
    })
}

/// Hard-EM step: pick the best-scoring member (first one on ties) and take
/// the NLL towards it.
pub fn hard_em_step(
    lat: &Lattice,
    w: &WeightMatrix,
    pl: &PartialLabelSet,
) -> Result<(Loss, TagSequence)> {
    let scores = pl.member_scores(w)?;
    let mut best = 0;
    for (j, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = j;
        }
    }
    let chosen = pl.members()[best].clone();
    let loss = nll(lat, w, &chosen)?;
    Ok((loss, chosen))
}

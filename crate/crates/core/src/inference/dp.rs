use super::semiring::{LogSemiring, Semiring, Tropical};
use crate::automata::Lattice;
use crate::error::Result;
use crate::scheme::{Tag, TagSequence};
use crate::weights::{MarginalTable, WeightMatrix};

/// Forward distances: entry `[i][q]` is the `⊕` over all paths from the
/// initial state to `(i, q)` of the `⊗` of their weights.
pub fn shortest_distance<S: Semiring>(lat: &Lattice, w: &WeightMatrix) -> Result<Vec<Vec<S>>> {
    w.ensure_rows(lat.n())?;
    let g = lat.grammar();
    let q = g.num_states();
    let mut alpha = vec![vec![S::zero(); q]; lat.n() + 1];
    alpha[0][g.initial()] = S::one();
    for i in 1..=lat.n() {
        let row = &w.rows()[i - 1];
        let (done, rest) = alpha.split_at_mut(i);
        let prev = &done[i - 1];
        for (state, slot) in rest[0].iter_mut().enumerate() {
            *slot = S::sum(
                g.incoming(state)
                    .iter()
                    .map(|a| prev[a.source].times(S::from_weight(row[a.tag.index()]))),
            );
        }
    }
    Ok(alpha)
}

/// Backward distances: entry `[i][q]` aggregates the paths from `(i, q)` to a
/// final state.
pub fn backward_distance<S: Semiring>(lat: &Lattice, w: &WeightMatrix) -> Result<Vec<Vec<S>>> {
    w.ensure_rows(lat.n())?;
    let g = lat.grammar();
    let q = g.num_states();
    let n = lat.n();
    let mut beta = vec![vec![S::zero(); q]; n + 1];
    for (state, slot) in beta[n].iter_mut().enumerate() {
        if g.is_final(state) {
            *slot = S::one();
        }
    }
    for i in (0..n).rev() {
        let row = &w.rows()[i];
        let (head, tail) = beta.split_at_mut(i + 1);
        let next = &tail[0];
        for (state, slot) in head[i].iter_mut().enumerate() {
            *slot = S::sum(Tag::ALL.iter().filter_map(|&t| {
                g.next(state, t)
                    .map(|r| S::from_weight(row[t.index()]).times(next[r]))
            }));
        }
    }
    Ok(beta)
}

fn total<S: Semiring>(lat: &Lattice, alpha: &[Vec<S>]) -> S {
    S::sum(lat.finals().map(|(i, q)| alpha[i][q]))
}

/// Log-partition `A(w) = log Σ_y exp ⟨y, w⟩` over the lattice's paths.
pub fn forward(lat: &Lattice, w: &WeightMatrix) -> Result<f64> {
    let alpha = shortest_distance::<LogSemiring>(lat, w)?;
    Ok(total(lat, &alpha).value())
}

/// Highest path score and its tag sequence.
///
/// Among tied paths the one with the lowest tag index at the earliest
/// differing position wins. The score is the forward max, summed left to
/// right.
pub fn viterbi(lat: &Lattice, w: &WeightMatrix) -> Result<(f64, TagSequence)> {
    let alpha = shortest_distance::<Tropical>(lat, w)?;
    let score = total(lat, &alpha).value();
    let beta = backward_distance::<Tropical>(lat, w)?;

    let g = lat.grammar();
    let mut state = g.initial();
    let mut tags = Vec::with_capacity(lat.n());
    for i in 0..lat.n() {
        let row = &w.rows()[i];
        let best = beta[i][state];
        let (tag, next) = Tag::ALL
            .iter()
            .find_map(|&t| {
                let r = g.next(state, t)?;
                (Tropical::from_weight(row[t.index()]).times(beta[i + 1][r]) == best)
                    .then_some((t, r))
            })
            .expect("the backward max is attained by some transition");
        tags.push(tag);
        state = next;
    }
    Ok((score, TagSequence::new(tags)))
}

/// Posterior tag probabilities, i.e. the gradient of [`forward`], by
/// forward–backward.
pub fn marginals(lat: &Lattice, w: &WeightMatrix) -> Result<MarginalTable> {
    let alpha = shortest_distance::<LogSemiring>(lat, w)?;
    let beta = backward_distance::<LogSemiring>(lat, w)?;
    let log_z = total(lat, &alpha).value();
    let g = lat.grammar();
    let mut out = MarginalTable::zeros(lat.n());
    for i in 0..lat.n() {
        let row = &w.rows()[i];
        for arc in g.arcs() {
            let a = alpha[i][arc.source].0;
            let b = beta[i + 1][arc.target].0;
            if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
                continue;
            }
            out[(i, arc.tag)] += (a + row[arc.tag.index()] + b - log_z).exp();
        }
    }
    Ok(out)
}

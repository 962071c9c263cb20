use std::collections::BTreeMap;

use rayon::prelude::*;

use super::features::features;
use crate::automata::{Grammar, Lattice};
use crate::error::{Error, Result};
use crate::inference::viterbi;
use crate::scheme::{decode, MentionSet, Tag, TagSequence};
use crate::weights::{TagMatrix, WeightMatrix};

pub const DEFAULT_DIM: usize = 1 << 18;

/// Linear map from hashed features to tag weights: the weight of tag `t` at
/// word `i` is the sum of `params[f][t]` over the features `f` of word `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearScorer {
    params: Vec<[f64; Tag::COUNT]>,
}

impl Default for LinearScorer {
    fn default() -> Self {
        LinearScorer::zeros(DEFAULT_DIM).expect("default dimension is positive")
    }
}

impl LinearScorer {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("feature dimension must be positive".into()));
        }
        Ok(LinearScorer {
            params: vec![[0.0; Tag::COUNT]; dim],
        })
    }

    /// Rejects an empty table and non-finite parameters.
    pub fn from_params(params: Vec<[f64; Tag::COUNT]>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::Config("feature dimension must be positive".into()));
        }
        for (row, values) in params.iter().enumerate() {
            if let Some(t) = values.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFiniteWeight {
                    row,
                    tag: Tag::ALL[t],
                });
            }
        }
        Ok(LinearScorer { params })
    }

    pub fn dim(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[[f64; Tag::COUNT]] {
        &self.params
    }

    pub fn param(&self, feature: usize, tag: Tag) -> f64 {
        self.params[feature][tag.index()]
    }

    pub fn set_param(&mut self, feature: usize, tag: Tag, value: f64) {
        self.params[feature][tag.index()] = value;
    }

    /// Feature indices of every word.
    pub fn features<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<[usize; 6]> {
        (0..tokens.len())
            .map(|i| features(tokens, i, self.dim()))
            .collect()
    }

    pub fn score<S: AsRef<str>>(&self, tokens: &[S]) -> WeightMatrix {
        let mut w = TagMatrix::zeros(tokens.len());
        for (i, feats) in self.features(tokens).iter().enumerate() {
            for &f in feats {
                for t in Tag::ALL {
                    w[(i, t)] += self.params[f][t.index()];
                }
            }
        }
        w
    }

    /// Gradient with respect to the parameters, given the gradient `grad`
    /// with respect to `score(tokens)`. Only touched rows are returned.
    pub fn backprop<S: AsRef<str>>(
        &self,
        tokens: &[S],
        grad: &TagMatrix,
    ) -> BTreeMap<usize, [f64; Tag::COUNT]> {
        let mut out: BTreeMap<usize, [f64; Tag::COUNT]> = BTreeMap::new();
        for (i, feats) in self.features(tokens).iter().enumerate() {
            for &f in feats {
                let row = out.entry(f).or_insert([0.0; Tag::COUNT]);
                for (acc, g) in row.iter_mut().zip(&grad.rows()[i]) {
                    *acc += g;
                }
            }
        }
        out
    }

    /// Number of parameter rows with a nonzero entry.
    pub fn nonzero_rows(&self) -> usize {
        self.params
            .iter()
            .filter(|r| r.iter().any(|&v| v != 0.0))
            .count()
    }
}

/// The highest-scoring well-formed tag sequence for `tokens`.
pub fn predict_tags<S: AsRef<str>>(
    scorer: &LinearScorer,
    grammar: &Grammar,
    tokens: &[S],
) -> Result<TagSequence> {
    let w = scorer.score(tokens);
    let lattice = Lattice::new(grammar, tokens.len())?;
    Ok(viterbi(&lattice, &w)?.1)
}

/// Mentions of the highest-scoring well-formed tag sequence.
pub fn predict<S: AsRef<str>>(
    scorer: &LinearScorer,
    grammar: &Grammar,
    tokens: &[S],
) -> Result<MentionSet> {
    decode(&predict_tags(scorer, grammar, tokens)?)
}

/// [`predict`] over many sentences in parallel; results keep input order.
pub fn predict_batch<S: AsRef<str> + Sync>(
    scorer: &LinearScorer,
    grammar: &Grammar,
    sentences: &[Vec<S>],
) -> Result<Vec<MentionSet>> {
    sentences
        .par_iter()
        .map(|tokens| predict(scorer, grammar, tokens))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::Mode;

    #[test]
    fn zero_params_give_zero_scores() {
        let s = LinearScorer::zeros(64).unwrap();
        assert_eq!(s.score(&["a", "b", "c"]), TagMatrix::zeros(3));
    }

    #[test]
    fn scoring_is_deterministic() {
        let mut s = LinearScorer::zeros(1 << 10).unwrap();
        for f in 0..s.dim() {
            s.set_param(f, Tag::ALL[f % Tag::COUNT], (f as f64 * 0.37).sin());
        }
        let tokens = ["pain", "in", "arms"];
        assert_eq!(s.score(&tokens), s.score(&tokens));
    }

    #[test]
    fn perturbation_reaches_only_positions_using_the_feature() {
        let tokens = ["pain", "in", "arms", "and", "legs"];
        let mut s = LinearScorer::zeros(1 << 16).unwrap();
        let feats = s.features(&tokens);
        let target = feats[2][1];
        s.set_param(target, Tag::DiBy, 1.5);
        let w = s.score(&tokens);
        for (i, fs) in feats.iter().enumerate() {
            let hits = fs.iter().filter(|&&f| f == target).count() as f64;
            for t in Tag::ALL {
                let expected = if t == Tag::DiBy { 1.5 * hits } else { 0.0 };
                assert_eq!(w[(i, t)], expected, "word {i} tag {t}");
            }
        }
        assert_eq!(w[(2, Tag::DiBy)], 1.5);
    }

    #[test]
    fn backprop_matches_finite_differences() {
        let tokens = ["a", "b", "a"];
        let mut s = LinearScorer::zeros(8).unwrap();
        let mut g = TagMatrix::zeros(3);
        for i in 0..3 {
            for t in Tag::ALL {
                g[(i, t)] = (i * 10 + t.index()) as f64 * 0.1 - 1.0;
            }
        }
        let grads = s.backprop(&tokens, &g);
        let objective = |s: &LinearScorer| s.score(&tokens).dot(&g);
        for f in 0..s.dim() {
            for t in Tag::ALL {
                let base = s.param(f, t);
                s.set_param(f, t, base + 1.0);
                let up = objective(&s);
                s.set_param(f, t, base);
                let expected = up - objective(&s);
                let got = grads.get(&f).map_or(0.0, |r| r[t.index()]);
                assert!(
                    (got - expected).abs() < 1e-9,
                    "feature {f} tag {t}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn zero_scorer_predicts_canonical_sequence() {
        let s = LinearScorer::zeros(16).unwrap();
        let g = Grammar::new(Mode::Semantic);
        let tags = predict_tags(&s, &g, &["a", "b", "c"]).unwrap();
        assert_eq!(tags.to_string(), "CB CB CB");
        let mentions = predict(&s, &g, &["a", "b", "c"]).unwrap();
        assert_eq!(mentions.to_string(), "0-0|1-1|2-2");
        assert!(predict(&s, &g, &[] as &[&str]).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LinearScorer::zeros(0).is_err());
        assert!(LinearScorer::from_params(vec![]).is_err());
        let mut rows = vec![[0.0; Tag::COUNT]; 2];
        rows[1][3] = f64::NAN;
        assert!(matches!(
            LinearScorer::from_params(rows),
            Err(Error::NonFiniteWeight {
                row: 1,
                tag: Tag::DbBx
            })
        ));
    }
}

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Grammar;
use crate::error::Result;
use crate::model::{predict, LinearScorer};
use crate::scheme::Tag;

/// `count` random sentences of `n` tokens drawn from a 500-word vocabulary.
pub fn synthetic_sentences(count: usize, n: usize, seed: u64) -> Vec<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| format!("w{}", rng.gen_range(0..500)))
                .collect()
        })
        .collect()
}

/// A scorer with parameters uniform in `[-scale, scale]`.
pub fn random_scorer(dim: usize, scale: f64, seed: u64) -> Result<LinearScorer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = (0..dim)
        .map(|_| std::array::from_fn::<f64, { Tag::COUNT }, _>(|_| rng.gen_range(-scale..=scale)))
        .collect();
    LinearScorer::from_params(params)
}

/// Median wall time of `runs` sequential passes of [`predict`] over
/// `sentences`, after one untimed warm-up pass.
pub fn time_predict(
    scorer: &LinearScorer,
    grammar: &Grammar,
    sentences: &[Vec<String>],
    runs: usize,
) -> Result<Duration> {
    for tokens in sentences {
        predict(scorer, grammar, tokens)?;
    }
    let mut times = Vec::with_capacity(runs.max(1));
    for _ in 0..runs.max(1) {
        let start = Instant::now();
        for tokens in sentences {
            predict(scorer, grammar, tokens)?;
        }
        times.push(start.elapsed());
    }
    times.sort();
    Ok(times[times.len() / 2])
}

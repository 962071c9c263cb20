use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::scorer::{LinearScorer, DEFAULT_DIM};
use crate::automata::{Grammar, Lattice};
use crate::corpus::CorpusRecord;
use crate::error::{Error, Result};
use crate::inference::{hard_em_step, nll, partial_nll, Loss, PartialLabelSet};
use crate::scheme::{encode, Mode, TagSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LossKind {
    /// Likelihood of the fully typed gold sequence.
    #[default]
    Nll,
    /// Likelihood marginalized over the orientations of untyped sets.
    Partial,
    /// Likelihood of the best-scoring orientation of untyped sets.
    HardEm,
}

impl LossKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LossKind::Nll => "nll",
            LossKind::Partial => "partial",
            LossKind::HardEm => "hard-em",
        }
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nll" => Ok(LossKind::Nll),
            "partial" => Ok(LossKind::Partial),
            "hard-em" => Ok(LossKind::HardEm),
            _ => Err(Error::Config(format!(
                "unknown loss {s:?} (expected nll, partial or hard-em)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub loss: LossKind,
    pub epochs: usize,
    pub learning_rate: f64,
    /// L2 penalty, applied to the parameter rows touched by each update.
    pub l2: f64,
    /// Seed of the per-epoch shuffle.
    pub seed: u64,
    pub mode: Mode,
    pub dim: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            loss: LossKind::Nll,
            epochs: 20,
            learning_rate: 0.1,
            l2: 0.0,
            seed: 0,
            mode: Mode::Semantic,
            dim: DEFAULT_DIM,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be at least 1".into()));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Config(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return Err(Error::Config(format!(
                "l2 must be non-negative, got {}",
                self.l2
            )));
        }
        if self.dim == 0 {
            return Err(Error::Config("feature dimension must be positive".into()));
        }
        if self.mode == Mode::Structural && self.loss != LossKind::Nll {
            return Err(Error::Config(format!(
                "the {} loss needs semantic mode; structural types are never ambiguous",
                self.loss
            )));
        }
        Ok(())
    }
}

enum Target {
    Gold(TagSequence),
    Partial(PartialLabelSet),
}

fn target(record: &CorpusRecord, cfg: &TrainConfig) -> Result<Target> {
    let ann = record.annotation()?;
    Ok(match (cfg.loss, cfg.mode) {
        (LossKind::Nll, Mode::Structural) => Target::Gold(encode(&ann.to_structural())?),
        (LossKind::Nll, Mode::Semantic) => Target::Gold(encode(&ann)?),
        (LossKind::Partial | LossKind::HardEm, _) => Target::Partial(PartialLabelSet::new(ann)?),
    })
}

pub fn train(records: &[CorpusRecord], cfg: &TrainConfig) -> Result<LinearScorer> {
    Ok(train_with_history(records, cfg)?.0)
}

/// Trains with plain SGD and also returns the mean loss of every epoch.
///
/// Records must be compatible with the two-layer representation; run
/// [`filter_incompatible`](crate::corpus::filter_incompatible) first.
pub fn train_with_history(
    records: &[CorpusRecord],
    cfg: &TrainConfig,
) -> Result<(LinearScorer, Vec<f64>)> {
    cfg.validate()?;
    let grammar = Grammar::new(cfg.mode);
    let targets: Vec<Target> = records
        .iter()
        .map(|r| target(r, cfg))
        .collect::<Result<_>>()?;
    let mut scorer = LinearScorer::zeros(cfg.dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..records.len()).collect();
    let mut history = Vec::with_capacity(cfg.epochs);

    for epoch in 1..=cfg.epochs {
        order.shuffle(&mut rng);
        let mut total = 0.0;
        for &k in &order {
            let tokens = records[k].tokens();
            let w = scorer.score(tokens);
            let lattice = Lattice::new(&grammar, tokens.len())?;
            let Loss { value, grad } = match &targets[k] {
                Target::Gold(gold) => nll(&lattice, &w, gold)?,
                Target::Partial(pl) if cfg.loss == LossKind::HardEm => {
                    hard_em_step(&lattice, &w, pl)?.0
                }
                Target::Partial(pl) => partial_nll(&lattice, &w, pl)?,
            };
            total += value;
            for (f, g) in scorer.backprop(tokens, &grad) {
                for t in crate::scheme::Tag::ALL {
                    let p = scorer.param(f, t);
                    let updated = p - cfg.learning_rate * (g[t.index()] + cfg.l2 * p);
                    if !updated.is_finite() {
                        return Err(Error::Config(format!(
                            "training diverged in epoch {epoch}; lower the learning rate"
                        )));
                    }
                    scorer.set_param(f, t, updated);
                }
            }
        }
        let mean = if records.is_empty() {
            0.0
        } else {
            total / records.len() as f64
        };
        log::info!(
            "epoch {epoch}/{}: mean {} loss {mean:.6}",
            cfg.epochs,
            cfg.loss
        );
        history.push(mean);
    }
    Ok((scorer, history))
}

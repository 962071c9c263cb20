//! A hashed-feature linear scorer mapping sentences to tag weights, and an
//! SGD trainer over the three losses.

mod features;
mod io;
mod scorer;
mod train;

pub use features::{features, FeatureTemplate};
pub use scorer::{predict, predict_batch, predict_tags, LinearScorer, DEFAULT_DIM};
pub use train::{train, train_with_history, LossKind, TrainConfig};

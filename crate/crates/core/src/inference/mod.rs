//! Dynamic programs on the lattice and the training losses built on them.

mod dp;
mod loss;
mod partial;
mod semiring;

pub use dp::{backward_distance, forward, marginals, shortest_distance, viterbi};
pub use loss::{hard_em_step, nll, partial_nll, Loss};
pub use partial::{clamped_log_partition, clamped_marginals, PartialLabelSet};
pub use semiring::{LogSemiring, Semiring, Tropical};

//! Sound tagging for discontinuous named-entity recognition.
//!
//! Discontinuous mentions are grouped into *sets of mentions*, each split into
//! contiguous components typed `x` or `y`. The mentions of a set are the
//! Cartesian product of its `x` components with its `y` components. The
//! two-layer structure is written as a sequence over ten tags, and every
//! well-formed tag sequence maps back to exactly one mention set.
//!
//! Prediction and training run on the intersection of a grammar automaton
//! (whose language is the set of well-formed tag sequences) with a per-sentence
//! chain of tag weights, so both MAP and marginal inference are linear in the
//! sentence length and can never produce an ill-formed output.
//!
//! ```
//! use discner::{decode, intersect, viterbi, Grammar, Mode, WeightMatrix};
//!
//! let grammar = Grammar::new(Mode::Semantic);
//! let weights = WeightMatrix::zeros(4);
//! let lattice = intersect(&grammar, &weights).unwrap();
//! let (score, tags) = viterbi(&lattice, &weights).unwrap();
//! assert_eq!(score, 0.0);
//! assert!(decode(&tags).is_ok());
//! ```
//!
//! Module map:
//!
//! - [`scheme`]: tags, mentions, the two-layer representation and the
//!   mention-set / tag-sequence mapping.
//! - [`automata`]: weighted automata, the grammar automaton and the lattice.
//! - [`inference`]: Viterbi, forward, marginals and the training losses.
//! - [`model`]: a hashed-feature linear scorer and its SGD trainer.
//! - [`corpus`]: file formats, filtering, statistics, silver typing and
//!   evaluation.

pub mod automata;
pub mod corpus;
mod error;
pub mod inference;
pub mod model;
pub mod scheme;
mod weights;

pub use automata::{intersect, Automaton, Grammar, Lattice};
pub use corpus::{evaluate, read_corpus, write_corpus, CorpusRecord, EvalReport, Lexicon};
pub use error::{Error, IncompatibleReason, Result};
pub use inference::{
    clamped_log_partition, forward, hard_em_step, marginals, nll, partial_nll, viterbi,
    PartialLabelSet,
};
pub use model::{predict, train, LinearScorer, LossKind, TrainConfig};
pub use scheme::{
    decode, encode, from_two_layer, is_well_formed, to_two_layer, ComponentType, Interval, Mention,
    MentionSet, Mode, SentenceAnnotation, Tag, TagSequence, TwoLayerSet,
};
pub use weights::{MarginalTable, TagMatrix, WeightMatrix};

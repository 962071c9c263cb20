//! Corpus files, incompatibility filtering, statistics, lexicon-based silver
//! typing and mention-level evaluation.
//!
//! # Corpus format
//!
//! Records are separated by one blank line. Each record is:
//!
//! 1. the space-separated tokens;
//! 2. the mentions, separated by `|`, each written as its fragments `b-e`
//!    (0-based, inclusive) joined by `;`, e.g. `0-1;4-4|0-2`. The line is
//!    empty when the sentence has no mention;
//! 3. optionally, component types as space-separated `b-e:x` / `b-e:y`
//!    entries.
//!
//! ```text
//! pain in arms and shoulders
//! 0-1;4-4|0-2
//!
//! no mention here
//!
//! ```

mod bench;
mod eval;
mod filter;
mod io;
mod silver;

pub use bench::{random_scorer, synthetic_sentences, time_predict};
pub use eval::{evaluate, EvalReport, Prf};
pub use filter::{filter_incompatible, stats, CorpusStats, DroppedRecord, FilterOutcome};
pub use io::{
    format_corpus, format_tag_file, parse_corpus, parse_tag_file, read_corpus, read_tag_file,
    write_corpus, write_tag_file, CorpusRecord,
};
pub use silver::{silver_corpus, silver_type, Lexicon};

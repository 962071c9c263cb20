use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, IncompatibleReason};

use super::io::CorpusRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DroppedRecord {
    /// Position of the record in the input.
    pub index: usize,
    pub reason: IncompatibleReason,
}

#[derive(Debug, Clone, Default)]
pub struct FilterOutcome {
    pub kept: Vec<CorpusRecord>,
    pub dropped: Vec<DroppedRecord>,
}

impl FilterOutcome {
    /// Number of dropped records per reason; every reason is present.
    pub fn counts(&self) -> BTreeMap<IncompatibleReason, usize> {
        let mut counts: BTreeMap<_, _> = IncompatibleReason::ALL.iter().map(|&r| (r, 0)).collect();
        for d in &self.dropped {
            *counts.entry(d.reason).or_default() += 1;
        }
        counts
    }
}

fn incompatibility(record: &CorpusRecord) -> Option<IncompatibleReason> {
    match record.annotation() {
        Ok(_) => None,
        Err(Error::Incompatible(reason)) => Some(reason),
        Err(e) => unreachable!("a valid record only fails conversion as incompatible: {e}"),
    }
}

/// Splits records into those the two-layer representation can express and
/// those it cannot, keeping input order in both.
pub fn filter_incompatible(records: &[CorpusRecord]) -> FilterOutcome {
    let reasons: Vec<Option<IncompatibleReason>> =
        records.par_iter().map(incompatibility).collect();
    let mut outcome = FilterOutcome::default();
    for (index, (record, reason)) in records.iter().zip(reasons).enumerate() {
        match reason {
            None => outcome.kept.push(record.clone()),
            Some(reason) => outcome.dropped.push(DroppedRecord { index, reason }),
        }
    }
    outcome
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CorpusStats {
    pub sentences: usize,
    pub mentions: usize,
    pub discontinuous: usize,
    pub incompatible: usize,
}

pub fn stats(records: &[CorpusRecord]) -> CorpusStats {
    let incompatible = records
        .par_iter()
        .filter(|r| incompatibility(r).is_some())
        .count();
    CorpusStats {
        sentences: records.len(),
        mentions: records.iter().map(|r| r.mentions().len()).sum(),
        discontinuous: records
            .iter()
            .map(|r| r.mentions().discontinuous().count())
            .sum(),
        incompatible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_corpus;

    const MIXED: &str = "\
a b c d e f g h
0-0;3-5|0-0;3-4;7-7|2-5|2-4;7-7

a b c
0-0

a b c d e
0-0;3-3|1-1;3-3|1-1;4-4

a b c d e
0-0;2-2|0-0;4-4

a b c d e f g
0-0;2-2;4-4;6-6
";

    #[test]
    fn continuous_corpus_drops_nothing() {
        let records = parse_corpus("a b c\n0-1|2-2\n\nd e\n\n").unwrap();
        let out = filter_incompatible(&records);
        assert_eq!(out.kept.len(), 2);
        assert!(out.dropped.is_empty());
        assert!(out.counts().values().all(|&c| c == 0));
    }

    #[test]
    fn mixed_corpus_reports_reasons() {
        let records = parse_corpus(MIXED).unwrap();
        let out = filter_incompatible(&records);
        assert_eq!(out.kept.len(), 2);
        assert_eq!(
            out.dropped,
            vec![
                DroppedRecord {
                    index: 0,
                    reason: IncompatibleReason::ThreeWaySplit
                },
                DroppedRecord {
                    index: 2,
                    reason: IncompatibleReason::PartialOverlap
                },
                DroppedRecord {
                    index: 4,
                    reason: IncompatibleReason::ThreeWaySplit
                },
            ]
        );
        let counts = out.counts();
        assert_eq!(counts[&IncompatibleReason::ThreeWaySplit], 2);
        assert_eq!(counts[&IncompatibleReason::PartialOverlap], 1);
        assert_eq!(counts[&IncompatibleReason::SpanConflict], 0);
        assert!(filter_incompatible(&out.kept).dropped.is_empty());
    }

    #[test]
    fn stats_count_by_hand() {
        assert_eq!(stats(&[]), CorpusStats::default());
        let one = parse_corpus("pain in arms and shoulders\n0-1;2-2|0-1;4-4\n").unwrap();
        assert_eq!(
            stats(&one),
            CorpusStats {
                sentences: 1,
                mentions: 2,
                discontinuous: 1,
                incompatible: 0
            }
        );
        let mixed = parse_corpus(MIXED).unwrap();
        assert_eq!(
            stats(&mixed),
            CorpusStats {
                sentences: 5,
                mentions: 11,
                discontinuous: 9,
                incompatible: 3
            }
        );
    }
}

use std::fmt;

use crate::error::{Error, Result};
use crate::scheme::{Mention, MentionSet};

/// Precision, recall and F1 with the underlying counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub gold: usize,
    pub predicted: usize,
    pub matched: usize,
}

impl Prf {
    /// An empty side yields 0 for its ratio, except that two empty sides
    /// agree perfectly.
    pub fn from_counts(gold: usize, predicted: usize, matched: usize) -> Self {
        if gold == 0 && predicted == 0 {
            return Prf {
                precision: 1.0,
                recall: 1.0,
                f1: 1.0,
                gold,
                predicted,
                matched,
            };
        }
        let ratio = |num: usize, den: usize| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(matched, predicted);
        let recall = ratio(matched, gold);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Prf {
            precision,
            recall,
            f1,
            gold,
            predicted,
            matched,
        }
    }
}

impl fmt::Display for Prf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P={:.4} R={:.4} F1={:.4} (gold={} predicted={} matched={})",
            self.precision, self.recall, self.f1, self.gold, self.predicted, self.matched
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub overall: Prf,
    /// Restricted to mentions with more than one fragment.
    pub discontinuous: Prf,
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "overall       {}", self.overall)?;
        write!(f, "discontinuous {}", self.discontinuous)
    }
}

#[derive(Default)]
struct Counts {
    gold: usize,
    predicted: usize,
    matched: usize,
}

impl Counts {
    fn add<'a>(
        &mut self,
        gold: impl Iterator<Item = &'a Mention>,
        pred: &MentionSet,
        keep: impl Fn(&Mention) -> bool,
    ) {
        for m in gold.filter(|m| keep(m)) {
            self.gold += 1;
            self.matched += usize::from(pred.contains(m));
        }
        self.predicted += pred.iter().filter(|m| keep(m)).count();
    }

    fn prf(&self) -> Prf {
        Prf::from_counts(self.gold, self.predicted, self.matched)
    }
}

/// Exact-match mention evaluation over aligned sentences.
pub fn evaluate(gold: &[MentionSet], predicted: &[MentionSet]) -> Result<EvalReport> {
    if gold.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            gold: gold.len(),
            predicted: predicted.len(),
        });
    }
    let mut overall = Counts::default();
    let mut discontinuous = Counts::default();
    for (g, p) in gold.iter().zip(predicted) {
        overall.add(g.iter(), p, |_| true);
        discontinuous.add(g.iter(), p, |m| !m.is_continuous());
    }
    Ok(EvalReport {
        overall: overall.prf(),
        discontinuous: discontinuous.prf(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(items: &[&str]) -> Vec<MentionSet> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn identical_predictions_score_one() {
        let gold = sets(&["0-1;4-4|0-2", "", "3-3"]);
        let report = evaluate(&gold, &gold).unwrap();
        assert_eq!(report.overall.f1, 1.0);
        assert_eq!(report.overall.matched, 3);
        assert_eq!(report.discontinuous.f1, 1.0);
        assert_eq!(report.discontinuous.gold, 1);
    }

    #[test]
    fn empty_predictions_score_zero() {
        let gold = sets(&["0-1;4-4|0-2", "3-3"]);
        let report = evaluate(&gold, &sets(&["", ""])).unwrap();
        assert_eq!(
            (
                report.overall.precision,
                report.overall.recall,
                report.overall.f1
            ),
            (0.0, 0.0, 0.0)
        );
        assert_eq!(report.discontinuous.f1, 0.0);
    }

    #[test]
    fn half_matched() {
        let gold = sets(&["0-1|3-4"]);
        let pred = sets(&["0-1|2-2"]);
        let r = evaluate(&gold, &pred).unwrap().overall;
        assert_eq!((r.precision, r.recall, r.f1), (0.5, 0.5, 0.5));
        assert_eq!((r.gold, r.predicted, r.matched), (2, 2, 1));
    }

    #[test]
    fn discontinuous_only_and_symmetry() {
        let gold = sets(&["0-0;2-2|0-0;4-4|1-1", "0-3"]);
        let pred = sets(&["0-0;2-2|1-1", "0-0;3-3"]);
        let r = evaluate(&gold, &pred).unwrap();
        assert_eq!(
            (
                r.discontinuous.gold,
                r.discontinuous.predicted,
                r.discontinuous.matched
            ),
            (2, 2, 1)
        );
        let swapped = evaluate(&pred, &gold).unwrap();
        assert_eq!(swapped.overall.precision, r.overall.recall);
        assert_eq!(swapped.overall.recall, r.overall.precision);
        assert_eq!(swapped.overall.f1, r.overall.f1);
    }

    #[test]
    fn length_mismatch() {
        let err = evaluate(&sets(&["0-0"]), &[]).unwrap_err();
        assert!(matches!(
            err,
            Error::LengthMismatch {
                gold: 1,
                predicted: 0
            }
        ));
    }
}

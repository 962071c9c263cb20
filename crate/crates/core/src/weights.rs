use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scheme::{Tag, TagSequence};

/// An `n × 10` matrix with one row per word and one column per tag.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TagMatrix {
    rows: Vec<[f64; Tag::COUNT]>,
}

/// Tag scores, entry `(i, t)` scoring tag `t` on word `i`.
pub type WeightMatrix = TagMatrix;

/// Posterior tag probabilities.
pub type MarginalTable = TagMatrix;

impl TagMatrix {
    /// Rejects non-finite entries.
    pub fn new(rows: Vec<[f64; Tag::COUNT]>) -> Result<Self> {
        for (row, values) in rows.iter().enumerate() {
            if let Some(t) = values.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFiniteWeight {
                    row,
                    tag: Tag::ALL[t],
                });
            }
        }
        Ok(TagMatrix { rows })
    }

    pub fn zeros(n: usize) -> Self {
        TagMatrix {
            rows: vec![[0.0; Tag::COUNT]; n],
        }
    }

    /// Row-major values, `n * 10` of them.
    pub fn from_flat(values: &[f64]) -> Result<Self> {
        if !values.len().is_multiple_of(Tag::COUNT) {
            return Err(Error::ShapeMismatch(format!(
                "{} values is not a multiple of {}",
                values.len(),
                Tag::COUNT
            )));
        }
        TagMatrix::new(
            values
                .chunks_exact(Tag::COUNT)
                .map(|c| c.try_into().expect("chunk of COUNT"))
                .collect(),
        )
    }

    /// The 0/1 matrix with a single one per row.
    pub fn one_hot(ts: &TagSequence) -> Self {
        let mut m = TagMatrix::zeros(ts.len());
        for (i, t) in ts.iter().enumerate() {
            m.rows[i][t.index()] = 1.0;
        }
        m
    }

    /// Number of words.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[f64; Tag::COUNT]] {
        &self.rows
    }

    pub fn get(&self, i: usize, t: Tag) -> f64 {
        self.rows[i][t.index()]
    }

    pub fn set(&mut self, i: usize, t: Tag, value: f64) {
        self.rows[i][t.index()] = value;
    }

    pub fn flat(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().flatten().copied()
    }

    /// `⟨y, w⟩`: sum of the entries picked by the sequence, left to right.
    pub fn score(&self, ts: &TagSequence) -> f64 {
        ts.iter()
            .enumerate()
            .fold(0.0, |acc, (i, t)| acc + self.rows[i][t.index()])
    }

    pub fn dot(&self, other: &TagMatrix) -> f64 {
        self.flat().zip(other.flat()).map(|(a, b)| a * b).sum()
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&mut self, alpha: f64, other: &TagMatrix) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += alpha * y;
            }
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> TagMatrix {
        TagMatrix {
            rows: self.rows.iter().map(|r| r.map(&f)).collect(),
        }
    }

    pub fn ensure_rows(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::ShapeMismatch(format!(
                "expected {n} rows, got {}",
                self.n()
            )));
        }
        Ok(())
    }
}

impl Index<(usize, Tag)> for TagMatrix {
    type Output = f64;

    fn index(&self, (i, t): (usize, Tag)) -> &f64 {
        &self.rows[i][t.index()]
    }
}

impl IndexMut<(usize, Tag)> for TagMatrix {
    fn index_mut(&mut self, (i, t): (usize, Tag)) -> &mut f64 {
        &mut self.rows[i][t.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        let mut rows = vec![[0.0; Tag::COUNT]; 2];
        rows[1][3] = f64::NAN;
        assert!(matches!(
            TagMatrix::new(rows),
            Err(Error::NonFiniteWeight {
                row: 1,
                tag: Tag::DbBx
            })
        ));
    }

    #[test]
    fn one_hot_has_one_per_row() {
        let ts: TagSequence = "O CB CI".parse().unwrap();
        let m = TagMatrix::one_hot(&ts);
        for row in m.rows() {
            assert_eq!(row.iter().sum::<f64>(), 1.0);
        }
        assert_eq!(m[(1, Tag::Cb)], 1.0);
        assert_eq!(m.dot(&m), 3.0);
    }
}

/// A commutative semiring over `f64` scores.
pub trait Semiring: Copy + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(self, other: Self) -> Self;
    fn times(self, other: Self) -> Self;
    fn from_weight(w: f64) -> Self;
    fn value(self) -> f64;

    /// `⊕` over many values.
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Self::plus)
    }
}

/// `(max, +, -∞, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tropical(pub f64);

impl Semiring for Tropical {
    fn zero() -> Self {
        Tropical(f64::NEG_INFINITY)
    }

    fn one() -> Self {
        Tropical(0.0)
    }

    fn plus(self, other: Self) -> Self {
        Tropical(self.0.max(other.0))
    }

    fn times(self, other: Self) -> Self {
        Tropical(self.0 + other.0)
    }

    fn from_weight(w: f64) -> Self {
        Tropical(w)
    }

    fn value(self) -> f64 {
        self.0
    }
}

/// `(log-add-exp, +, -∞, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogSemiring(pub f64);

impl Semiring for LogSemiring {
    fn zero() -> Self {
        LogSemiring(f64::NEG_INFINITY)
    }

    fn one() -> Self {
        LogSemiring(0.0)
    }

    fn plus(self, other: Self) -> Self {
        let (hi, lo) = if self.0 >= other.0 {
            (self.0, other.0)
        } else {
            (other.0, self.0)
        };
        if lo == f64::NEG_INFINITY {
            return LogSemiring(hi);
        }
        LogSemiring(hi + (lo - hi).exp().ln_1p())
    }

    fn times(self, other: Self) -> Self {
        LogSemiring(self.0 + other.0)
    }

    fn from_weight(w: f64) -> Self {
        LogSemiring(w)
    }

    fn value(self) -> f64 {
        self.0
    }

    /// Single pass, rescaling the running sum whenever the maximum grows.
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let (mut max, mut acc) = (f64::NEG_INFINITY, 0.0);
        for LogSemiring(v) in iter {
            if v == f64::NEG_INFINITY {
                continue;
            }
            if v <= max {
                acc += (v - max).exp();
            } else {
                acc = acc * (max - v).exp() + 1.0;
                max = v;
            }
        }
        if max == f64::NEG_INFINITY {
            return LogSemiring(max);
        }
        LogSemiring(max + acc.ln())
    }
}

/// Max-shifted `log Σ exp`; `-∞` for an empty slice.
pub(crate) fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

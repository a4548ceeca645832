//! Environment vectors: transition probabilities in `(0,1)` and positive
//! weight vectors used by the cyclic-product machinery.

use std::fmt;
use std::ops::Deref;

use num::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{is_unit_interior, parse_rational, Rational};

/// Right-step probabilities `p_0, ..., p_{m-1}`, each strictly inside `(0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProbabilityVector(Vec<Rational>);

impl ProbabilityVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = entries.iter().position(|x| !is_unit_interior(x)) {
            return Err(Error::OutOfRange(i));
        }
        Ok(Self(entries))
    }

    pub fn parse<S: AsRef<str>>(literals: &[S]) -> Result<Self> {
        let entries = literals
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    /// Rearranged copy with `result[i] = self[order[i]]`. `order` must be a
    /// permutation of `0..m`.
    pub fn arranged(&self, order: &[usize]) -> Self {
        Self(order.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn rotated(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        let m = v.len();
        v.rotate_left(k % m);
        Self(v)
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().cloned().collect())
    }

    /// Environment of the space-reflected walk `-X`:
    /// `q_i = 1 - p_{(m - i) mod m}`.
    pub fn reflected(&self) -> Self {
        let m = self.0.len();
        Self(
            (0..m)
                .map(|i| Rational::one() - &self.0[(m - i) % m])
                .collect(),
        )
    }

    /// Elementwise `1 - p_i`, without reindexing.
    pub fn complemented(&self) -> Self {
        Self(self.0.iter().map(|x| Rational::one() - x).collect())
    }

    /// First index where the entries increase, if any.
    pub fn first_increase(&self) -> Option<usize> {
        first_increase(&self.0)
    }
}

impl Deref for ProbabilityVector {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for ProbabilityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A vector with strictly positive rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveVector(Vec<Rational>);

impl PositiveVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = entries.iter().position(|x| !x.is_positive()) {
            return Err(Error::NotPositive(i));
        }
        Ok(Self(entries))
    }

    pub fn parse<S: AsRef<str>>(literals: &[S]) -> Result<Self> {
        let entries = literals
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn arranged(&self, order: &[usize]) -> Self {
        Self(order.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn reciprocal(&self) -> Self {
        Self(self.0.iter().map(|x| x.recip()).collect())
    }

    pub fn product(&self) -> Rational {
        self.0.iter().product()
    }

    pub fn first_increase(&self) -> Option<usize> {
        first_increase(&self.0)
    }
}

impl Deref for PositiveVector {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for PositiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl From<&ProbabilityVector> for PositiveVector {
    fn from(p: &ProbabilityVector) -> Self {
        Self(p.0.clone())
    }
}

fn first_increase(xs: &[Rational]) -> Option<usize> {
    xs.windows(2).position(|w| w[1] > w[0]).map(|i| i + 1)
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[Rational]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

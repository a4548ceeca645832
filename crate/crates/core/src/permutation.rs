//! Permutations of `{0, ..., m-1}` stored as image tables, with the inverse
//! materialized on construction.
//!
//! A permutation acts on vectors by `x_σ[i] = x[σ⁻¹(i)]`, so the entry that
//! sat at index `j` moves to index `σ(j)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    /// `images[i] = σ(i)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let inverse = invert(&images).ok_or(Error::NotAPermutation(images.len()))?;
        Ok(Self { images, inverse })
    }

    /// Build from the inverse table, `preimages[i] = σ⁻¹(i)`.
    pub fn from_inverse(preimages: Vec<usize>) -> Result<Self> {
        let images = invert(&preimages).ok_or(Error::NotAPermutation(preimages.len()))?;
        Ok(Self {
            images,
            inverse: preimages,
        })
    }

    pub fn identity(m: usize) -> Self {
        let images: Vec<usize> = (0..m).collect();
        Self {
            inverse: images.clone(),
            images,
        }
    }

    /// Parses the compact notation `(0231)` (single digits) or a
    /// comma/space separated list such as `3,5,10,6,2,4`.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.trim().trim_start_matches('(').trim_end_matches(')');
        let err = || Error::Parse(text.to_string());
        let images: Vec<usize> = if body.contains([',', ' ']) {
            body.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| err()))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
                .collect::<Result<_>>()?
        };
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn preimage(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        Self {
            images: self.inverse.clone(),
            inverse: self.images.clone(),
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::LengthMismatch {
                expected: self.degree(),
                actual: other.degree(),
            });
        }
        Self::new(other.images.iter().map(|&j| self.images[j]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.degree() > 10 { "," } else { "" };
        f.write_str("(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn invert(table: &[usize]) -> Option<Vec<usize>> {
    let m = table.len();
    let mut inverse = vec![usize::MAX; m];
    for (i, &j) in table.iter().enumerate() {
        if j >= m || inverse[j] != usize::MAX {
            return None;
        }
        inverse[j] = i;
    }
    Some(inverse)
}

/// `x_σ`, i.e. `result[i] = x[σ⁻¹(i)]`.
pub fn apply_permutation<T: Clone>(x: &[T], sigma: &Permutation) -> Result<Vec<T>> {
    if x.len() != sigma.degree() {
        return Err(Error::LengthMismatch {
            expected: sigma.degree(),
            actual: x.len(),
        });
    }
    Ok(sigma.inverse.iter().map(|&j| x[j].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn action_matches_worked_example() {
        let sigma = Permutation::parse("(0231)").unwrap();
        assert_eq!(sigma.image(1), 2);
        let x = ["x0", "x1", "x2", "x3"];
        assert_eq!(apply_permutation(&x, &sigma).unwrap(), ["x0", "x3", "x1", "x2"]);
    }

    #[test]
    fn identity_and_swap() {
        let x = [4, 5, 6];
        assert_eq!(apply_permutation(&x, &Permutation::identity(3)).unwrap(), x);
        let swap = Permutation::parse("(10)").unwrap();
        assert_eq!(apply_permutation(&['a', 'b'], &swap).unwrap(), ['b', 'a']);
    }

    #[test]
    fn errors() {
        assert_eq!(
            apply_permutation(&[1, 2], &Permutation::identity(3)),
            Err(Error::LengthMismatch { expected: 3, actual: 2 })
        );
        assert_eq!(Permutation::new(vec![0, 0]), Err(Error::NotAPermutation(2)));
        assert_eq!(Permutation::new(vec![0, 2]), Err(Error::NotAPermutation(2)));
        assert_eq!(
            Permutation::parse("3,5,10,6,2,4,0,1,7,8,9").unwrap().image(2),
            10
        );
    }

    fn perm_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        (1usize..9).prop_flat_map(|m| {
            let base: Vec<usize> = (0..m).collect();
            (Just(base.clone()).prop_shuffle(), Just(base).prop_shuffle())
        })
    }

    proptest! {
        #[test]
        fn action_is_a_group_action((s, t) in perm_pair()) {
            let sigma = Permutation::new(s).unwrap();
            let tau = Permutation::new(t).unwrap();
            let x: Vec<usize> = (0..sigma.degree()).map(|i| 10 * i + 7).collect();
            let step = apply_permutation(&apply_permutation(&x, &tau).unwrap(), &sigma).unwrap();
            let once = apply_permutation(&x, &sigma.compose(&tau).unwrap()).unwrap();
            prop_assert_eq!(step, once);
            prop_assert!(sigma.compose(&sigma.inverse()).unwrap().is_identity());
        }
    }
}

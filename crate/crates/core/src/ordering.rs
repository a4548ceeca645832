//! Cyclic arrangements up to rotation and reversal (dihedral classes).
//!
//! An ordering `(i_0, ..., i_{m-1})` arranges a vector `x` around a cycle as
//! `(x[i_0], ..., x[i_{m-1}])`. The canonical representative of a class
//! starts with `0` and, for `m >= 3`, has `i_1 < i_{m-1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicOrdering(Vec<usize>);

impl CyclicOrdering {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The permutation σ with `x_σ = arrange(x)`, i.e. `σ⁻¹(i) = indices[i]`.
    pub fn permutation(&self) -> Permutation {
        Permutation::from_inverse(self.0.clone()).expect("ordering holds a permutation")
    }

    pub fn arrange<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| x[i].clone()).collect()
    }
}

impl fmt::Display for CyclicOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub fn canonical_ordering(indices: &[usize]) -> Result<CyclicOrdering> {
    let m = indices.len();
    let mut seen = vec![false; m];
    for &i in indices {
        if i >= m || seen[i] {
            return Err(Error::NotAPermutation(m));
        }
        seen[i] = true;
    }
    if m == 0 {
        return Err(Error::Empty);
    }
    let start = indices.iter().position(|&i| i == 0).unwrap();
    let forward: Vec<usize> = (0..m).map(|k| indices[(start + k) % m]).collect();
    let backward: Vec<usize> = (0..m).map(|k| indices[(start + m - k) % m]).collect();
    Ok(CyclicOrdering(forward.min(backward)))
}

/// The number of dihedral classes of cyclic arrangements of `m` items.
pub fn class_count(m: usize) -> u128 {
    if m <= 2 {
        1
    } else {
        (1..m as u128).product::<u128>() / 2
    }
}

/// Canonical representatives in lexicographic order, one per class.
pub fn enumerate_dihedral_classes(m: usize) -> DihedralClasses {
    DihedralClasses {
        m,
        current: (0..m).collect(),
        done: m == 0,
    }
}

#[derive(Debug, Clone)]
pub struct DihedralClasses {
    m: usize,
    current: Vec<usize>,
    done: bool,
}

impl Iterator for DihedralClasses {
    type Item = CyclicOrdering;

    fn next(&mut self) -> Option<CyclicOrdering> {
        while !self.done {
            let candidate = self.current.clone();
            self.done = !next_permutation(&mut self.current[1..]);
            if self.m < 3 || candidate[1] < candidate[self.m - 1] {
                return Some(CyclicOrdering(candidate));
            }
        }
        None
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(xs: &[usize]) -> Vec<usize> {
        canonical_ordering(xs).unwrap().indices().to_vec()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(class(&[2, 0, 1]), [0, 1, 2]);
        assert_eq!(class(&[0, 3, 2, 1]), [0, 1, 2, 3]);
        assert_eq!(class(&[1, 3, 0, 2]), [0, 2, 1, 3]);
        assert_eq!(
            canonical_ordering(&[0, 0, 1]),
            Err(Error::NotAPermutation(3))
        );
    }

    #[test]
    fn canonical_matches_dihedral_brute_force() {
        // minimum over all 2m rotations/reflections that start with 0
        let x = [1usize, 3, 0, 2];
        let m = x.len();
        let mut images = Vec::new();
        for k in 0..m {
            let rot: Vec<usize> = (0..m).map(|i| x[(i + k) % m]).collect();
            let mut rev = rot.clone();
            rev.reverse();
            images.push(rot);
            images.push(rev);
        }
        let best = images.into_iter().filter(|v| v[0] == 0).min().unwrap();
        assert_eq!(class(&x), best);
    }

    #[test]
    fn small_enumerations() {
        let m3: Vec<_> = enumerate_dihedral_classes(3).map(|c| c.0).collect();
        assert_eq!(m3, vec![vec![0, 1, 2]]);
        let m4: Vec<_> = enumerate_dihedral_classes(4).map(|c| c.0).collect();
        assert_eq!(m4, vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![0, 2, 1, 3]]);
        let m1: Vec<_> = enumerate_dihedral_classes(1).map(|c| c.0).collect();
        assert_eq!(m1, vec![vec![0]]);
        assert_eq!(enumerate_dihedral_classes(2).count(), 1);
    }

    #[test]
    fn enumeration_counts_match_all_permutation_canonicalization() {
        for m in 1..=7 {
            let listed: Vec<_> = enumerate_dihedral_classes(m).collect();
            assert_eq!(listed.len() as u128, class_count(m));
            let mut all = std::collections::BTreeSet::new();
            let mut perm: Vec<usize> = (0..m).collect();
            loop {
                all.insert(canonical_ordering(&perm).unwrap());
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            assert_eq!(all.into_iter().collect::<Vec<_>>(), listed, "m = {m}");
        }
    }

    fn ordering_with_moves() -> impl Strategy<Value = (Vec<usize>, usize, bool)> {
        (1usize..10).prop_flat_map(|m| {
            let base: Vec<usize> = (0..m).collect();
            (Just(base).prop_shuffle(), 0..m, any::<bool>())
        })
    }

    proptest! {
        #[test]
        fn canonical_is_orbit_invariant((xs, k, flip) in ordering_with_moves()) {
            let c = canonical_ordering(&xs).unwrap();
            let mut moved = xs.clone();
            moved.rotate_left(k);
            if flip {
                moved.reverse();
            }
            prop_assert_eq!(canonical_ordering(&moved).unwrap(), c.clone());
            prop_assert_eq!(canonical_ordering(c.indices()).unwrap(), c);
        }
    }
}

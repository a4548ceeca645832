//! Cyclic-product sums `P_r(σ; a) = Σ_k Π_{i<r} a[σ⁻¹(k+i)]` (indices mod m),
//! the greedy permutation and the reciprocal duality identity.

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::{canonical_ordering, CyclicOrdering};
use crate::permutation::{apply_permutation, Permutation};
use crate::rational::Rational;
use crate::vector::PositiveVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicProductValue {
    pub r: usize,
    #[serde(with = "crate::report::rational_str")]
    pub value: Rational,
}

/// `P_r(σ; a)` for a single `r`.
pub fn cyclic_product_sum(
    sigma: &Permutation,
    a: &PositiveVector,
    r: usize,
) -> Result<CyclicProductValue> {
    let m = a.len();
    check_r(r, 1, m)?;
    let arranged = apply_permutation(a.entries(), sigma)?;
    let mut value = Rational::zero();
    for k in 0..m {
        let mut prod = Rational::one();
        for i in 0..r {
            prod *= &arranged[(k + i) % m];
        }
        value += prod;
    }
    Ok(CyclicProductValue { r, value })
}

/// All of `P_1, ..., P_m` of an already arranged vector (identity
/// permutation). `result[r - 1] = P_r`.
pub fn cyclic_product_sums<T>(arranged: &[T]) -> Vec<T>
where
    T: Clone + Zero + One + for<'a> std::ops::MulAssign<&'a T> + for<'a> std::ops::AddAssign<&'a T>,
{
    let m = arranged.len();
    let mut sums = vec![T::zero(); m];
    for k in 0..m {
        let mut prod = T::one();
        for (r, slot) in sums.iter_mut().enumerate() {
            prod *= &arranged[(k + r) % m];
            *slot += &prod;
        }
    }
    sums
}

/// Integer specialization of [`cyclic_product_sums`].
pub fn int_cyclic_product_sums(arranged: &[BigInt]) -> Vec<BigInt> {
    cyclic_product_sums(arranged)
}

/// σ_greedy for degree `m`: `σ⁻¹(i) = 2i`, `σ⁻¹(m-1-i) = 2i+1` for
/// `i < ⌊m/2⌋`; for odd `m` the middle position takes index `m-1`.
pub fn greedy_permutation(m: usize) -> Permutation {
    let mut preimages = vec![0usize; m];
    for i in 0..m / 2 {
        preimages[i] = 2 * i;
        preimages[m - 1 - i] = 2 * i + 1;
    }
    if m % 2 == 1 {
        preimages[m / 2] = m - 1;
    }
    Permutation::from_inverse(preimages).expect("greedy table is a bijection")
}

/// Dihedral class of the greedy arrangement.
pub fn greedy_ordering(m: usize) -> CyclicOrdering {
    canonical_ordering(greedy_permutation(m).inverse_table()).expect("greedy table is a bijection")
}

/// `(a_0, a_2, a_4, ..., a_5, a_3, a_1)` for non-increasing `a`.
pub fn circular_symmetric_order(a: &PositiveVector) -> Result<PositiveVector> {
    if let Some(i) = a.first_increase() {
        return Err(Error::NotSorted(i));
    }
    let arranged = apply_permutation(a.entries(), &greedy_permutation(a.len()))?;
    PositiveVector::new(arranged)
}

/// Checks `P_r(σ; a) = (Π a_i) · P_{m-r}(σ; a⁻¹)` exactly.
pub fn duality_check(sigma: &Permutation, a: &PositiveVector, r: usize) -> Result<bool> {
    let m = a.len();
    check_r(r, 1, m.saturating_sub(1))?;
    let lhs = cyclic_product_sum(sigma, a, r)?.value;
    let rhs = a.product() * cyclic_product_sum(sigma, &a.reciprocal(), m - r)?.value;
    Ok(lhs == rhs)
}

fn check_r(r: usize, lo: usize, hi: usize) -> Result<()> {
    if r < lo || r > hi {
        Err(Error::BadR { r, max: hi })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pv(xs: &[i64]) -> PositiveVector {
        PositiveVector::new(xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn trivial_r_values() {
        let a = pv(&[9, 7, 6, 5, 4, 3]);
        let sigma = Permutation::new(vec![3, 1, 5, 0, 2, 4]).unwrap();
        assert_eq!(cyclic_product_sum(&sigma, &a, 1).unwrap().value, int(34));
        assert_eq!(
            cyclic_product_sum(&sigma, &a, 6).unwrap().value,
            int(6 * 9 * 7 * 6 * 5 * 4 * 3)
        );
        assert_eq!(
            cyclic_product_sum(&sigma, &a, 0),
            Err(Error::BadR { r: 0, max: 6 })
        );
        assert_eq!(
            cyclic_product_sum(&sigma, &a, 7),
            Err(Error::BadR { r: 7, max: 6 })
        );
    }

    #[test]
    fn all_r_matches_single_r() {
        let a = pv(&[9, 3, 7, 5, 6, 4]);
        let id = Permutation::identity(6);
        let all = cyclic_product_sums(a.entries());
        for r in 1..=6 {
            assert_eq!(all[r - 1], cyclic_product_sum(&id, &a, r).unwrap().value);
        }
        let ints: Vec<BigInt> = [9, 3, 7, 5, 6, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(
            int_cyclic_product_sums(&ints)[1],
            BigInt::from(9 * 3 + 3 * 7 + 7 * 5 + 5 * 6 + 6 * 4 + 4 * 9)
        );
    }

    #[test]
    fn greedy_for_nine() {
        assert_eq!(greedy_permutation(9).images(), &[0, 8, 1, 7, 2, 6, 3, 5, 4]);
        let labels: Vec<usize> = (0..9).collect();
        assert_eq!(
            apply_permutation(&labels, &greedy_permutation(9)).unwrap(),
            [0, 2, 4, 6, 8, 7, 5, 3, 1]
        );
        assert!(greedy_permutation(1).is_identity());
        assert!(greedy_permutation(2).is_identity());
    }

    #[test]
    fn circular_symmetric_examples() {
        assert_eq!(circular_symmetric_order(&pv(&[5, 4, 3, 2, 1])).unwrap(), pv(&[5, 3, 1, 2, 4]));
        assert_eq!(circular_symmetric_order(&pv(&[2, 1])).unwrap(), pv(&[2, 1]));
        assert_eq!(
            circular_symmetric_order(&pv(&[9, 8, 7, 6, 5, 4, 3])).unwrap(),
            pv(&[9, 7, 5, 3, 4, 6, 8])
        );
        assert_eq!(
            circular_symmetric_order(&pv(&[5, 6, 1])),
            Err(Error::NotSorted(1))
        );
    }

    #[test]
    fn greedy_class_matches_symmetric_order_pattern() {
        for m in 1..=10 {
            let labels: Vec<i64> = (0..m as i64).map(|i| 100 - i).collect();
            let arranged = circular_symmetric_order(&pv(&labels)).unwrap();
            let pattern: Vec<usize> = arranged
                .iter()
                .map(|x| labels.iter().position(|&l| int(l) == *x).unwrap())
                .collect();
            assert_eq!(canonical_ordering(&pattern).unwrap(), greedy_ordering(m));
        }
    }

    #[test]
    fn duality_by_hand() {
        let a = pv(&[2, 3]);
        let id = Permutation::identity(2);
        assert_eq!(cyclic_product_sum(&id, &a, 1).unwrap().value, int(5));
        assert_eq!(cyclic_product_sum(&id, &a.reciprocal(), 1).unwrap().value, rat(5, 6));
        assert!(duality_check(&id, &a, 1).unwrap());
        assert_eq!(duality_check(&id, &a, 2), Err(Error::BadR { r: 2, max: 1 }));
    }
}

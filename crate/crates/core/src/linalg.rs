//! Fraction-free (Bareiss) elimination over the integers, lifted to
//! rational matrices by clearing denominators row by row.

use num::{BigInt, Integer, One, Zero};

use crate::rational::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Rational>>;

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the per-row multipliers.
fn clear_denominators(rows: &RatMatrix) -> (IntMatrix, Vec<BigInt>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        out.push(
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>(),
        );
        scales.push(l);
    }
    (out, scales)
}

/// In-place Bareiss forward elimination on the first `cols` columns.
/// Returns the number of row swaps, or `None` if the leading `cols x cols`
/// block is singular.
fn bareiss(a: &mut IntMatrix, cols: usize) -> Option<usize> {
    let n = a.len();
    let mut swaps = 0;
    let mut prev = BigInt::one();
    for k in 0..cols.min(n) {
        if a[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, pivot);
            swaps += 1;
        }
        let width = a[k].len();
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(swaps)
}

pub fn int_determinant(matrix: &IntMatrix) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.clone();
    match bareiss(&mut a, n) {
        None => BigInt::zero(),
        Some(swaps) => {
            let d = a[n - 1][n - 1].clone();
            if swaps % 2 == 1 {
                -d
            } else {
                d
            }
        }
    }
}

pub fn determinant(matrix: &RatMatrix) -> Rational {
    let (ints, scales) = clear_denominators(matrix);
    let scale: BigInt = scales.iter().product();
    Rational::new(int_determinant(&ints), scale)
}

/// Solves the square system `a x = b` exactly; `None` if singular.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let augmented: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (mut ints, _) = clear_denominators(&augmented);
    bareiss(&mut ints, n)?;
    if ints[n - 1][n - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(ints[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(ints[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(ints[i][i].clone());
    }
    Some(x)
}

/// Cofactor expansion; exponential, for cross-checking small matrices only.
pub fn determinant_by_expansion(matrix: &RatMatrix) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for (j, entry) in matrix[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: RatMatrix = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = entry * determinant_by_expansion(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[(i64, i64)]]) -> RatMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect())
            .collect()
    }

    #[test]
    fn determinant_small_cases() {
        let a = m(&[&[(1, 1), (2, 1)], &[(3, 1), (4, 1)]]);
        assert_eq!(determinant(&a), int(-2));
        let b = m(&[&[(0, 1), (1, 2)], &[(1, 3), (0, 1)]]);
        assert_eq!(determinant(&b), rat(-1, 6));
        let singular = m(&[&[(1, 2), (1, 4)], &[(2, 1), (1, 1)]]);
        assert_eq!(determinant(&singular), int(0));
    }

    #[test]
    fn bareiss_agrees_with_cofactor_expansion() {
        let a = m(&[
            &[(2, 5), (0, 1), (-3, 7), (1, 1)],
            &[(0, 1), (0, 1), (5, 2), (-1, 3)],
            &[(7, 9), (1, 4), (0, 1), (2, 1)],
            &[(-1, 2), (3, 1), (1, 8), (0, 1)],
        ]);
        assert_eq!(determinant(&a), determinant_by_expansion(&a));
    }

    #[test]
    fn solves_exactly() {
        let a = m(&[&[(0, 1), (1, 2)], &[(1, 3), (1, 1)]]);
        let b = vec![rat(1, 1), rat(2, 1)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(&a[0][0] * &x[0] + &a[0][1] * &x[1], b[0]);
        assert_eq!(&a[1][0] * &x[0] + &a[1][1] * &x[1], b[1]);
        let singular = m(&[&[(1, 2), (1, 4)], &[(2, 1), (1, 1)]]);
        assert!(solve(&singular, &b).is_none());
    }
}

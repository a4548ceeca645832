//! Exact velocity of a cyclic birth-death chain.
//!
//! Three independent routes are provided and must agree exactly:
//!
//! * [`velocity_explicit`]: closed form in the cyclic-product sums of
//!   `ρ_i = (1 - p_i) / p_i`,
//! * [`velocity_stationary`]: `Σ π_i (2 p_i - 1)` with `π` the stationary law
//!   of the chain reduced mod `m`,
//! * [`velocity_hitting`]: `m / E[T_+]`, with the mean passage times taken
//!   from Cramer's rule on the passage-time system.
//!
//! When `γ = Π ρ_i > 1` the chain drifts left; every route then evaluates
//! the space-reflected environment and negates the result.

use std::cmp::Ordering;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::products::cyclic_product_sums;
use crate::rational::{int, Rational};
use crate::vector::ProbabilityVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoSummary {
    pub rho: Vec<Rational>,
    pub gamma: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Positive,
    Negative,
    ZeroRecurrent,
}

impl Sign {
    pub fn of(v: &Rational) -> Self {
        match v.cmp(&Rational::zero()) {
            Ordering::Greater => Sign::Positive,
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::ZeroRecurrent,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
            Sign::ZeroRecurrent => "zero-recurrent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Explicit,
    Stationary,
    Hitting,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeedReport {
    pub velocity: Rational,
    pub sign: Sign,
    pub gamma: Rational,
    pub method: Method,
}

impl SpeedReport {
    fn new(velocity: Rational, gamma: Rational, method: Method) -> Self {
        Self {
            sign: Sign::of(&velocity),
            velocity,
            gamma,
            method,
        }
    }

    fn negated(self) -> Self {
        Self::new(-self.velocity, self.gamma.recip(), self.method)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryDistribution {
    pub pi: Vec<Rational>,
}

pub fn rho_summary(p: &ProbabilityVector) -> RhoSummary {
    let rho: Vec<Rational> = p.iter().map(|x| (Rational::one() - x) / x).collect();
    let gamma = rho.iter().product();
    RhoSummary { rho, gamma }
}

/// Positive iff `γ < 1`, negative iff `γ > 1`, recurrent with zero speed
/// iff `γ = 1`.
pub fn classify_sign(p: &ProbabilityVector) -> Sign {
    match rho_summary(p).gamma.cmp(&Rational::one()) {
        Ordering::Less => Sign::Positive,
        Ordering::Greater => Sign::Negative,
        Ordering::Equal => Sign::ZeroRecurrent,
    }
}

/// `v = (1-γ) / (1 - γ + (2/m) Σ_{r=1}^m P_r(I; ρ))`.
pub fn velocity_explicit(p: &ProbabilityVector) -> SpeedReport {
    let RhoSummary { rho, gamma } = rho_summary(p);
    match gamma.cmp(&Rational::one()) {
        Ordering::Equal => SpeedReport::new(Rational::zero(), gamma, Method::Explicit),
        Ordering::Greater => velocity_explicit(&p.reflected()).negated(),
        Ordering::Less => {
            let m = int(rho.len() as i64);
            let total: Rational = cyclic_product_sums(&rho).iter().sum();
            let one_minus = Rational::one() - &gamma;
            let v = &one_minus / (&one_minus + int(2) * total / m);
            SpeedReport::new(v, gamma, Method::Explicit)
        }
    }
}

/// Transition matrix of `X mod m` on `{0, ..., m-1}`.
pub fn cycle_transition_matrix(p: &ProbabilityVector) -> RatMatrix {
    let m = p.len();
    let mut t = vec![vec![Rational::zero(); m]; m];
    for (i, pi) in p.iter().enumerate() {
        t[i][(i + 1) % m] += pi;
        t[i][(i + m - 1) % m] += Rational::one() - pi;
    }
    t
}

pub fn stationary_distribution(p: &ProbabilityVector) -> StationaryDistribution {
    let m = p.len();
    let t = cycle_transition_matrix(p);
    // (Pᵀ - I) π = 0 with the last equation replaced by Σ π_i = 1
    let mut a: RatMatrix = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut x = t[j][i].clone();
                    if i == j {
                        x -= Rational::one();
                    }
                    x
                })
                .collect()
        })
        .collect();
    a[m - 1] = vec![Rational::one(); m];
    let mut b = vec![Rational::zero(); m];
    b[m - 1] = Rational::one();
    let pi = linalg::solve(&a, &b).expect("cycle chain is irreducible");
    StationaryDistribution { pi }
}

/// `v = Σ π_i (2 p_i - 1)`.
pub fn velocity_stationary(p: &ProbabilityVector) -> SpeedReport {
    let gamma = rho_summary(p).gamma;
    let pi = stationary_distribution(p).pi;
    let v = pi
        .iter()
        .zip(p.iter())
        .map(|(w, x)| w * (int(2) * x - Rational::one()))
        .sum();
    SpeedReport::new(v, gamma, Method::Stationary)
}

/// The passage-time matrix: row `i` reads
/// `p_i e_i - (1 - p_i) e_{i-1}`, so that `M (E_i[S_{i+1}])_i = 1`.
pub fn hitting_matrix(p: &ProbabilityVector) -> RatMatrix {
    let m = p.len();
    let mut a = vec![vec![Rational::zero(); m]; m];
    for (i, pi) in p.iter().enumerate() {
        a[i][i] += pi;
        a[i][(i + m - 1) % m] -= Rational::one() - pi;
    }
    a
}

/// `M` with column `column` (0-based) replaced by ones.
pub fn cramer_matrix(p: &ProbabilityVector, column: usize) -> RatMatrix {
    let mut a = hitting_matrix(p);
    for row in a.iter_mut() {
        row[column] = Rational::one();
    }
    a
}

/// `|M| = Π p_i - Π (1 - p_i)`.
pub fn hitting_determinant(p: &ProbabilityVector) -> Rational {
    let up: Rational = p.iter().product();
    let down: Rational = p.iter().map(|x| Rational::one() - x).product();
    up - down
}

/// Closed form of `|M|` with column `column` replaced by ones:
/// `Σ_j Π_{i<j} p_{i+s} Π_{i>j} (1 - p_{i+s})` with `s = column + 1`,
/// indices mod `m`.
pub fn cramer_numerator(p: &ProbabilityVector, column: usize) -> Rational {
    let m = p.len();
    let s = column + 1;
    let at = |i: usize| &p[(i + s) % m];
    // suffix[j] = Π_{i >= j} (1 - p_{i+s})
    let mut suffix = vec![Rational::one(); m + 1];
    for i in (0..m).rev() {
        suffix[i] = &suffix[i + 1] * (Rational::one() - at(i));
    }
    let mut prefix = Rational::one();
    let mut total = Rational::zero();
    for j in 0..m {
        total += &prefix * &suffix[j + 1];
        prefix *= at(j);
    }
    total
}

/// `v = m |M| / Σ_i |M^{(i+1)}|`, reflecting the environment when `γ > 1`.
pub fn velocity_hitting(p: &ProbabilityVector) -> SpeedReport {
    velocity_hitting_with(p, true).expect("reflection enabled")
}

pub fn velocity_hitting_with(p: &ProbabilityVector, reflect: bool) -> Result<SpeedReport> {
    let gamma = rho_summary(p).gamma;
    match gamma.cmp(&Rational::one()) {
        Ordering::Equal if reflect => Ok(SpeedReport::new(Rational::zero(), gamma, Method::Hitting)),
        Ordering::Greater if reflect => Ok(velocity_hitting_with(&p.reflected(), false)?.negated()),
        Ordering::Less => {
            let m = p.len();
            let det = hitting_determinant(p);
            let passage: Rational = (0..m).map(|c| cramer_numerator(p, c)).sum();
            let v = int(m as i64) * det / passage;
            Ok(SpeedReport::new(v, gamma, Method::Hitting))
        }
        _ => Err(Error::NotApplicable),
    }
}

/// Mean passage times `E_i[S_{i+1}]` for `i = 0..m`, valid for `γ < 1`.
pub fn mean_passage_times(p: &ProbabilityVector) -> Result<Vec<Rational>> {
    if rho_summary(p).gamma >= Rational::one() {
        return Err(Error::NotApplicable);
    }
    let det = hitting_determinant(p);
    Ok((0..p.len()).map(|c| cramer_numerator(p, c) / &det).collect())
}

/// Probability of reaching `+m` before `-m` from 0: `1 / (1 + γ)`.
pub fn exit_probability(p: &ProbabilityVector) -> Rational {
    (Rational::one() + rho_summary(p).gamma).recip()
}

/// `ℒ(p) = Σ_i (p_{i+1} - p_i)²`, indices mod `m`.
pub fn smoothness(p: &ProbabilityVector) -> Rational {
    let m = p.len();
    (0..m)
        .map(|i| {
            let d = &p[(i + 1) % m] - &p[i];
            &d * &d
        })
        .sum()
}

/// Integer kernel for evaluating the explicit formula over many
/// rearrangements of one environment.
///
/// With `p_i = a_i / b_i` we have `ρ_i = n_i / d_i` where `n_i = b_i - a_i`,
/// `d_i = a_i`. Multiplying the closed form through by `D = Π d_i` leaves
/// only integer products:
///
/// `v = m (D - N) / (m (D - N) + 2 Σ_k Σ_r Π_{window} n · Π_{complement} d)`.
#[derive(Debug, Clone)]
pub struct SpeedKernel {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
    regime: Sign,
}

impl SpeedKernel {
    pub fn new(p: &ProbabilityVector) -> Self {
        let mut num: Vec<BigInt> = p.iter().map(|x| x.denom() - x.numer()).collect();
        let mut den: Vec<BigInt> = p.iter().map(|x| x.numer().clone()).collect();
        let regime = classify_sign(p);
        if regime == Sign::Negative {
            // ρ ↦ 1/ρ; cyclic sums are reversal invariant so no reindexing
            std::mem::swap(&mut num, &mut den);
        }
        Self { num, den, regime }
    }

    pub fn regime(&self) -> Sign {
        self.regime
    }

    /// Velocity of `(p[order[0]], ..., p[order[m-1]])`.
    pub fn velocity(&self, order: &[usize]) -> Rational {
        if self.regime == Sign::ZeroRecurrent {
            return Rational::zero();
        }
        let m = order.len();
        let n: Vec<&BigInt> = order.iter().map(|&i| &self.num[i]).collect();
        let d: Vec<&BigInt> = order.iter().map(|&i| &self.den[i]).collect();
        let big_n: BigInt = n.iter().copied().product();
        let big_d: BigInt = d.iter().copied().product();
        let mut total = BigInt::zero();
        let mut suffix = vec![BigInt::one(); m + 1];
        for k in 0..m {
            // suffix[j] = Π_{i=j}^{m-1} d_{k+i}
            for i in (0..m).rev() {
                suffix[i] = &suffix[i + 1] * d[(k + i) % m];
            }
            let mut window = BigInt::one();
            for r in 1..=m {
                window *= n[(k + r - 1) % m];
                total += &window * &suffix[r];
            }
        }
        let drift = BigInt::from(m) * (&big_d - &big_n);
        let v = Rational::new(drift.clone(), drift + BigInt::from(2) * total);
        if self.regime == Sign::Negative {
            -v
        } else {
            v
        }
    }
}

/// `true` when `v` is strictly positive and `γ < 1`, or the mirror image.
pub fn sign_consistent(report: &SpeedReport) -> bool {
    let expected = match report.gamma.cmp(&Rational::one()) {
        Ordering::Less => Sign::Positive,
        Ordering::Greater => Sign::Negative,
        Ordering::Equal => Sign::ZeroRecurrent,
    };
    report.sign == expected && report.sign == Sign::of(&report.velocity) && !report.gamma.is_negative()
}

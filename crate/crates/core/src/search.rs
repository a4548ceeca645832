//! Exhaustive search over dihedral classes of arrangements.
//!
//! Every census evaluates one canonical representative per class of
//! rotations and reversals, in lexicographic order. Work is split across
//! threads but results are always collected in class order, so reports do
//! not depend on the number of workers.

use std::collections::HashMap;

use num::{BigInt, Integer, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ordering::{class_count, enumerate_dihedral_classes, CyclicOrdering};
use crate::products::{greedy_ordering, int_cyclic_product_sums};
use crate::rational::Rational;
use crate::speed::{classify_sign, smoothness, Sign, SpeedKernel};
use crate::vector::{PositiveVector, ProbabilityVector};

/// At most this many collision pairs are kept in a [`SearchReport`].
pub const MAX_COLLISION_EXAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_m: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { max_m: 10 }
    }
}

impl SearchConfig {
    pub fn check(&self, m: usize) -> Result<()> {
        if m > self.max_m {
            Err(Error::TooLarge {
                m,
                max_m: self.max_m,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub m: usize,
    pub class_count: usize,
    pub distinct_speed_count: usize,
    /// One entry per class, in lexicographic class order.
    pub speed_table: Vec<(CyclicOrdering, Rational)>,
    pub min_ordering: CyclicOrdering,
    pub max_ordering: CyclicOrdering,
    pub min_speed: Rational,
    pub max_speed: Rational,
    /// Every class attaining the minimum (resp. maximum), in class order.
    pub min_orderings: Vec<CyclicOrdering>,
    pub max_orderings: Vec<CyclicOrdering>,
    /// Pairs `(earlier, later)` of distinct classes with equal speed.
    pub collisions: Vec<(CyclicOrdering, CyclicOrdering)>,
}

impl SearchReport {
    pub fn speed_of(&self, ordering: &CyclicOrdering) -> Option<&Rational> {
        self.speed_table
            .binary_search_by(|(o, _)| o.cmp(ordering))
            .ok()
            .map(|i| &self.speed_table[i].1)
    }
}

fn classes(m: usize, cfg: &SearchConfig) -> Result<Vec<CyclicOrdering>> {
    cfg.check(m)?;
    Ok(enumerate_dihedral_classes(m).collect())
}

/// Exact speed of every class of rearrangements of `p`.
pub fn distinct_speeds(p: &ProbabilityVector, cfg: &SearchConfig) -> Result<SearchReport> {
    let classes = classes(p.len(), cfg)?;
    let kernel = SpeedKernel::new(p);
    let speeds: Vec<Rational> = classes
        .par_iter()
        .map(|c| kernel.velocity(c.indices()))
        .collect();
    Ok(summarize(p.len(), classes.into_iter().zip(speeds).collect()))
}

/// Same census as [`distinct_speeds`]; the report carries the extremes.
pub fn extreme_speed_orderings(p: &ProbabilityVector, cfg: &SearchConfig) -> Result<SearchReport> {
    distinct_speeds(p, cfg)
}

fn summarize(m: usize, speed_table: Vec<(CyclicOrdering, Rational)>) -> SearchReport {
    let min_speed = speed_table.iter().map(|(_, v)| v).min().unwrap().clone();
    let max_speed = speed_table.iter().map(|(_, v)| v).max().unwrap().clone();
    let attaining = |target: &Rational| -> Vec<CyclicOrdering> {
        speed_table
            .iter()
            .filter(|(_, v)| v == target)
            .map(|(o, _)| o.clone())
            .collect()
    };
    let min_orderings = attaining(&min_speed);
    let max_orderings = attaining(&max_speed);

    let mut first_seen: HashMap<&Rational, &CyclicOrdering> = HashMap::new();
    let mut collisions = Vec::new();
    for (o, v) in &speed_table {
        match first_seen.get(v) {
            Some(&earlier) => {
                if collisions.len() < MAX_COLLISION_EXAMPLES {
                    collisions.push((earlier.clone(), o.clone()));
                }
            }
            None => {
                first_seen.insert(v, o);
            }
        }
    }
    let distinct_speed_count = first_seen.len();

    SearchReport {
        m,
        class_count: speed_table.len(),
        distinct_speed_count,
        min_ordering: min_orderings[0].clone(),
        max_ordering: max_orderings[0].clone(),
        min_orderings,
        max_orderings,
        min_speed,
        max_speed,
        collisions,
        speed_table,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub ordering: CyclicOrdering,
    /// `None` for the speed conjecture.
    pub r: Option<usize>,
    pub greedy_value: Rational,
    pub better_value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl ConjectureVerdict {
    fn from_counterexample(counterexample: Option<Counterexample>) -> Self {
        Self {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

/// `a` scaled to integers by the lcm `L` of its denominators.
fn integer_weights(a: &PositiveVector) -> (Vec<BigInt>, BigInt) {
    let l = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = a.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

/// Cyclic-product table over all classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCensus {
    pub m: usize,
    pub r_values: Vec<usize>,
    /// `rows[c][j]` is `P_{r_values[j]}` for class `c`.
    pub rows: Vec<(CyclicOrdering, Vec<Rational>)>,
    pub greedy: CyclicOrdering,
}

impl ProductCensus {
    /// Classes attaining the minimum of `P_r`, in class order.
    pub fn argmin(&self, r: usize) -> Vec<CyclicOrdering> {
        self.extremal(r, |a, b| a < b)
    }

    pub fn argmax(&self, r: usize) -> Vec<CyclicOrdering> {
        self.extremal(r, |a, b| a > b)
    }

    pub fn value(&self, ordering: &CyclicOrdering, r: usize) -> Option<&Rational> {
        let j = self.r_values.iter().position(|&x| x == r)?;
        self.rows
            .iter()
            .find(|(o, _)| o == ordering)
            .map(|(_, vals)| &vals[j])
    }

    fn extremal(&self, r: usize, better: impl Fn(&Rational, &Rational) -> bool) -> Vec<CyclicOrdering> {
        let Some(j) = self.r_values.iter().position(|&x| x == r) else {
            return Vec::new();
        };
        let mut best: Option<&Rational> = None;
        let mut out = Vec::new();
        for (o, vals) in &self.rows {
            let v = &vals[j];
            match best {
                Some(b) if v == b => out.push(o.clone()),
                Some(b) if !better(v, b) => {}
                _ => {
                    best = Some(v);
                    out = vec![o.clone()];
                }
            }
        }
        out
    }
}

fn validate_r_set(r_set: &[usize], m: usize) -> Result<Vec<usize>> {
    let mut rs = r_set.to_vec();
    rs.sort_unstable();
    rs.dedup();
    if let Some(&r) = rs.iter().find(|&&r| r == 0 || r > m) {
        return Err(Error::BadR { r, max: m });
    }
    Ok(rs)
}

/// `P_r` for every class and every `r` in `r_set` (all `r` when empty).
pub fn product_census(a: &PositiveVector, r_set: &[usize], cfg: &SearchConfig) -> Result<ProductCensus> {
    let m = a.len();
    let r_values = if r_set.is_empty() {
        (1..=m).collect()
    } else {
        validate_r_set(r_set, m)?
    };
    let classes = classes(m, cfg)?;
    let (ints, l) = integer_weights(a);
    let scales: Vec<BigInt> = r_values.iter().map(|&r| num::pow(l.clone(), r)).collect();
    let rows = classes
        .into_par_iter()
        .map(|c| {
            let sums = int_cyclic_product_sums(&c.arrange(&ints));
            let vals = r_values
                .iter()
                .zip(&scales)
                .map(|(&r, s)| Rational::new(sums[r - 1].clone(), s.clone()))
                .collect();
            (c, vals)
        })
        .collect();
    Ok(ProductCensus {
        m,
        r_values,
        rows,
        greedy: greedy_ordering(m),
    })
}

/// Exhaustively tests whether the greedy class maximizes `P_r` for each
/// `r` in `r_set`. The first counterexample in (class, r) order is returned.
pub fn check_greedy_product_conjecture(
    a: &PositiveVector,
    r_set: &[usize],
    cfg: &SearchConfig,
) -> Result<ConjectureVerdict> {
    let m = a.len();
    if let Some(i) = a.first_increase() {
        return Err(Error::NotSorted(i));
    }
    let rs = validate_r_set(r_set, m)?;
    let classes = classes(m, cfg)?;
    let (ints, l) = integer_weights(a);
    let greedy = int_cyclic_product_sums(&greedy_ordering(m).arrange(&ints));
    let found = classes.par_iter().find_map_first(|c| {
        let sums = int_cyclic_product_sums(&c.arrange(&ints));
        rs.iter()
            .find(|&&r| sums[r - 1] > greedy[r - 1])
            .map(|&r| (c.clone(), r, sums[r - 1].clone()))
    });
    let counterexample = found.map(|(ordering, r, better)| {
        let scale = num::pow(l.clone(), r);
        Counterexample {
            ordering,
            r: Some(r),
            greedy_value: Rational::new(greedy[r - 1].clone(), scale.clone()),
            better_value: Rational::new(better, scale),
        }
    });
    Ok(ConjectureVerdict::from_counterexample(counterexample))
}

/// Tests whether the greedy class attains the minimum speed among all
/// rearrangements of a non-increasing `p` with `γ < 1`.
pub fn check_min_speed_conjecture(p: &ProbabilityVector, cfg: &SearchConfig) -> Result<ConjectureVerdict> {
    if let Some(i) = p.first_increase() {
        return Err(Error::NotSorted(i));
    }
    if classify_sign(p) != Sign::Positive {
        return Err(Error::WrongRegime);
    }
    let report = distinct_speeds(p, cfg)?;
    let greedy = greedy_ordering(p.len());
    let greedy_value = report.speed_of(&greedy).expect("greedy class is enumerated").clone();
    let counterexample = (report.min_speed < greedy_value).then(|| Counterexample {
        ordering: report.min_ordering.clone(),
        r: None,
        greedy_value,
        better_value: report.min_speed.clone(),
    });
    Ok(ConjectureVerdict::from_counterexample(counterexample))
}

/// Classes minimizing the cyclic roughness `ℒ`, in class order.
pub fn smoothness_minimizers(p: &ProbabilityVector, cfg: &SearchConfig) -> Result<Vec<CyclicOrdering>> {
    let classes = classes(p.len(), cfg)?;
    let values: Vec<Rational> = classes
        .par_iter()
        .map(|c| smoothness(&p.arranged(c.indices())))
        .collect();
    let best = values.iter().min().cloned().unwrap_or_else(Rational::zero);
    Ok(classes
        .into_iter()
        .zip(values)
        .filter(|(_, v)| *v == best)
        .map(|(c, _)| c)
        .collect())
}

/// The expected number of classes, as `usize`.
pub fn expected_class_count(m: usize) -> usize {
    class_count(m) as usize
}

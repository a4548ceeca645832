//! The i.i.d. environment walk whose site probabilities are drawn uniformly
//! from the multiset `{p_0, ..., p_{m-1}}`, compared with the cyclic chain.

use std::cmp::Ordering;

use num::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::CyclicOrdering;
use crate::rational::{int, Rational};
use crate::search::SearchConfig;
use crate::speed::{rho_summary, velocity_explicit, SpeedKernel};
use crate::vector::ProbabilityVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    CbdGreater,
    RwreGreater,
    Equal,
}

impl Relation {
    fn between(cbd: &Rational, rwre: &Rational) -> Self {
        match cbd.cmp(rwre) {
            Ordering::Greater => Relation::CbdGreater,
            Ordering::Less => Relation::RwreGreater,
            Ordering::Equal => Relation::Equal,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::CbdGreater => "cbd_greater",
            Relation::RwreGreater => "rwre_greater",
            Relation::Equal => "equal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolomonVelocity {
    /// Exact speed, or 0 when the speed is not strictly positive.
    pub velocity: Rational,
    pub positive: bool,
    pub transient: bool,
    /// `m⁻¹ Σ ρ_i`.
    pub mean_rho: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub cbd_velocity: Rational,
    pub rwre_velocity: Rational,
    pub rwre_transient: bool,
    pub rwre_positive_speed: bool,
    pub relation: Relation,
}

/// Transient to `+∞` iff `Π ρ_i < 1`; positive speed iff in addition
/// `ρ̄ = m⁻¹ Σ ρ_i < 1`, in which case `v = (1 - ρ̄) / (1 + ρ̄)`.
pub fn solomon_velocity(p: &ProbabilityVector) -> SolomonVelocity {
    let summary = rho_summary(p);
    let mean_rho: Rational = summary.rho.iter().sum::<Rational>() / int(p.len() as i64);
    let transient = summary.gamma < Rational::one();
    let positive = transient && mean_rho < Rational::one();
    let velocity = if positive {
        (Rational::one() - &mean_rho) / (Rational::one() + &mean_rho)
    } else {
        Rational::zero()
    };
    SolomonVelocity {
        velocity,
        positive,
        transient,
        mean_rho,
    }
}

pub fn rwre_transience(p: &ProbabilityVector) -> bool {
    rho_summary(p).gamma < Rational::one()
}

pub fn compare_cbd_rwre(p: &ProbabilityVector) -> Result<ComparisonReport> {
    if !rwre_transience(p) {
        return Err(Error::WrongRegime);
    }
    let cbd = velocity_explicit(p).velocity;
    Ok(comparison(cbd, &solomon_velocity(p)))
}

fn comparison(cbd_velocity: Rational, solomon: &SolomonVelocity) -> ComparisonReport {
    ComparisonReport {
        relation: Relation::between(&cbd_velocity, &solomon.velocity),
        cbd_velocity,
        rwre_velocity: solomon.velocity.clone(),
        rwre_transient: solomon.transient,
        rwre_positive_speed: solomon.positive,
    }
}

/// [`compare_cbd_rwre`] for every class of rearrangements of `p`.
pub fn compare_all_orderings(
    p: &ProbabilityVector,
    cfg: &SearchConfig,
) -> Result<Vec<(CyclicOrdering, ComparisonReport)>> {
    if !rwre_transience(p) {
        return Err(Error::WrongRegime);
    }
    cfg.check(p.len())?;
    let solomon = solomon_velocity(p);
    let kernel = SpeedKernel::new(p);
    let classes: Vec<CyclicOrdering> = crate::ordering::enumerate_dihedral_classes(p.len()).collect();
    Ok(classes
        .into_par_iter()
        .map(|c| {
            let v = kernel.velocity(c.indices());
            (c, comparison(v, &solomon))
        })
        .collect())
}

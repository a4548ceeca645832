//! Seeded Monte Carlo of the chain `X_n` for validating the exact results.
//!
//! Randomness: replication `j` draws from ChaCha8 seeded with
//! `seed_from_u64(seed)` on stream `j`. A step from site `s` goes right iff
//! the next `u64` is below `⌊p_s · 2^64⌋`, so the right-step probability
//! differs from the exact rational by less than `2^-64`. Site lookup uses
//! the non-negative residue of `X` mod `m`.
//!
//! Replications run in parallel; their summaries are merged in replication
//! order, so a report depends only on the config.

use num::{BigInt, One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::speed::{classify_sign, exit_probability, velocity_explicit, Sign};
use crate::vector::ProbabilityVector;

/// Embedded-walk increments are summed in blocks of this many excursions.
pub const DEFAULT_EMBEDDED_BLOCK: u64 = 100;
/// Each trajectory is cut into this many batches for the batched CLT
/// estimator.
pub const DEFAULT_BATCHES: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainConfig {
    pub p: ProbabilityVector,
    pub steps: u64,
    pub replications: u32,
    pub seed: u64,
    pub embedded_block: u64,
    pub batches: u64,
}

impl ChainConfig {
    pub fn new(p: ProbabilityVector, steps: u64, replications: u32, seed: u64) -> Self {
        Self {
            p,
            steps,
            replications,
            seed,
            embedded_block: DEFAULT_EMBEDDED_BLOCK,
            batches: DEFAULT_BATCHES,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::BadConfig("steps must be at least 1"));
        }
        if self.replications == 0 {
            return Err(Error::BadConfig("replications must be at least 1"));
        }
        if self.embedded_block == 0 || self.batches == 0 {
            return Err(Error::BadConfig("block sizes must be at least 1"));
        }
        Ok(())
    }

    pub fn total_steps(&self) -> u128 {
        self.steps as u128 * self.replications as u128
    }

    fn batch_len(&self) -> u64 {
        (self.steps / self.batches).max(1)
    }
}

/// Running first and second moments.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(&mut self, other: &Moments) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }

    /// Unbiased sample variance; 0 with fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0)
    }

    pub fn std_error(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Known-mean variance estimator `mean(y²)` with the standard error from the
/// empirical fourth moment.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SquareMoments {
    pub count: u64,
    pub sum_sq: f64,
    pub sum_quad: f64,
}

impl SquareMoments {
    fn push(&mut self, y: f64) {
        let y2 = y * y;
        self.count += 1;
        self.sum_sq += y2;
        self.sum_quad += y2 * y2;
    }

    fn merge(&mut self, other: &SquareMoments) {
        self.count += other.count;
        self.sum_sq += other.sum_sq;
        self.sum_quad += other.sum_quad;
    }

    pub fn estimate(&self) -> f64 {
        self.sum_sq / self.count as f64
    }

    pub fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let s2 = self.estimate();
        ((self.sum_quad / n - s2 * s2).max(0.0) / n).sqrt()
    }
}

/// Summary of a single trajectory of `steps` steps from `X_0 = 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub final_position: i64,
    pub min_position: i64,
    pub max_position: i64,
    /// Completed exits of `{-m, +m}` relative to the previous exit point.
    pub exits: u64,
    pub exits_up: u64,
    /// Durations of completed exits.
    pub exit_time: Moments,
    /// Sum of `1{up} · T` over completed exits.
    pub up_time_sum: f64,
    /// Durations between successive first passages to `m, 2m, 3m, ...`.
    pub passage_time: Moments,
    /// Embedded-walk block sums, centred at the exact drift and scaled.
    pub embedded: SquareMoments,
    /// Batch increments of `X`, centred at the exact velocity and scaled.
    pub batched: SquareMoments,
}

struct Stepper {
    thresholds: Vec<u64>,
}

impl Stepper {
    fn new(p: &ProbabilityVector) -> Self {
        let two64 = BigInt::one() << 64u32;
        let thresholds = p
            .iter()
            .map(|x| {
                let scaled = x * Rational::from_integer(two64.clone());
                scaled.floor().to_integer().to_u64().unwrap_or(u64::MAX)
            })
            .collect();
        Self { thresholds }
    }
}

fn simulate_one(cfg: &ChainConfig, stepper: &Stepper, refs: &References, replication: u32) -> Trajectory {
    let m = stepper.thresholds.len() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(replication as u64);

    let mut t = Trajectory::default();
    let mut x: i64 = 0;
    let mut site: usize = 0;

    let mut exit_anchor = 0i64;
    let mut exit_start = 0u64;
    let mut block_sum = 0i64;
    let mut block_fill = 0u64;
    let block = cfg.embedded_block;
    let block_scale = (block as f64).sqrt();
    let block_drift = block as f64 * refs.embedded_drift;

    let mut next_level = m;
    let mut last_passage = 0u64;

    let batch_len = cfg.batch_len();
    let batch_scale = (batch_len as f64).sqrt();
    let batch_drift = batch_len as f64 * refs.velocity;
    let mut batch_start = 0i64;

    for step in 1..=cfg.steps {
        if rng.next_u64() < stepper.thresholds[site] {
            x += 1;
            site = if site + 1 == m as usize { 0 } else { site + 1 };
            if x > t.max_position {
                t.max_position = x;
                if x == next_level {
                    t.passage_time.push((step - last_passage) as f64);
                    last_passage = step;
                    next_level += m;
                }
            }
        } else {
            x -= 1;
            site = if site == 0 { m as usize - 1 } else { site - 1 };
            t.min_position = t.min_position.min(x);
        }

        let displacement = x - exit_anchor;
        if displacement == m || displacement == -m {
            let duration = (step - exit_start) as f64;
            t.exits += 1;
            t.exit_time.push(duration);
            let up = displacement > 0;
            if up {
                t.exits_up += 1;
                t.up_time_sum += duration;
            }
            exit_anchor = x;
            exit_start = step;
            block_sum += if up { 1 } else { -1 };
            block_fill += 1;
            if block_fill == block {
                t.embedded.push((block_sum as f64 - block_drift) / block_scale);
                block_sum = 0;
                block_fill = 0;
            }
        }

        if step % batch_len == 0 && step / batch_len <= cfg.batches {
            t.batched.push(((x - batch_start) as f64 - batch_drift) / batch_scale);
            batch_start = x;
        }
    }
    t.final_position = x;
    debug_assert_eq!(x.rem_euclid(m) as usize, site);
    t
}

/// Exact quantities the estimators are centred on.
#[derive(Debug, Clone)]
struct References {
    velocity_exact: Rational,
    velocity: f64,
    exit_up_exact: Rational,
    embedded_drift: f64,
}

impl References {
    fn new(p: &ProbabilityVector) -> Self {
        let velocity_exact = velocity_explicit(p).velocity;
        let exit_up_exact = exit_probability(p);
        let h = to_f64(&exit_up_exact);
        Self {
            velocity: to_f64(&velocity_exact),
            velocity_exact,
            exit_up_exact,
            embedded_drift: 2.0 * h - 1.0,
        }
    }
}

/// Simulates every replication of `cfg`, in replication order.
pub fn run_chain(cfg: &ChainConfig) -> Result<Vec<Trajectory>> {
    cfg.validate()?;
    let stepper = Stepper::new(&cfg.p);
    let refs = References::new(&cfg.p);
    Ok((0..cfg.replications)
        .into_par_iter()
        .map(|j| simulate_one(cfg, &stepper, &refs, j))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub estimate: f64,
    pub std_error: f64,
    pub steps: u64,
    pub replications: u32,
    pub seed: u64,
    pub samples: u64,
    pub exact_reference: Option<Rational>,
}

impl SimulationReport {
    /// `|estimate - reference|` in units of the standard error.
    pub fn z_score(&self) -> Option<f64> {
        let r = to_f64(self.exact_reference.as_ref()?);
        Some((self.estimate - r).abs() / self.std_error)
    }

    pub fn within(&self, sigmas: f64) -> bool {
        match &self.exact_reference {
            Some(r) => (self.estimate - to_f64(r)).abs() <= sigmas * self.std_error,
            None => false,
        }
    }

    pub fn relative_error(&self) -> Option<f64> {
        let r = to_f64(self.exact_reference.as_ref()?);
        Some((self.estimate - r).abs() / r.abs())
    }
}

fn report(cfg: &ChainConfig, estimate: f64, std_error: f64, samples: u64, exact: Option<Rational>) -> SimulationReport {
    SimulationReport {
        estimate,
        std_error,
        steps: cfg.steps,
        replications: cfg.replications,
        seed: cfg.seed,
        samples,
        exact_reference: exact,
    }
}

fn velocity_from(cfg: &ChainConfig, runs: &[Trajectory]) -> SimulationReport {
    let mut speeds = Moments::default();
    for t in runs {
        speeds.push(t.final_position as f64 / cfg.steps as f64);
    }
    let exact = velocity_explicit(&cfg.p).velocity;
    report(cfg, speeds.mean(), speeds.std_error(), speeds.count, Some(exact))
}

/// Mean of `X_n / n` over replications.
pub fn estimate_velocity(cfg: &ChainConfig) -> Result<SimulationReport> {
    let runs = run_chain(cfg)?;
    Ok(velocity_from(cfg, &runs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HittingReport {
    /// `ĥ`, the fraction of exits through `+m`; reference `1 / (1 + γ)`.
    pub exit_up: SimulationReport,
    /// Mean exit time `Ê[T]`; reference `m (2h - 1) / v` when `v ≠ 0`.
    pub exit_time: SimulationReport,
    /// `m (2ĥ - 1) / Ê[T]`; reference `v`.
    pub speed_from_exits: SimulationReport,
    /// `m / Ê[T_+]`; only meaningful for `γ < 1`.
    pub speed_from_passages: Option<SimulationReport>,
}

fn hitting_from(cfg: &ChainConfig, runs: &[Trajectory]) -> HittingReport {
    let m = cfg.p.len() as f64;
    let refs = References::new(&cfg.p);
    let mut exits = 0u64;
    let mut ups = 0u64;
    let mut times = Moments::default();
    let mut up_time = 0.0;
    let mut passages = Moments::default();
    for t in runs {
        exits += t.exits;
        ups += t.exits_up;
        times.merge(&t.exit_time);
        up_time += t.up_time_sum;
        passages.merge(&t.passage_time);
    }
    let n = exits.max(1) as f64;
    let h = ups as f64 / n;
    let h_se = (h * (1.0 - h) / n).sqrt();
    let mean_t = times.mean();
    let t_se = times.std_error();
    let exit_up = report(cfg, h, h_se, exits, Some(refs.exit_up_exact.clone()));

    let mean_t_exact = if refs.velocity_exact.is_zero() {
        None
    } else {
        let two_h_minus_one = Rational::from_integer(2.into()) * &refs.exit_up_exact - Rational::one();
        Some(Rational::from_integer((cfg.p.len() as i64).into()) * two_h_minus_one / &refs.velocity_exact)
    };
    let exit_time = report(cfg, mean_t, t_se, exits, mean_t_exact);

    // delta method for g(h, T) = m (2h - 1) / T
    let cov_h_t = if exits > 1 { (up_time / n - h * mean_t) / n } else { 0.0 };
    let dg_dh = 2.0 * m / mean_t;
    let dg_dt = -m * (2.0 * h - 1.0) / (mean_t * mean_t);
    let var_g = dg_dh * dg_dh * h_se * h_se + dg_dt * dg_dt * t_se * t_se + 2.0 * dg_dh * dg_dt * cov_h_t;
    let speed_from_exits = report(
        cfg,
        m * (2.0 * h - 1.0) / mean_t,
        var_g.max(0.0).sqrt(),
        exits,
        Some(refs.velocity_exact.clone()),
    );

    let speed_from_passages = (classify_sign(&cfg.p) == Sign::Positive && passages.count > 0).then(|| {
        let mean = passages.mean();
        report(
            cfg,
            m / mean,
            m * passages.std_error() / (mean * mean),
            passages.count,
            Some(refs.velocity_exact.clone()),
        )
    });

    HittingReport {
        exit_up,
        exit_time,
        speed_from_exits,
        speed_from_passages,
    }
}

/// Exit statistics of `{-m, +m}` pooled over every completed exit of every
/// replication (exits restart at multiples of `m`, so they are i.i.d.).
pub fn estimate_hitting(cfg: &ChainConfig) -> Result<HittingReport> {
    let runs = run_chain(cfg)?;
    Ok(hitting_from(cfg, &runs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CltReport {
    /// Mean over replications of `((X_n - n v) / √n)²`.
    pub walk_endpoint: SimulationReport,
    /// The same statistic on batches of `n / batches` steps, pooled.
    pub walk_batched: SimulationReport,
    /// `((W_{k} - k (2h - 1)) / √k)²` on blocks of `k` embedded steps;
    /// reference `4 h (1 - h)`.
    pub embedded: SimulationReport,
    pub embedded_block: u64,
    pub batch_len: u64,
}

fn clt_from(cfg: &ChainConfig, runs: &[Trajectory]) -> CltReport {
    let refs = References::new(&cfg.p);
    let scale = (cfg.steps as f64).sqrt();
    let mut endpoint = SquareMoments::default();
    let mut batched = SquareMoments::default();
    let mut embedded = SquareMoments::default();
    for t in runs {
        endpoint.push((t.final_position as f64 - cfg.steps as f64 * refs.velocity) / scale);
        batched.merge(&t.batched);
        embedded.merge(&t.embedded);
    }
    let h = &refs.exit_up_exact;
    let four_h_q = Rational::from_integer(4.into()) * h * (Rational::one() - h);
    CltReport {
        walk_endpoint: report(cfg, endpoint.estimate(), endpoint.std_error(), endpoint.count, None),
        walk_batched: report(cfg, batched.estimate(), batched.std_error(), batched.count, None),
        embedded: report(cfg, embedded.estimate(), embedded.std_error(), embedded.count, Some(four_h_q)),
        embedded_block: cfg.embedded_block,
        batch_len: cfg.batch_len(),
    }
}

pub fn estimate_clt_variance(cfg: &ChainConfig) -> Result<CltReport> {
    let runs = run_chain(cfg)?;
    Ok(clt_from(cfg, &runs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullReport {
    pub velocity: SimulationReport,
    pub hitting: HittingReport,
    pub clt: CltReport,
}

/// All estimators from a single set of trajectories.
pub fn simulate_all(cfg: &ChainConfig) -> Result<FullReport> {
    let runs = run_chain(cfg)?;
    Ok(FullReport {
        velocity: velocity_from(cfg, &runs),
        hitting: hitting_from(cfg, &runs),
        clt: clt_from(cfg, &runs),
    })
}

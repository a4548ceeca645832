//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run
//! with `cargo test --test acceptance -- --nocapture --test-threads=1` to
//! see them in order.

use std::process::Command;
use std::time::{Duration, Instant};

use cbd_lab::ordering::{canonical_ordering, class_count, CyclicOrdering};
use cbd_lab::permutation::{apply_permutation, Permutation};
use cbd_lab::products::{duality_check, greedy_ordering};
use cbd_lab::rational::{rat, to_fixed, Rational};
use cbd_lab::rwre::{compare_all_orderings, compare_cbd_rwre, rwre_transience, Relation};
use cbd_lab::search::{
    check_greedy_product_conjecture, distinct_speeds, product_census, smoothness_minimizers,
    SearchConfig,
};
use cbd_lab::simulate::{simulate_all, ChainConfig};
use cbd_lab::speed::{
    classify_sign, rho_summary, stationary_distribution, velocity_explicit, velocity_hitting,
    velocity_stationary, Sign,
};
use cbd_lab::{PositiveVector, ProbabilityVector};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeds for the stochastic criterion: the second is used only if the first
/// run misses.
const MC_SEEDS: [u64; 2] = [20240601, 77_000_017];

fn verdict(criterion: u32, title: &str, ok: bool, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {title} -- {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn hundredths(xs: &[f64]) -> ProbabilityVector {
    ProbabilityVector::new(
        xs.iter()
            .map(|&x| rat((x * 100.0).round() as i64, 100))
            .collect(),
    )
    .unwrap()
}

fn random_probability(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let den = rng.random_range(2..=max_den);
    rat(rng.random_range(1..den), den)
}

fn random_environment(rng: &mut ChaCha8Rng, m: usize, max_den: i64) -> ProbabilityVector {
    ProbabilityVector::new((0..m).map(|_| random_probability(rng, max_den)).collect()).unwrap()
}

fn random_positive(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let den = rng.random_range(1..=max_den);
    rat(rng.random_range(1..=10 * den), den)
}

/// The dihedral class of the arrangement `values` of the entries of `base`.
fn class_of(base: &[Rational], values: &[Rational]) -> CyclicOrdering {
    let idx: Vec<usize> = values
        .iter()
        .map(|v| base.iter().position(|x| x == v).expect("value present"))
        .collect();
    canonical_ordering(&idx).unwrap()
}

fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x, 1)).collect()
}

#[test]
fn criterion_01_exact_three_site_fixture() {
    let p = ProbabilityVector::parse(&["2/5", "3/5", "4/5"]).unwrap();
    let run = || {
        (
            velocity_explicit(&p).velocity,
            velocity_stationary(&p).velocity,
            velocity_hitting(&p).velocity,
            stationary_distribution(&p).pi,
            stationary_distribution(&p.reversed()).pi,
        )
    };
    run();
    let mut times: Vec<Duration> = (0..5)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(run());
            t.elapsed()
        })
        .collect();
    times.sort();
    let elapsed = times[2];
    let (a, b, c, pi, pi_rev) = run();
    let v = rat(27, 140);
    let ok = a == v
        && b == v
        && c == v
        && pi == vec![rat(22, 56), rat(13, 56), rat(21, 56)]
        && pi_rev == vec![rat(16, 56), rat(23, 56), rat(17, 56)]
        && elapsed < Duration::from_millis(1);
    verdict(
        1,
        "v(2/5,3/5,4/5) = 27/140 by all routes, stationary laws exact, < 1 ms",
        ok,
        format!("explicit {a}, stationary {b}, hitting {c}, pi {pi:?}, reversed {pi_rev:?}, median {elapsed:?}"),
    );
}

#[test]
fn criterion_02_distinct_speed_census() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = SearchConfig::default();
    let mut failures = Vec::new();
    let mut trials = 0;
    for m in 4..=7 {
        let bound = class_count(m) as usize;
        let mut done = 0;
        while done < 50 {
            let p = random_environment(&mut rng, m, 10_000);
            if rho_summary(&p).gamma == Rational::one() {
                continue;
            }
            let r = distinct_speeds(&p, &cfg).unwrap();
            if r.distinct_speed_count != bound || r.class_count != bound {
                failures.push(format!("m={m} p={p} count={} collisions={:?}", r.distinct_speed_count, r.collisions));
            }
            done += 1;
            trials += 1;
        }
    }
    // engineered ties: the upper bound must still hold
    let tied = [
        hundredths(&[0.7, 0.7, 0.6, 0.5, 0.4]),
        hundredths(&[0.9, 0.9, 0.9, 0.2, 0.2, 0.6]),
        hundredths(&[0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5]),
        hundredths(&[0.8, 0.3, 0.8, 0.3, 0.6, 0.6, 0.1]),
    ];
    for p in &tied {
        let r = distinct_speeds(p, &cfg).unwrap();
        if r.distinct_speed_count > class_count(p.len()) as usize {
            failures.push(format!("bound violated for {p}"));
        }
    }
    let p7 = random_environment(&mut rng, 7, 10_000);
    let t = Instant::now();
    let r7 = distinct_speeds(&p7, &cfg).unwrap();
    let elapsed = t.elapsed();
    let ok = failures.is_empty() && r7.class_count == 360 && elapsed < Duration::from_secs(1);
    verdict(
        2,
        "generic census gives (m-1)!/2 speeds for m = 4..7; bound holds with ties; m = 7 < 1 s",
        ok,
        format!("{trials} random trials, {} tie vectors, failures {failures:?}, m=7 census {elapsed:?}", tied.len()),
    );
}

#[test]
fn criterion_03_maximal_speed_examples() {
    let cfg = SearchConfig::default();
    let p = hundredths(&[0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3]);
    let q = hundredths(&[0.8, 0.7, 0.6, 0.5, 0.4, 0.35, 0.3]);
    let sigma = Permutation::new(vec![3, 5, 1, 0, 6, 2, 4]).unwrap();
    let sigma_prime = Permutation::new(vec![3, 5, 0, 1, 6, 2, 4]).unwrap();

    let p_sigma = apply_permutation(p.entries(), &sigma).unwrap();
    let q_sigma_prime = apply_permutation(q.entries(), &sigma_prime).unwrap();
    let arrangements_ok = p_sigma == hundredths(&[0.6, 0.7, 0.4, 0.9, 0.3, 0.8, 0.5]).entries()
        && q_sigma_prime == hundredths(&[0.6, 0.5, 0.35, 0.8, 0.3, 0.7, 0.4]).entries();

    let rp = distinct_speeds(&p, &cfg).unwrap();
    let rq = distinct_speeds(&q, &cfg).unwrap();
    let cross_p = velocity_explicit(&ProbabilityVector::new(apply_permutation(p.entries(), &sigma_prime).unwrap()).unwrap()).velocity;
    let cross_q = velocity_explicit(&ProbabilityVector::new(apply_permutation(q.entries(), &sigma).unwrap()).unwrap()).velocity;

    let ok = arrangements_ok
        && to_fixed(&rp.max_speed, 5) == "0.19857"
        && rp.max_orderings == vec![class_of(p.entries(), &p_sigma)]
        && to_fixed(&cross_p, 5) == "0.19787"
        && cross_p < rp.max_speed
        && to_fixed(&rq.max_speed, 5) == "0.04675"
        && rq.max_orderings == vec![class_of(q.entries(), &q_sigma_prime)]
        && to_fixed(&cross_q, 5) == "0.04668"
        && cross_q < rq.max_speed;
    verdict(
        3,
        "maximal speeds 0.19857 / 0.04675 at the stated orderings; cross values 0.19787 / 0.04668",
        ok,
        format!(
            "max(i) {} = {}, cross(i) {} = {}, max(ii) {} = {}, cross(ii) {} = {}",
            rp.max_speed,
            to_fixed(&rp.max_speed, 5),
            cross_p,
            to_fixed(&cross_p, 5),
            rq.max_speed,
            to_fixed(&rq.max_speed, 5),
            cross_q,
            to_fixed(&cross_q, 5)
        ),
    );
}

#[test]
fn criterion_04_greedy_maximizes_short_and_long_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cfg = SearchConfig::default();
    let mut checks = 0;
    let mut failures = Vec::new();
    for m in 1..=8usize {
        let rs: Vec<usize> = (1..=m).filter(|&r| r <= 3 || r + 3 >= m).collect();
        for _ in 0..100 {
            let mut xs: Vec<Rational> = Vec::new();
            while xs.len() < m {
                let x = random_positive(&mut rng, 1000);
                if !xs.contains(&x) {
                    xs.push(x);
                }
            }
            xs.sort_by(|a, b| b.cmp(a));
            let a = PositiveVector::new(xs).unwrap();
            let v = check_greedy_product_conjecture(&a, &rs, &cfg).unwrap();
            checks += 1;
            if !v.holds {
                failures.push(format!("m={m} a={a} {:?}", v.counterexample));
            }
        }
    }
    verdict(
        4,
        "greedy class maximizes P_r for r <= 3 or r >= m-3, all m <= 8",
        failures.is_empty(),
        format!("{checks} strictly decreasing vectors, failures {failures:?}"),
    );
}

#[test]
fn criterion_05_greedy_minimizes_speed_up_to_seven() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = SearchConfig::default();
    let mut failures = Vec::new();
    let mut trials = 0;
    for m in 1..=7usize {
        let greedy = greedy_ordering(m);
        let mut done = 0;
        while done < 100 {
            let mut xs: Vec<Rational> = (0..m).map(|_| random_probability(&mut rng, 10_000)).collect();
            xs.sort_by(|a, b| b.cmp(a));
            let p = ProbabilityVector::new(xs).unwrap();
            if classify_sign(&p) != Sign::Positive {
                continue;
            }
            done += 1;
            trials += 1;
            let distinct = p.windows(2).all(|w| w[0] != w[1]);
            let census = distinct_speeds(&p, &cfg).unwrap();
            let smooth = smoothness_minimizers(&p, &cfg).unwrap();
            let speed_ok = if distinct {
                census.min_orderings == vec![greedy.clone()]
            } else {
                census.min_orderings.contains(&greedy)
            };
            let smooth_ok = if distinct {
                smooth == vec![greedy.clone()]
            } else {
                smooth.contains(&greedy)
            };
            if !speed_ok || !smooth_ok {
                failures.push(format!("m={m} p={p} speed argmin {:?} smooth argmin {:?}", census.min_orderings, smooth));
            }
        }
    }
    verdict(
        5,
        "greedy class is the speed minimizer and the roughness minimizer for m <= 7",
        failures.is_empty(),
        format!("{trials} non-increasing vectors with gamma < 1, failures {failures:?}"),
    );
}

#[test]
fn criterion_06_cyclic_product_minimizers() {
    let cfg = SearchConfig::default();
    let cases: [(&[i64], usize, &[i64]); 4] = [
        (&[9, 7, 6, 5, 4, 3], 2, &[9, 3, 7, 5, 6, 4]),
        (&[9, 7, 6, 5, 4, 3], 3, &[9, 3, 6, 7, 4, 5]),
        (&[10, 5, 4, 3, 2, 1], 3, &[10, 1, 4, 5, 2, 3]),
        (&[10, 9, 6, 5, 3, 1], 3, &[10, 1, 9, 6, 3, 5]),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (a, r, expected) in cases {
        let a = PositiveVector::new(ints(a)).unwrap();
        let census = product_census(&a, &[r], &cfg).unwrap();
        let argmin = census.argmin(r);
        let want = class_of(a.entries(), &ints(expected));
        let min = census.value(&argmin[0], r).unwrap().clone();
        ok &= argmin == vec![want];
        details.push(format!("a={a} r={r} min P_r={min} argmin={:?}", argmin.iter().map(|o| o.to_string()).collect::<Vec<_>>()));
    }
    // the paper's contrasting orderings are not minimal
    let a = PositiveVector::new(ints(&[9, 7, 6, 5, 4, 3])).unwrap();
    let census = product_census(&a, &[2, 3], &cfg).unwrap();
    let alt = class_of(a.entries(), &ints(&[9, 3, 6, 7, 4, 5]));
    let first = class_of(a.entries(), &ints(&[9, 3, 7, 5, 6, 4]));
    ok &= census.value(&alt, 2) > census.value(&first, 2);
    ok &= census.value(&first, 3) > census.value(&alt, 3);
    verdict(6, "brute-force P_2 / P_3 minimizers match the stated orderings", ok, details.join("; "));
}

#[test]
fn criterion_07_invariance_duality_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = [0usize; 3];
    for _ in 0..1000 {
        let m = rng.random_range(1..=8);
        let p = random_environment(&mut rng, m, 1000);
        let k = rng.random_range(0..m);
        let mut moved = p.rotated(k);
        if rng.random_bool(0.5) {
            moved = moved.reversed();
        }
        if velocity_stationary(&moved).velocity != velocity_stationary(&p).velocity {
            bad[0] += 1;
        }
    }
    for _ in 0..1000 {
        let m = rng.random_range(2..=8);
        let a = PositiveVector::new((0..m).map(|_| random_positive(&mut rng, 1000)).collect()).unwrap();
        let mut images: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            images.swap(i, rng.random_range(0..=i));
        }
        let sigma = Permutation::new(images).unwrap();
        let r = rng.random_range(1..m);
        if !duality_check(&sigma, &a, r).unwrap() {
            bad[1] += 1;
        }
    }
    let mut trials = 0;
    while trials < 1000 {
        let m = rng.random_range(1..=8);
        let p = random_environment(&mut rng, m, 1000);
        let i = rng.random_range(0..m);
        let room = Rational::one() - &p[i];
        let eps = room * rat(rng.random_range(1..1000), 1000);
        let mut bumped = p.entries().to_vec();
        bumped[i] += eps;
        let bumped = ProbabilityVector::new(bumped).unwrap();
        trials += 1;
        if velocity_explicit(&bumped).velocity <= velocity_explicit(&p).velocity {
            bad[2] += 1;
        }
    }
    verdict(
        7,
        "rotation/reversal invariance, reciprocal duality and strict monotonicity, exact",
        bad == [0, 0, 0],
        format!("violations (invariance, duality, monotonicity) = {bad:?} over 1000 trials each"),
    );
}

#[test]
fn criterion_08_monte_carlo_agreement() {
    let p = ProbabilityVector::parse(&["2/5", "3/5", "4/5"]).unwrap();
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = false;
    for seed in MC_SEEDS {
        let cfg = ChainConfig::new(p.clone(), 1_000_000, 30, seed);
        let r = simulate_all(&cfg).unwrap();
        let v_ok = r.velocity.exact_reference == Some(rat(27, 140)) && r.velocity.within(4.0);
        let h_ok = r.hitting.exit_up.exact_reference == Some(rat(4, 5)) && r.hitting.exit_up.within(4.0);
        let w = &r.clt.embedded;
        let w_ok = w.exact_reference == Some(rat(16, 25)) && w.relative_error().unwrap() <= 0.10;
        lines.push(format!(
            "seed {seed}: v {:.6}±{:.6} (z {:.2}), h {:.5}±{:.5} (z {:.2}), W var {:.4} (rel err {:.4})",
            r.velocity.estimate,
            r.velocity.std_error,
            r.velocity.z_score().unwrap(),
            r.hitting.exit_up.estimate,
            r.hitting.exit_up.std_error,
            r.hitting.exit_up.z_score().unwrap(),
            w.estimate,
            w.relative_error().unwrap()
        ));
        if v_ok && h_ok && w_ok {
            ok = true;
            break;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        8,
        "Monte Carlo velocity, exit probability and embedded variance match exact values; < 30 s",
        ok && elapsed < Duration::from_secs(30),
        format!("{} in {elapsed:?}", lines.join(" | ")),
    );
}

#[test]
fn criterion_09_rwre_comparison() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let m = rng.random_range(1..=8);
        let p = random_environment(&mut rng, m, 1000);
        if rwre_transience(&p) != (classify_sign(&p) == Sign::Positive) {
            mismatches += 1;
        }
    }
    let mut dominance_failures = 0;
    let mut done = 0;
    while done < 1000 {
        let p = random_environment(&mut rng, 2, 1000);
        if classify_sign(&p) != Sign::Positive {
            continue;
        }
        done += 1;
        let c = compare_cbd_rwre(&p).unwrap();
        if c.relation == Relation::RwreGreater {
            dominance_failures += 1;
        }
    }
    let example = ProbabilityVector::parse(&["0.57", "0.87", "0.98", "0.79", "0.64", "0.56"]).unwrap();
    let rows = compare_all_orderings(&example, &SearchConfig::default()).unwrap();
    let slower: Vec<_> = rows.iter().filter(|(_, c)| c.relation == Relation::RwreGreater).collect();
    let (slowest, report) = rows
        .iter()
        .min_by(|a, b| a.1.cbd_velocity.cmp(&b.1.cbd_velocity))
        .unwrap();
    let ok = mismatches == 0 && dominance_failures == 0 && !slower.is_empty() && report.cbd_velocity > Rational::zero();
    verdict(
        9,
        "transience criteria match; m = 2 CBD >= RWRE; example vector has slower CBD orderings",
        ok,
        format!(
            "transience mismatches {mismatches}, m=2 violations {dominance_failures}, {} of {} classes slower than RWRE {} (slowest {} at {})",
            slower.len(),
            rows.len(),
            report.rwre_velocity,
            report.cbd_velocity,
            slowest
        ),
    );
}

fn run_cli(args: &[&str], threads: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_cbd-lab"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_10_cli_determinism() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["speed", "-p", "2/5,3/5,4/5"],
        vec!["census", "-p", "0.9,0.8,0.7,0.6,0.5,0.4,0.3"],
        vec!["products", "-p", "9,7,6,5,4,3"],
        vec!["check", "greedy-products", "-p", "9,7,6,5,4,3,2,1", "-r", "2,3,5"],
        vec!["check", "min-speed", "-p", "0.9,0.8,0.7,0.6,0.5,0.4"],
        vec!["simulate", "-p", "2/5,3/5,4/5", "-n", "100000", "-R", "8", "--seed", "42"],
        vec!["rwre", "-p", "0.57,0.87,0.98,0.79,0.64,0.56", "--all-orderings"],
    ];
    let mut mismatches = Vec::new();
    for args in &commands {
        let (c1, a) = run_cli(args, "1");
        let (c2, b) = run_cli(args, "4");
        let (c3, c) = run_cli(args, "4");
        if c1 != 0 || c2 != 0 || c3 != 0 || a != b || b != c || a.is_empty() {
            mismatches.push(args.join(" "));
        }
    }
    verdict(
        10,
        "identical arguments and seed give byte-identical JSON (any worker count)",
        mismatches.is_empty(),
        format!("{} commands, mismatches {mismatches:?}", commands.len()),
    );
}

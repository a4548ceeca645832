//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and writes the report; it returns the process exit code.
//!
//! Exit codes: 0 success, 2 validation error, 3 budget exceeded,
//! 4 conjecture counterexample found.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::ordering::CyclicOrdering;
use crate::products::greedy_ordering;
use crate::rational::{parse_rational, to_significant, Rational};
use crate::report::{exact_strings, ExactValue, DECIMAL_DIGITS, SCHEMA};
use crate::rwre::{compare_all_orderings, compare_cbd_rwre, solomon_velocity, Relation};
use crate::search::{
    check_greedy_product_conjecture, check_min_speed_conjecture, distinct_speeds, product_census,
    ConjectureVerdict, SearchConfig,
};
use crate::simulate::{simulate_all, ChainConfig, SimulationReport};
use crate::speed::{
    classify_sign, exit_probability, rho_summary, smoothness, stationary_distribution,
    velocity_explicit, velocity_hitting, velocity_stationary,
};
use crate::vector::{PositiveVector, ProbabilityVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;

pub const DEFAULT_MAX_STEPS: u128 = 100_000_000;

#[derive(Debug, Parser)]
#[command(name = "cbd-lab", version, about = "Exact speeds of cyclic birth-death chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Velocity by all three exact routes, sign and stationary law
    Speed(Input),
    /// Speed of every rearrangement class, distinct count and extremes
    Census {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
    },
    /// Cyclic-product sums P_r over every rearrangement class
    Products {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        r: RSet,
    },
    /// Exhaustive checks of the greedy-ordering conjectures
    Check {
        #[command(subcommand)]
        which: Check,
    },
    /// Seeded Monte Carlo estimates of speed, exit law and variance
    Simulate {
        #[command(flatten)]
        input: Input,
        /// Steps per replication
        #[arg(short = 'n', long = "steps", default_value_t = 1_000_000)]
        steps: u64,
        /// Number of replications
        #[arg(short = 'R', long = "replications", default_value_t = 30)]
        replications: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Limit on steps × replications
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u128,
    },
    /// Compare with the i.i.d. environment walk on the same values
    Rwre {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        /// Compare every rearrangement class, not just the given order
        #[arg(long)]
        all_orderings: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Greedy arrangement maximizes every requested P_r
    GreedyProducts {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        r: RSet,
    },
    /// Greedy arrangement minimizes the speed
    MinSpeed {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Comma-separated rationals, e.g. 2/5,3/5,0.8
    #[arg(short = 'p', long = "probs", visible_alias = "values", value_delimiter = ',', allow_hyphen_values = true)]
    probs: Vec<String>,
    /// File with one rational per line; `#` starts a comment
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Largest m accepted for exhaustive enumeration
    #[arg(long, default_value_t = 10)]
    max_m: usize,
}

#[derive(Debug, Args)]
pub struct RSet {
    /// Comma-separated r values (default: all of 1..=m)
    #[arg(short = 'r', long = "r-set", value_delimiter = ',')]
    r_set: Vec<usize>,
}

impl Budget {
    fn config(&self) -> SearchConfig {
        SearchConfig { max_m: self.max_m }
    }
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } | Error::StepBudget { .. } => Failure::Budget(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Self { body, code: EXIT_OK }
    }
}

type Outcome = Result<Output, Failure>;

impl Input {
    fn literals(&self) -> Result<Vec<String>, Failure> {
        match (&self.file, self.probs.is_empty()) {
            (Some(_), false) => Err(Failure::Invalid("use either --probs or --file, not both".into())),
            (None, true) => Err(Failure::Invalid("no input vector: pass --probs or --file".into())),
            (None, false) => Ok(self.probs.clone()),
            (Some(path), true) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
                Ok(parse_vector_file(&text))
            }
        }
    }

    fn probabilities(&self) -> Result<ProbabilityVector, Failure> {
        Ok(ProbabilityVector::parse(&self.literals()?)?)
    }

    fn positive(&self) -> Result<PositiveVector, Failure> {
        Ok(PositiveVector::parse(&self.literals()?)?)
    }
}

/// One literal per line; `#` comments and blank lines are skipped.
pub fn parse_vector_file(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(&cli.command) {
        Ok(output) => {
            if out.write_all(output.body.as_bytes()).is_err() {
                return EXIT_INVALID;
            }
            output.code
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_BUDGET
        }
    }
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Speed(input) => speed(input),
        Command::Census { input, budget } => census(input, budget),
        Command::Products { input, budget, r } => products(input, budget, r),
        Command::Check {
            which: Check::GreedyProducts { input, budget, r },
        } => check_products(input, budget, r),
        Command::Check {
            which: Check::MinSpeed { input, budget },
        } => check_speed(input, budget),
        Command::Simulate {
            input,
            steps,
            replications,
            seed,
            max_steps,
        } => simulate(input, *steps, *replications, *seed, *max_steps),
        Command::Rwre {
            input,
            budget,
            all_orderings,
        } => rwre(input, budget, *all_orderings),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn decimal(x: &Rational) -> f64 {
    to_significant(x, DECIMAL_DIGITS)
}

/// Float estimates rendered with a fixed number of significant digits.
fn rounded(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x.is_finite() { 0.0 } else { f64::NAN };
    }
    format!("{:.*e}", DECIMAL_DIGITS as usize - 1, x).parse().unwrap_or(x)
}

fn indices_str(o: &CyclicOrdering) -> String {
    o.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn values_str(values: &[Rational]) -> String {
    values.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct OrderingJson {
    indices: Vec<usize>,
    values: Vec<String>,
}

impl OrderingJson {
    fn new(o: &CyclicOrdering, entries: &[Rational]) -> Self {
        Self {
            indices: o.indices().to_vec(),
            values: exact_strings(&o.arrange(entries)),
        }
    }
}

#[derive(Serialize)]
struct SpeedJson {
    schema: &'static str,
    command: &'static str,
    p: Vec<String>,
    m: usize,
    velocity: String,
    decimal: f64,
    sign: &'static str,
    gamma: ExactValue,
    methods: MethodsJson,
    agree: bool,
    stationary_distribution: Vec<String>,
    exit_probability: ExactValue,
    smoothness: ExactValue,
}

#[derive(Serialize)]
struct MethodsJson {
    explicit: String,
    stationary: String,
    hitting: String,
}

fn speed(input: &Input) -> Outcome {
    let p = input.probabilities()?;
    let explicit = velocity_explicit(&p);
    let stationary = velocity_stationary(&p);
    let hitting = velocity_hitting(&p);
    let agree = explicit.velocity == stationary.velocity && explicit.velocity == hitting.velocity;
    let pi = stationary_distribution(&p).pi;
    let report = SpeedJson {
        schema: SCHEMA,
        command: "speed",
        p: exact_strings(&p),
        m: p.len(),
        velocity: explicit.velocity.to_string(),
        decimal: decimal(&explicit.velocity),
        sign: classify_sign(&p).as_str(),
        gamma: ExactValue::from(&rho_summary(&p).gamma),
        methods: MethodsJson {
            explicit: explicit.velocity.to_string(),
            stationary: stationary.velocity.to_string(),
            hitting: hitting.velocity.to_string(),
        },
        agree,
        stationary_distribution: exact_strings(&pi),
        exit_probability: ExactValue::from(&exit_probability(&p)),
        smoothness: ExactValue::from(&smoothness(&p)),
    };
    let body = match input.format {
        Format::Json => json(&report),
        Format::Csv => format!(
            "p,velocity,decimal,sign,gamma,agree\n{},{},{},{},{},{}\n",
            values_str(&p),
            report.velocity,
            report.decimal,
            report.sign,
            report.gamma.exact,
            agree
        ),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "p           {}", p);
            let _ = writeln!(s, "gamma       {} ({})", report.gamma.exact, report.gamma.decimal);
            let _ = writeln!(s, "sign        {}", report.sign);
            let _ = writeln!(s, "explicit    {}", report.methods.explicit);
            let _ = writeln!(s, "stationary  {}", report.methods.stationary);
            let _ = writeln!(s, "hitting     {}", report.methods.hitting);
            let _ = writeln!(s, "velocity    {} ≈ {}", report.velocity, report.decimal);
            let _ = writeln!(s, "pi          ({})", report.stationary_distribution.join(","));
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct ClassSpeedJson {
    ordering: Vec<usize>,
    values: Vec<String>,
    speed: String,
    decimal: f64,
}

#[derive(Serialize)]
struct CensusJson {
    schema: &'static str,
    command: &'static str,
    p: Vec<String>,
    m: usize,
    class_count: usize,
    distinct_speed_count: usize,
    min_speed: ExactValue,
    max_speed: ExactValue,
    min_ordering: OrderingJson,
    max_ordering: OrderingJson,
    min_orderings: Vec<Vec<usize>>,
    max_orderings: Vec<Vec<usize>>,
    greedy_ordering: OrderingJson,
    collisions: Vec<[Vec<usize>; 2]>,
    classes: Vec<ClassSpeedJson>,
}

fn census(input: &Input, budget: &Budget) -> Outcome {
    let p = input.probabilities()?;
    let report = distinct_speeds(&p, &budget.config())?;
    let entries = p.entries();
    let body = match input.format {
        Format::Json => json(&CensusJson {
            schema: SCHEMA,
            command: "census",
            p: exact_strings(entries),
            m: report.m,
            class_count: report.class_count,
            distinct_speed_count: report.distinct_speed_count,
            min_speed: ExactValue::from(&report.min_speed),
            max_speed: ExactValue::from(&report.max_speed),
            min_ordering: OrderingJson::new(&report.min_ordering, entries),
            max_ordering: OrderingJson::new(&report.max_ordering, entries),
            min_orderings: report.min_orderings.iter().map(|o| o.indices().to_vec()).collect(),
            max_orderings: report.max_orderings.iter().map(|o| o.indices().to_vec()).collect(),
            greedy_ordering: OrderingJson::new(&greedy_ordering(p.len()), entries),
            collisions: report
                .collisions
                .iter()
                .map(|(a, b)| [a.indices().to_vec(), b.indices().to_vec()])
                .collect(),
            classes: report
                .speed_table
                .iter()
                .map(|(o, v)| ClassSpeedJson {
                    ordering: o.indices().to_vec(),
                    values: exact_strings(&o.arrange(entries)),
                    speed: v.to_string(),
                    decimal: decimal(v),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut s = String::from("ordering,values,speed,decimal\n");
            for (o, v) in &report.speed_table {
                let _ = writeln!(s, "{},{},{},{}", indices_str(o), values_str(&o.arrange(entries)), v, decimal(v));
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "m = {}, classes = {}, distinct speeds = {}", report.m, report.class_count, report.distinct_speed_count);
            let _ = writeln!(s, "min {} at {}", decimal(&report.min_speed), values_str(&report.min_ordering.arrange(entries)));
            let _ = writeln!(s, "max {} at {}", decimal(&report.max_speed), values_str(&report.max_ordering.arrange(entries)));
            for (o, v) in &report.speed_table {
                let _ = writeln!(s, "{:<24} {:>16}  {}", o.to_string(), decimal(v), v);
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct ProductExtremesJson {
    r: usize,
    min: String,
    argmin: Vec<Vec<usize>>,
    max: String,
    argmax: Vec<Vec<usize>>,
    greedy_value: String,
    greedy_is_max: bool,
}

#[derive(Serialize)]
struct ClassProductsJson {
    ordering: Vec<usize>,
    values: Vec<String>,
    products: Vec<String>,
}

#[derive(Serialize)]
struct ProductsJson {
    schema: &'static str,
    command: &'static str,
    a: Vec<String>,
    m: usize,
    r_values: Vec<usize>,
    greedy_ordering: OrderingJson,
    extremes: Vec<ProductExtremesJson>,
    classes: Vec<ClassProductsJson>,
}

fn products(input: &Input, budget: &Budget, r: &RSet) -> Outcome {
    let a = input.positive()?;
    let census = product_census(&a, &r.r_set, &budget.config())?;
    let entries = a.entries();
    let body = match input.format {
        Format::Json => {
            let extremes = census
                .r_values
                .iter()
                .map(|&r| {
                    let argmin = census.argmin(r);
                    let argmax = census.argmax(r);
                    let min = census.value(&argmin[0], r).unwrap().to_string();
                    let max = census.value(&argmax[0], r).unwrap();
                    let greedy_value = census.value(&census.greedy, r).unwrap();
                    ProductExtremesJson {
                        r,
                        min,
                        argmin: argmin.iter().map(|o| o.indices().to_vec()).collect(),
                        max: max.to_string(),
                        argmax: argmax.iter().map(|o| o.indices().to_vec()).collect(),
                        greedy_value: greedy_value.to_string(),
                        greedy_is_max: greedy_value == max,
                    }
                })
                .collect();
            json(&ProductsJson {
                schema: SCHEMA,
                command: "products",
                a: exact_strings(entries),
                m: census.m,
                r_values: census.r_values.clone(),
                greedy_ordering: OrderingJson::new(&census.greedy, entries),
                extremes,
                classes: census
                    .rows
                    .iter()
                    .map(|(o, vals)| ClassProductsJson {
                        ordering: o.indices().to_vec(),
                        values: exact_strings(&o.arrange(entries)),
                        products: exact_strings(vals),
                    })
                    .collect(),
            })
        }
        Format::Csv | Format::Table => {
            let sep = if input.format == Format::Csv { "," } else { "\t" };
            let mut s = format!("ordering{sep}values");
            for r in &census.r_values {
                let _ = write!(s, "{sep}P_{r}");
            }
            s.push('\n');
            for (o, vals) in &census.rows {
                let _ = write!(s, "{}{sep}{}", indices_str(o), values_str(&o.arrange(entries)));
                for v in vals {
                    let _ = write!(s, "{sep}{v}");
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct CounterexampleJson {
    ordering: OrderingJson,
    r: Option<usize>,
    greedy_value: String,
    better_value: String,
}

#[derive(Serialize)]
struct VerdictJson {
    schema: &'static str,
    command: &'static str,
    conjecture: &'static str,
    input: Vec<String>,
    m: usize,
    r_values: Option<Vec<usize>>,
    greedy_ordering: OrderingJson,
    holds: bool,
    counterexample: Option<CounterexampleJson>,
}

fn verdict_output(
    format: Format,
    conjecture: &'static str,
    entries: &[Rational],
    r_values: Option<Vec<usize>>,
    verdict: ConjectureVerdict,
) -> Output {
    let code = if verdict.holds { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
    let counterexample = verdict.counterexample.as_ref().map(|c| CounterexampleJson {
        ordering: OrderingJson::new(&c.ordering, entries),
        r: c.r,
        greedy_value: c.greedy_value.to_string(),
        better_value: c.better_value.to_string(),
    });
    let body = match format {
        Format::Json => json(&VerdictJson {
            schema: SCHEMA,
            command: "check",
            conjecture,
            input: exact_strings(entries),
            m: entries.len(),
            r_values,
            greedy_ordering: OrderingJson::new(&greedy_ordering(entries.len()), entries),
            holds: verdict.holds,
            counterexample,
        }),
        Format::Csv => {
            let mut s = String::from("conjecture,holds,ordering,r,greedy_value,better_value\n");
            match &verdict.counterexample {
                Some(c) => {
                    let r = c.r.map(|r| r.to_string()).unwrap_or_default();
                    let _ = writeln!(s, "{conjecture},false,{},{r},{},{}", indices_str(&c.ordering), c.greedy_value, c.better_value);
                }
                None => {
                    let _ = writeln!(s, "{conjecture},true,,,,");
                }
            }
            s
        }
        Format::Table => match &verdict.counterexample {
            None => format!("{conjecture}: holds\n"),
            Some(c) => format!(
                "{conjecture}: COUNTEREXAMPLE at {} (r = {:?}): greedy {} vs {}\n",
                values_str(&c.ordering.arrange(entries)),
                c.r,
                c.greedy_value,
                c.better_value
            ),
        },
    };
    Output { body, code }
}

fn check_products(input: &Input, budget: &Budget, r: &RSet) -> Outcome {
    let a = input.positive()?;
    let rs: Vec<usize> = if r.r_set.is_empty() {
        (1..=a.len()).collect()
    } else {
        let mut rs = r.r_set.clone();
        rs.sort_unstable();
        rs.dedup();
        rs
    };
    let verdict = check_greedy_product_conjecture(&a, &rs, &budget.config())?;
    Ok(verdict_output(input.format, "greedy-products", a.entries(), Some(rs), verdict))
}

fn check_speed(input: &Input, budget: &Budget) -> Outcome {
    let p = input.probabilities()?;
    let verdict = check_min_speed_conjecture(&p, &budget.config())?;
    Ok(verdict_output(input.format, "min-speed", p.entries(), None, verdict))
}

#[derive(Serialize)]
struct EstimateJson {
    estimate: f64,
    std_error: f64,
    samples: u64,
    exact: Option<String>,
    exact_decimal: Option<f64>,
    z_score: Option<f64>,
}

impl From<&SimulationReport> for EstimateJson {
    fn from(r: &SimulationReport) -> Self {
        Self {
            estimate: rounded(r.estimate),
            std_error: rounded(r.std_error),
            samples: r.samples,
            exact: r.exact_reference.as_ref().map(|x| x.to_string()),
            exact_decimal: r.exact_reference.as_ref().map(decimal),
            z_score: r.z_score().filter(|z| z.is_finite()).map(rounded),
        }
    }
}

#[derive(Serialize)]
struct HittingJson {
    exit_up: EstimateJson,
    exit_time: EstimateJson,
    speed_from_exits: EstimateJson,
    speed_from_passages: Option<EstimateJson>,
}

#[derive(Serialize)]
struct CltJson {
    walk_endpoint: EstimateJson,
    walk_batched: EstimateJson,
    batch_len: u64,
    embedded: EstimateJson,
    embedded_block: u64,
}

#[derive(Serialize)]
struct SimulateJson {
    schema: &'static str,
    command: &'static str,
    p: Vec<String>,
    steps: u64,
    replications: u32,
    seed: u64,
    prng: &'static str,
    velocity: EstimateJson,
    hitting: HittingJson,
    clt: CltJson,
}

fn simulate(input: &Input, steps: u64, replications: u32, seed: u64, max_steps: u128) -> Outcome {
    let p = input.probabilities()?;
    let cfg = ChainConfig::new(p.clone(), steps, replications, seed);
    if cfg.total_steps() > max_steps {
        return Err(Error::StepBudget {
            requested: cfg.total_steps(),
            limit: max_steps,
        }
        .into());
    }
    let r = simulate_all(&cfg)?;
    let report = SimulateJson {
        schema: SCHEMA,
        command: "simulate",
        p: exact_strings(&p),
        steps,
        replications,
        seed,
        prng: "chacha8/seed_from_u64/stream=replication",
        velocity: (&r.velocity).into(),
        hitting: HittingJson {
            exit_up: (&r.hitting.exit_up).into(),
            exit_time: (&r.hitting.exit_time).into(),
            speed_from_exits: (&r.hitting.speed_from_exits).into(),
            speed_from_passages: r.hitting.speed_from_passages.as_ref().map(Into::into),
        },
        clt: CltJson {
            walk_endpoint: (&r.clt.walk_endpoint).into(),
            walk_batched: (&r.clt.walk_batched).into(),
            batch_len: r.clt.batch_len,
            embedded: (&r.clt.embedded).into(),
            embedded_block: r.clt.embedded_block,
        },
    };
    let rows = [
        ("velocity", &report.velocity),
        ("exit_up", &report.hitting.exit_up),
        ("exit_time", &report.hitting.exit_time),
        ("speed_from_exits", &report.hitting.speed_from_exits),
        ("walk_endpoint_variance", &report.clt.walk_endpoint),
        ("walk_batched_variance", &report.clt.walk_batched),
        ("embedded_variance", &report.clt.embedded),
    ];
    let body = match input.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("quantity,estimate,std_error,samples,exact\n");
            for (name, e) in rows {
                let _ = writeln!(s, "{name},{},{},{},{}", e.estimate, e.std_error, e.samples, e.exact.clone().unwrap_or_default());
            }
            s
        }
        Format::Table => {
            let mut s = format!("n = {steps}, R = {replications}, seed = {seed}\n");
            for (name, e) in rows {
                let _ = writeln!(
                    s,
                    "{name:<24} {:>16} ± {:<14} exact {}",
                    e.estimate,
                    e.std_error,
                    e.exact.clone().unwrap_or_else(|| "-".into())
                );
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct RwreSolomonJson {
    velocity: ExactValue,
    mean_rho: ExactValue,
    transient: bool,
    positive_speed: bool,
}

#[derive(Serialize)]
struct RwreOrderingJson {
    ordering: Vec<usize>,
    values: Vec<String>,
    cbd_velocity: String,
    decimal: f64,
    relation: Relation,
}

#[derive(Serialize)]
struct RelationCounts {
    cbd_greater: usize,
    rwre_greater: usize,
    equal: usize,
}

#[derive(Serialize)]
struct RwreJson {
    schema: &'static str,
    command: &'static str,
    p: Vec<String>,
    gamma: ExactValue,
    cbd_velocity: ExactValue,
    rwre: RwreSolomonJson,
    relation: Option<Relation>,
    relation_counts: Option<RelationCounts>,
    orderings: Option<Vec<RwreOrderingJson>>,
}

fn rwre(input: &Input, budget: &Budget, all: bool) -> Outcome {
    let p = input.probabilities()?;
    let solomon = solomon_velocity(&p);
    let comparison = compare_cbd_rwre(&p).ok();
    let per_class = if all && solomon.transient {
        Some(compare_all_orderings(&p, &budget.config())?)
    } else {
        None
    };
    let entries = p.entries();
    let report = RwreJson {
        schema: SCHEMA,
        command: "rwre",
        p: exact_strings(entries),
        gamma: ExactValue::from(&rho_summary(&p).gamma),
        cbd_velocity: ExactValue::from(&velocity_explicit(&p).velocity),
        rwre: RwreSolomonJson {
            velocity: ExactValue::from(&solomon.velocity),
            mean_rho: ExactValue::from(&solomon.mean_rho),
            transient: solomon.transient,
            positive_speed: solomon.positive,
        },
        relation: comparison.as_ref().map(|c| c.relation),
        relation_counts: per_class.as_ref().map(|rows| RelationCounts {
            cbd_greater: rows.iter().filter(|(_, c)| c.relation == Relation::CbdGreater).count(),
            rwre_greater: rows.iter().filter(|(_, c)| c.relation == Relation::RwreGreater).count(),
            equal: rows.iter().filter(|(_, c)| c.relation == Relation::Equal).count(),
        }),
        orderings: per_class.as_ref().map(|rows| {
            rows.iter()
                .map(|(o, c)| RwreOrderingJson {
                    ordering: o.indices().to_vec(),
                    values: exact_strings(&o.arrange(entries)),
                    cbd_velocity: c.cbd_velocity.to_string(),
                    decimal: decimal(&c.cbd_velocity),
                    relation: c.relation,
                })
                .collect()
        }),
    };
    let body = match input.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("ordering,values,cbd_velocity,rwre_velocity,relation\n");
            match &per_class {
                Some(rows) => {
                    for (o, c) in rows {
                        let _ = writeln!(s, "{},{},{},{},{}", indices_str(o), values_str(&o.arrange(entries)), c.cbd_velocity, c.rwre_velocity, c.relation.as_str());
                    }
                }
                None => {
                    let identity: Vec<usize> = (0..p.len()).collect();
                    let relation = comparison.as_ref().map(|c| c.relation.as_str()).unwrap_or("");
                    let _ = writeln!(s, "{},{},{},{},{relation}", identity.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "), values_str(entries), report.cbd_velocity.exact, report.rwre.velocity.exact);
                }
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "cbd velocity   {} ≈ {}", report.cbd_velocity.exact, report.cbd_velocity.decimal);
            let _ = writeln!(s, "rwre velocity  {} ≈ {}", report.rwre.velocity.exact, report.rwre.velocity.decimal);
            let _ = writeln!(s, "transient      {}", solomon.transient);
            if let Some(c) = &comparison {
                let _ = writeln!(s, "relation       {}", c.relation.as_str());
            }
            if let Some(counts) = &report.relation_counts {
                let _ = writeln!(s, "over classes   cbd_greater {}, rwre_greater {}, equal {}", counts.cbd_greater, counts.rwre_greater, counts.equal);
            }
            s
        }
    };
    Ok(Output::ok(body))
}

/// Parses the `num/den` strings of a JSON report back into rationals.
pub fn parse_exact(s: &str) -> Option<Rational> {
    parse_rational(s).ok()
}

//! `elr` — divided differences, Edmundson–Lah–Ribarič bounds and
//! f-divergence brackets from the command line.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when `verify` finds a
//! failing case.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elr_core::bounds::{self, BoundReport, Convexity, Term, Theorem};
use elr_core::divergence::{self, DivergenceReport};
use elr_core::oracle::{self, certify_convexity, AuditConfig, AuditReport, Suite};
use elr_core::{
    divided_difference, make_generator, newton_interpolant, ratio_extrema, zm_divergence_bounds, DiscreteFunctional,
    Execution, FunctionModel, GeneratorKind, GeneratorSpec, Interval, ProbabilityVector, ZipfMandelbrot,
};
use serde::Serialize;

use crate::output::{num, opt};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("--{field}: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error(transparent)]
    Core(#[from] elr_core::Error),
}

impl CliError {
    pub fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        CliError::Invalid {
            field,
            reason: reason.into(),
        }
    }

    fn missing(field: &'static str, when: &str) -> Self {
        CliError::invalid(field, format!("required {when}"))
    }
}

#[derive(Parser)]
#[command(name = "elr", version, about = "Edmundson-Lah-Ribarič bounds for n-convex functions and f-divergences")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for sampled certification and audits (ELR_SEED takes precedence).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Divided difference over a node multiset.
    Dd(DdArgs),
    /// LR difference of a function and a discrete functional.
    Lr(LrArgs),
    /// Bound or bracket of the LR difference.
    Bounds(BoundsArgs),
    /// f-divergence of two distributions, optionally with bounds.
    Div(DivArgs),
    /// Zipf-Mandelbrot pmf tables, ratio ranges and divergence bounds.
    Zm(ZmArgs),
    /// Run the built-in audit suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FunctionArgs {
    /// kl | hellinger | harmonic | jeffreys | exp | poly:c0,c1,... | power:p
    #[arg(long)]
    function: String,

    /// Domain `lo,hi` of the function (defaults to the working interval).
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
}

#[derive(Args)]
struct FunctionalArgs {
    /// Points `x1,x2,...` of the functional.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "functional_file")]
    points: Option<String>,

    /// Weights `w1,w2,...` (uniform when omitted).
    #[arg(long, conflicts_with = "functional_file")]
    weights: Option<String>,

    /// Enclosing interval `a,b`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "functional_file")]
    interval: Option<String>,

    /// JSON file `{"points": [...], "weights": [...], "interval": [a, b]}`.
    #[arg(long)]
    functional_file: Option<PathBuf>,
}

#[derive(Args)]
struct StatementArgs {
    /// tm21 | tm22 | cor21 | tm23 | tm24
    #[arg(long)]
    theorem: Option<String>,

    #[arg(long)]
    n: Option<usize>,

    /// Hermite split, required by tm21, tm22 and cor21.
    #[arg(long)]
    m: Option<usize>,

    /// convex | concave | indefinite | auto (builtin classification) |
    /// certify (sampled divided differences)
    #[arg(long, default_value = "auto")]
    convexity: String,

    /// Samples for `--convexity certify`.
    #[arg(long, default_value_t = 500)]
    samples: usize,
}

#[derive(Args)]
struct DdArgs {
    #[command(flatten)]
    function: FunctionArgs,

    /// Nodes `t0,t1:2,...` with optional `:multiplicity`.
    #[arg(long, allow_hyphen_values = true)]
    nodes: String,

    /// Also print the Newton form over the nodes.
    #[arg(long)]
    newton: bool,
}

#[derive(Args)]
struct LrArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    functional: FunctionalArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    functional: FunctionalArgs,
    #[command(flatten)]
    statement: StatementArgs,
}

#[derive(Args)]
struct DistributionArgs {
    #[arg(long, conflicts_with = "p_file")]
    p: Option<String>,

    #[arg(long, conflicts_with = "q_file")]
    q: Option<String>,

    /// JSON `{"p": [...], "q": [...]}` or two-column CSV; with --q-file, a single vector.
    #[arg(long)]
    p_file: Option<PathBuf>,

    #[arg(long)]
    q_file: Option<PathBuf>,
}

#[derive(Args)]
struct DivArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    distributions: DistributionArgs,
    #[command(flatten)]
    statement: StatementArgs,

    /// Interval `a,b` replacing the ratio range (must contain it and 1).
    #[arg(long)]
    interval: Option<String>,
}

#[derive(Args)]
struct ZmArgs {
    /// Parameters `N,q,s`; give twice for a pair of laws.
    #[arg(long, required = true)]
    zm: Vec<String>,

    /// Print the extremes of the pmf ratio of the pair.
    #[arg(long)]
    ratio_range: bool,

    /// Generator for the divergence bounds of the pair.
    #[arg(long)]
    function: Option<String>,

    #[arg(long)]
    theorem: Option<String>,

    #[arg(long)]
    n: Option<usize>,

    #[arg(long)]
    m: Option<usize>,

    /// Interval `a,b` replacing the ratio range.
    #[arg(long)]
    interval: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// identities | tightness | brackets | delegation | all
    #[arg(long, default_value = "all")]
    suite: String,

    /// Configurations per suite (per statement for brackets).
    #[arg(long)]
    cases: Option<usize>,

    /// Samples per convexity certificate.
    #[arg(long, default_value_t = 200)]
    samples: usize,

    /// Apply bounds in the reversed orientation (expected to fail).
    #[arg(long)]
    inject_wrong_parity: bool,

    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

struct Run {
    text: String,
    violations: bool,
}

impl Run {
    fn ok(text: String) -> Self {
        Run {
            text,
            violations: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(run) => {
            print!("{}", run.text);
            if run.violations {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn seed(cli_seed: u64) -> Result<u64, CliError> {
    match std::env::var("ELR_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::invalid("seed", format!("ELR_SEED=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(cli_seed),
    }
}

fn run(cli: Cli) -> Result<Run, CliError> {
    let seed = seed(cli.seed)?;
    let format = cli.format;
    match cli.command {
        Command::Dd(args) => dd(args, format).map(Run::ok),
        Command::Lr(args) => lr(args, format).map(Run::ok),
        Command::Bounds(args) => bounds_cmd(args, format, seed).map(Run::ok),
        Command::Div(args) => div(args, format, seed).map(Run::ok),
        Command::Zm(args) => zm(args, format).map(Run::ok),
        Command::Verify(args) => verify(args, format, seed),
    }
}

fn line(text: String) -> String {
    text + "\n"
}

fn generator(args: &FunctionArgs, fallback: Option<Interval>) -> Result<(GeneratorSpec, FunctionModel), CliError> {
    let kind: GeneratorKind = args
        .function
        .parse()
        .map_err(|e: elr_core::Error| CliError::invalid("function", e.to_string()))?;
    let domain = match (&args.domain, fallback) {
        (Some(d), _) => input::interval("domain", d)?,
        (None, Some(i)) => i,
        (None, None) => return Err(CliError::missing("domain", "when it cannot be inferred")),
    };
    let spec = GeneratorSpec::new(kind, domain);
    let f = make_generator(&spec)?;
    Ok((spec, f))
}

fn functional(args: &FunctionalArgs) -> Result<DiscreteFunctional, CliError> {
    if let Some(path) = &args.functional_file {
        return input::functional_file(path);
    }
    let points = input::list(
        "points",
        args.points
            .as_deref()
            .ok_or_else(|| CliError::missing("points", "unless --functional-file is given"))?,
    )?;
    let interval = input::interval(
        "interval",
        args.interval
            .as_deref()
            .ok_or_else(|| CliError::missing("interval", "unless --functional-file is given"))?,
    )?;
    let weights = match &args.weights {
        Some(w) => input::list("weights", w)?,
        None => vec![1.0 / points.len().max(1) as f64; points.len()],
    };
    Ok(DiscreteFunctional::new(points, weights, interval)?)
}

#[derive(Serialize)]
struct DdOutput {
    function: String,
    nodes: Vec<(f64, usize)>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    newton: Option<elr_core::NewtonForm>,
}

fn dd(args: DdArgs, format: Format) -> Result<String, CliError> {
    let nodes = input::nodes(&args.nodes)?;
    let entries = nodes.entries();
    let (lo, hi) = (entries[0].0, entries[entries.len() - 1].0);
    let fallback = Interval::new(lo, hi).ok();
    let (_, f) = generator(&args.function, fallback)?;
    let value = divided_difference(&f, &nodes)?;
    let newton = if args.newton {
        Some(newton_interpolant(&f, &nodes)?)
    } else {
        None
    };
    Ok(match format {
        Format::Json => line(output::json(&DdOutput {
            function: f.name().to_string(),
            nodes: entries.to_vec(),
            value,
            newton,
        })),
        Format::Csv => {
            let mut rows = vec![vec!["value".into(), String::new(), num(value)]];
            if let Some(form) = newton {
                for (j, (z, c)) in form.nodes.iter().zip(&form.coeffs).enumerate() {
                    rows.push(vec![format!("newton_{j}"), num(*z), num(*c)]);
                }
            }
            output::csv(&["quantity", "node", "value"], &rows)
        }
    })
}

#[derive(Serialize)]
struct LrOutput {
    function: String,
    interval: Interval,
    mean: f64,
    lr: f64,
}

fn lr(args: LrArgs, format: Format) -> Result<String, CliError> {
    let a = functional(&args.functional)?;
    let (_, f) = generator(&args.function, Some(a.interval()))?;
    let out = LrOutput {
        function: f.name().to_string(),
        interval: a.interval(),
        mean: a.mean(),
        lr: a.lr_difference(&f)?,
    };
    Ok(match format {
        Format::Json => line(output::json(&out)),
        Format::Csv => output::csv(&["mean", "lr"], &[vec![num(out.mean), num(out.lr)]]),
    })
}

struct Statement {
    theorem: Theorem,
    n: usize,
    m: Option<usize>,
}

fn statement(theorem: Option<&str>, n: Option<usize>, m: Option<usize>) -> Result<Statement, CliError> {
    let theorem: Theorem = theorem
        .ok_or_else(|| CliError::missing("theorem", "for bounds"))?
        .parse()
        .map_err(|e: elr_core::Error| CliError::invalid("theorem", e.to_string()))?;
    let n = n.ok_or_else(|| CliError::missing("n", "for bounds"))?;
    if theorem.uses_m() && m.is_none() {
        return Err(CliError::missing("m", &format!("for {theorem}")));
    }
    Ok(Statement {
        theorem,
        n,
        m: if theorem.uses_m() { m } else { None },
    })
}

fn convexity(
    args: &StatementArgs,
    spec: &GeneratorSpec,
    f: &FunctionModel,
    n: usize,
    seed: u64,
) -> Result<Convexity, CliError> {
    match args.convexity.to_ascii_lowercase().as_str() {
        "auto" => Ok(elr_core::classify(spec, n)?),
        "certify" => Ok(certify_convexity(f, n, args.samples, seed)?.verdict),
        other => other
            .parse()
            .map_err(|e: elr_core::Error| CliError::invalid("convexity", e.to_string())),
    }
}

/// One row per term, then the totals.
fn bound_rows(report: &BoundReport) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    let mut side = |name: &str, value: Option<f64>, terms: &[Term]| {
        for t in terms {
            rows.push(vec![
                name.to_string(),
                format!("{:?}", t.kind).to_lowercase(),
                t.k.to_string(),
                num(t.coefficient),
                num(t.moment),
                num(t.value()),
            ]);
        }
        if value.is_some() {
            rows.push(vec![name.to_string(), "total".into(), String::new(), String::new(), String::new(), opt(value)]);
        }
    };
    side("lower", report.lower, &report.lower_terms);
    side("upper", report.upper, &report.upper_terms);
    rows.push(vec!["lr".into(), "total".into(), String::new(), String::new(), String::new(), num(report.lr)]);
    rows
}

const BOUND_HEADER: [&str; 6] = ["side", "kind", "k", "coefficient", "moment", "value"];

fn bounds_cmd(args: BoundsArgs, format: Format, seed: u64) -> Result<String, CliError> {
    let s = statement(args.statement.theorem.as_deref(), args.statement.n, args.statement.m)?;
    let a = functional(&args.functional)?;
    let (spec, f) = generator(&args.function, Some(a.interval()))?;
    let class = convexity(&args.statement, &spec, &f.clone().with_domain(a.interval()), s.n, seed)?;
    let report = bounds::bound(s.theorem, &f, &a, s.n, s.m, class)?;
    Ok(match format {
        Format::Json => line(output::json(&report)),
        Format::Csv => output::csv(&BOUND_HEADER, &bound_rows(&report)),
    })
}

fn distributions(args: &DistributionArgs) -> Result<(ProbabilityVector, ProbabilityVector), CliError> {
    let inline = |field: &'static str, s: &str| -> Result<ProbabilityVector, CliError> {
        ProbabilityVector::new(input::list(field, s)?).map_err(|e| CliError::invalid(field, e.to_string()))
    };
    match (&args.p, &args.q, &args.p_file, &args.q_file) {
        (None, None, Some(pf), None) => input::pair_file(pf),
        (p, q, pf, qf) => {
            let p = match (p, pf) {
                (Some(p), _) => inline("p", p)?,
                (None, Some(pf)) => input::vector_file("p-file", pf)?,
                (None, None) => return Err(CliError::missing("p", "(or --p-file)")),
            };
            let q = match (q, qf) {
                (Some(q), _) => inline("q", q)?,
                (None, Some(qf)) => input::vector_file("q-file", qf)?,
                (None, None) => return Err(CliError::missing("q", "(or --q-file)")),
            };
            Ok((p, q))
        }
    }
}

#[derive(Serialize)]
struct DivergenceOnly {
    function: String,
    divergence: f64,
}

fn div_rows(report: &DivergenceReport) -> Vec<Vec<String>> {
    let mut rows = bound_rows(&report.bounds);
    let blank = || String::new();
    rows.push(vec!["divergence".into(), "total".into(), blank(), blank(), blank(), num(report.divergence)]);
    rows.push(vec!["chord_at_one".into(), "total".into(), blank(), blank(), blank(), num(report.chord_at_one)]);
    rows
}

fn div(args: DivArgs, format: Format, seed: u64) -> Result<String, CliError> {
    let (p, q) = distributions(&args.distributions)?;
    let interval = args.interval.as_deref().map(|s| input::interval("interval", s)).transpose()?;
    let working = match interval {
        Some(i) => i,
        None => divergence::ratio_range(&p, &q)?.to_interval()?,
    };
    let has_statement = args.statement.theorem.is_some() || args.statement.n.is_some();
    if !has_statement {
        // value only; the function must still accept every ratio
        let range = divergence::ratio_range(&p, &q).ok();
        let fallback = match range {
            Some(r) if r.a < r.b => Interval::new(r.a, r.b).ok(),
            _ => Interval::new(0.5, 2.0).ok(),
        };
        let (_, f) = generator(&args.function, interval.or(fallback))?;
        let value = elr_core::f_divergence(&f, &p, &q)?;
        return Ok(match format {
            Format::Json => line(output::json(&DivergenceOnly {
                function: f.name().to_string(),
                divergence: value,
            })),
            Format::Csv => output::csv(&["divergence"], &[vec![num(value)]]),
        });
    }
    let s = statement(args.statement.theorem.as_deref(), args.statement.n, args.statement.m)?;
    let (spec, f) = generator(&args.function, Some(working))?;
    let class = convexity(&args.statement, &spec, &f.clone().with_domain(working), s.n, seed)?;
    let report = divergence::divergence_bounds(&f, &p, &q, s.n, s.m, s.theorem, class, interval)?;
    Ok(match format {
        Format::Json => line(output::json(&report)),
        Format::Csv => output::csv(&BOUND_HEADER, &div_rows(&report)),
    })
}

#[derive(Serialize)]
struct PmfTable {
    law: ZipfMandelbrot,
    normalizer: f64,
    pmf: Vec<f64>,
}

fn zm(args: ZmArgs, format: Format) -> Result<String, CliError> {
    let laws = args
        .zm
        .iter()
        .map(|s| {
            let (n, q, s) = input::zm_triple(s)?;
            ZipfMandelbrot::new(n, q, s).map_err(|e| CliError::invalid("zm", e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    match laws.as_slice() {
        [law] => {
            if args.ratio_range || args.theorem.is_some() {
                return Err(CliError::invalid("zm", "ratio ranges and bounds need two laws"));
            }
            let pmf = law.pmf_vector();
            Ok(match format {
                Format::Json => line(output::json(&PmfTable {
                    law: *law,
                    normalizer: law.normalizer(),
                    pmf,
                })),
                Format::Csv => {
                    let rows: Vec<_> = pmf.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), num(*v)]).collect();
                    output::csv(&["i", "pmf"], &rows)
                }
            })
        }
        [p, q] => {
            if args.ratio_range {
                let r = ratio_extrema(p, q)?;
                return Ok(match format {
                    Format::Json => line(output::json(&r)),
                    Format::Csv => output::csv(&["a", "b"], &[vec![num(r.a), num(r.b)]]),
                });
            }
            if args.theorem.is_some() || args.n.is_some() {
                let s = statement(args.theorem.as_deref(), args.n, args.m)?;
                let kind: GeneratorKind = args
                    .function
                    .as_deref()
                    .ok_or_else(|| CliError::missing("function", "for bounds"))?
                    .parse()
                    .map_err(|e: elr_core::Error| CliError::invalid("function", e.to_string()))?;
                let interval = args.interval.as_deref().map(|s| input::interval("interval", s)).transpose()?;
                let report = zm_divergence_bounds(p, q, &kind, s.n, s.m, s.theorem, interval)?;
                return Ok(match format {
                    Format::Json => line(output::json(&report)),
                    Format::Csv => output::csv(&BOUND_HEADER, &div_rows(&report)),
                });
            }
            if p.n() != q.n() {
                return Err(CliError::invalid("zm", "both laws need the same N"));
            }
            let (pp, qq) = (p.pmf_vector(), q.pmf_vector());
            Ok(match format {
                Format::Json => line(output::json(&[
                    PmfTable {
                        law: *p,
                        normalizer: p.normalizer(),
                        pmf: pp,
                    },
                    PmfTable {
                        law: *q,
                        normalizer: q.normalizer(),
                        pmf: qq,
                    },
                ])),
                Format::Csv => {
                    let rows: Vec<_> = pp
                        .iter()
                        .zip(&qq)
                        .enumerate()
                        .map(|(i, (a, b))| vec![(i + 1).to_string(), num(*a), num(*b)])
                        .collect();
                    output::csv(&["i", "p", "q"], &rows)
                }
            })
        }
        _ => Err(CliError::invalid("zm", "give one or two laws")),
    }
}

fn verify(args: VerifyArgs, format: Format, seed: u64) -> Result<Run, CliError> {
    let suites = if args.suite.eq_ignore_ascii_case("all") {
        Suite::ALL.to_vec()
    } else {
        vec![args
            .suite
            .parse::<Suite>()
            .map_err(|e| CliError::invalid("suite", e.to_string()))?]
    };
    if args.samples == 0 {
        return Err(CliError::invalid("samples", "must be at least 1"));
    }
    let reports: Vec<AuditReport> = suites
        .iter()
        .map(|&suite| {
            let config = AuditConfig {
                seed,
                cases: args.cases.unwrap_or(suite.default_cases()),
                samples: args.samples,
                inject_wrong_parity: args.inject_wrong_parity,
                execution: if args.sequential {
                    Execution::Sequential
                } else {
                    Execution::default()
                },
                ..AuditConfig::for_suite(suite)
            };
            oracle::run_suite(suite, &config)
        })
        .collect();
    let violations = reports.iter().any(|r| !r.passed());
    let text = match format {
        Format::Json if reports.len() == 1 => line(output::json(&reports[0])),
        Format::Json => line(output::json(&reports)),
        Format::Csv => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.suite.to_string(),
                        r.seed.to_string(),
                        r.cases.to_string(),
                        r.skipped.to_string(),
                        r.tight.to_string(),
                        r.failures.len().to_string(),
                        num(r.max_residual),
                    ]
                })
                .collect();
            output::csv(
                &["suite", "seed", "cases", "skipped", "tight", "failures", "max_residual"],
                &rows,
            )
        }
    };
    Ok(Run { text, violations })
}

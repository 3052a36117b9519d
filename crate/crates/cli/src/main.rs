//! Command-line front end: envelope estimation, pointwise inequality checks,
//! stochasticity classification, spectral norm bounds, vector lattice
//! utilities, and the property self-test suite.
//!
//! Exit codes: 0 success / all checks passed, 1 witness or violation found,
//! 2 malformed input.

mod report;
mod spec;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use etabound::algebra::Algebra;
use etabound::eta::{
    check_inequality, check_majorization_pointwise, eta_estimate, CheckOutcome, SampleConfig,
};
use etabound::majorization::{join, w_inf, w_sup, weak_majorizes, DecVector, DEFAULT_TOL};
use etabound::norms::{holder_bound_check, op_norm_lower, op_norm_upper, NormOrder};
use etabound::operators::{classify_stochastic, LinearOperator};
use etabound::selftest::run_selftest;

use report::{Body, Report};
use spec::JobSpec;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "etabound", version, about = "Weak-majorization envelopes for linear maps on Euclidean Jordan algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// RNG seed (echoed in the report).
    #[arg(long)]
    seed: Option<u64>,
    /// Sampling budget: sets the frame count to N and random probes to 5N.
    #[arg(long)]
    samples: Option<usize>,
    /// Comparison tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Emit a JSON report on stdout.
    #[arg(long)]
    json: bool,
    /// Use the reduced sampling budget.
    #[arg(long)]
    quick: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VecOp {
    Winf,
    Wsup,
    Join,
    Wmaj,
}

#[derive(Subcommand)]
enum Command {
    /// Envelope bracket (lower/upper, exactness) for the operator in SPEC.
    Eta {
        spec: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Check lambda(|T(x)|) ≺_w q * lambda(|x|) over sampled points.
    Check {
        spec: PathBuf,
        /// Candidate vector q as a JSON array, decreasing nonnegative.
        #[arg(long)]
        q: String,
        /// Use the majorization variant lambda(T(x)) ≺ q * lambda(x) instead
        /// (q may then have negative entries).
        #[arg(long)]
        majorize: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Positivity and doubly (sub)stochastic classification.
    Classify {
        spec: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Operator norm bounds ||T||_{r -> s}.
    Norm {
        spec: PathBuf,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
        /// Also run the Hölder check ||T(x)||_p <= ||eta||_r ||x||_s.
        #[arg(long)]
        p: Option<String>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Vector lattice utilities on JSON arrays.
    Vec {
        #[arg(value_enum)]
        op: VecOp,
        /// Vectors as JSON arrays, e.g. "[1, 0.5]".
        vectors: Vec<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Run the property self-test suites.
    Selftest {
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    std::process::exit(run(Cli::parse()));
}

fn fail_input(msg: &str) -> i32 {
    eprintln!("input error: {msg}");
    2
}

fn load_job(path: &PathBuf, opts: &CommonOpts) -> Result<(Algebra, LinearOperator, SampleConfig), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let job: JobSpec = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    job.algebra.validate().map_err(|e| e.to_string())?;
    let op = spec::build_operator(&job.algebra, &job.operator)?;
    let mut cfg = job.config.build();
    if opts.quick {
        let quick = SampleConfig::quick();
        cfg.n_frames = quick.n_frames;
        cfg.signs_per_frame = quick.signs_per_frame;
        cfg.n_random_x = quick.n_random_x;
    }
    if let Some(n) = opts.samples {
        cfg.n_frames = n;
        cfg.n_random_x = 5 * n;
    }
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = opts.tol {
        cfg.tol = tol;
    }
    Ok((job.algebra, op, cfg))
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    serde_json::from_str::<Vec<f64>>(text).map_err(|e| format!("bad vector {text:?}: {e}"))
}

fn parse_order(text: &str) -> Result<NormOrder, String> {
    match text.trim() {
        "inf" | "Inf" | "INF" | "infinity" | "∞" => Ok(NormOrder::Infinity),
        other => {
            let v: f64 = other.parse().map_err(|_| format!("bad norm order {text:?}"))?;
            NormOrder::new(v).map_err(|e| e.to_string())
        }
    }
}

/// Rounds at 1e-12 absolute for the human-readable lines only; JSON reports
/// keep full precision.
fn display_vec(v: &[f64]) -> String {
    let items: Vec<String> = v
        .iter()
        .map(|x| {
            let r = (x * 1e12).round() / 1e12;
            format!("{r:?}")
        })
        .collect();
    format!("[{}]", items.join(", "))
}

fn emit(report: Report, json: bool, human: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{human}");
    }
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Eta { spec, opts } => {
            let started = Instant::now();
            let (algebra, op, cfg) = match load_job(&spec, &opts) {
                Ok(v) => v,
                Err(e) => return fail_input(&e),
            };
            let est = eta_estimate(&op, &cfg);
            let human = format!(
                "eta lower: {}\neta upper: {}\nexact: {}\nmethod: {}\nsamples: {}  seed: {}",
                display_vec(est.lower.entries()),
                display_vec(est.upper.entries()),
                est.exact,
                est.method,
                est.samples,
                est.seed
            );
            let rep = Report {
                command: "eta".into(),
                version: VERSION,
                algebra: Some(algebra),
                seed: cfg.seed,
                tol: cfg.tol,
                body: Body::Eta { eta: est },
                timing_ms: started.elapsed().as_millis(),
            };
            emit(rep, opts.json, human);
            0
        }
        Command::Check { spec, q, majorize, opts } => {
            let started = Instant::now();
            let (algebra, op, cfg) = match load_job(&spec, &opts) {
                Ok(v) => v,
                Err(e) => return fail_input(&e),
            };
            let qv = match parse_vector(&q) {
                Ok(v) => v,
                Err(e) => return fail_input(&e),
            };
            if qv.len() != algebra.rank() {
                return fail_input(&format!(
                    "q has {} entries but the algebra has rank {}",
                    qv.len(),
                    algebra.rank()
                ));
            }
            let outcome = if majorize {
                match check_majorization_pointwise(&op, &qv, &cfg) {
                    Ok(o) => o,
                    Err(e) => return fail_input(&e.to_string()),
                }
            } else {
                let qdec = match DecVector::new(qv.clone()) {
                    Ok(v) => v,
                    Err(e) => return fail_input(&e.to_string()),
                };
                check_inequality(&op, &qdec, &cfg)
            };
            let (human, code) = match &outcome {
                CheckOutcome::Pass { samples } => {
                    (format!("pass ({samples} sample points)"), 0)
                }
                CheckOutcome::Witness { x, k, lhs, rhs } => (
                    format!(
                        "witness found: partial sum {k} gives {lhs:.9} > {rhs:.9}\nwitness coords: {}",
                        display_vec(x.coords())
                    ),
                    1,
                ),
            };
            let rep = Report {
                command: "check".into(),
                version: VERSION,
                algebra: Some(algebra),
                seed: cfg.seed,
                tol: cfg.tol,
                body: Body::Check { q: qv, outcome: report::check_body(&outcome) },
                timing_ms: started.elapsed().as_millis(),
            };
            emit(rep, opts.json, human);
            code
        }
        Command::Classify { spec, opts } => {
            let started = Instant::now();
            let (algebra, op, cfg) = match load_job(&spec, &opts) {
                Ok(v) => v,
                Err(e) => return fail_input(&e),
            };
            let samples = if opts.quick { 500 } else { 2000 };
            let rep_core = match classify_stochastic(&op, cfg.tol, samples, cfg.seed) {
                Ok(r) => r,
                Err(e) => return fail_input(&e.to_string()),
            };
            let human = format!(
                "positivity: {:?}\ndoubly stochastic: {}\ndoubly substochastic: {}\nscalar multiple of DS: {:?}",
                rep_core.positivity, rep_core.is_ds, rep_core.is_dss, rep_core.scalar_ds
            );
            let rep = Report {
                command: "classify".into(),
                version: VERSION,
                algebra: Some(algebra),
                seed: cfg.seed,
                tol: cfg.tol,
                body: Body::Classify { classification: report::classify_body(&rep_core) },
                timing_ms: started.elapsed().as_millis(),
            };
            emit(rep, opts.json, human);
            0
        }
        Command::Norm { spec, r, s, p, opts } => {
            let started = Instant::now();
            let (algebra, op, cfg) = match load_job(&spec, &opts) {
                Ok(v) => v,
                Err(e) => return fail_input(&e),
            };
            let (rr, ss) = match (parse_order(&r), parse_order(&s)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return fail_input(&e),
            };
            let lower = op_norm_lower(&op, rr, ss, &cfg);
            let upper = op_norm_upper(&op, rr, ss);
            let mut code = 0;
            let holder = match p {
                Some(ptext) => {
                    let pp = match parse_order(&ptext) {
                        Ok(v) => v,
                        Err(e) => return fail_input(&e),
                    };
                    match holder_bound_check(&op, pp, rr, ss, &cfg) {
                        Ok(out) => {
                            if !out.passed() {
                                code = 1;
                            }
                            Some(report::HolderBody {
                                p: pp.to_string(),
                                status: if out.passed() { "pass" } else { "witness" }.into(),
                            })
                        }
                        Err(e) => return fail_input(&e.to_string()),
                    }
                }
                None => None,
            };
            let human = format!(
                "||T||_{{{rr} -> {ss}}}: lower {lower:.9}, upper {upper:.9}{}",
                holder
                    .as_ref()
                    .map(|h| format!("\nHölder (p = {}): {}", h.p, h.status))
                    .unwrap_or_default()
            );
            let rep = Report {
                command: "norm".into(),
                version: VERSION,
                algebra: Some(algebra),
                seed: cfg.seed,
                tol: cfg.tol,
                body: Body::Norm(report::NormBody {
                    r: rr.to_string(),
                    s: ss.to_string(),
                    lower,
                    upper,
                    holder,
                }),
                timing_ms: started.elapsed().as_millis(),
            };
            emit(rep, opts.json, human);
            code
        }
        Command::Vec { op, vectors, tol, json } => {
            let started = Instant::now();
            let parsed: Result<Vec<Vec<f64>>, String> =
                vectors.iter().map(|v| parse_vector(v)).collect();
            let parsed = match parsed {
                Ok(v) => v,
                Err(e) => return fail_input(&e),
            };
            let tol = tol.unwrap_or(DEFAULT_TOL);
            let (body, human, code) = match op {
                VecOp::Winf => match w_inf(&parsed) {
                    Ok(v) => {
                        let h = display_vec(v.entries());
                        (report::VecBody::Vector(v.entries().to_vec()), h, 0)
                    }
                    Err(e) => return fail_input(&e.to_string()),
                },
                VecOp::Wsup => match w_sup(&parsed) {
                    Ok(v) => {
                        let h = display_vec(v.entries());
                        (report::VecBody::Vector(v.entries().to_vec()), h, 0)
                    }
                    Err(e) => return fail_input(&e.to_string()),
                },
                VecOp::Join => {
                    if parsed.len() != 2 {
                        return fail_input("join takes exactly two vectors");
                    }
                    let r = DecVector::from_unsorted(&parsed[0]);
                    let s = DecVector::from_unsorted(&parsed[1]);
                    match (r, s) {
                        (Ok(r), Ok(s)) => match join(&r, &s) {
                            Ok(v) => {
                                let h = display_vec(v.entries());
                                (report::VecBody::Vector(v.entries().to_vec()), h, 0)
                            }
                            Err(e) => return fail_input(&e.to_string()),
                        },
                        (Err(e), _) | (_, Err(e)) => return fail_input(&e.to_string()),
                    }
                }
                VecOp::Wmaj => {
                    if parsed.len() != 2 {
                        return fail_input("wmaj takes exactly two vectors: p q");
                    }
                    match weak_majorizes(&parsed[0], &parsed[1], tol) {
                        Ok(ans) => (
                            report::VecBody::Bool(ans),
                            format!("{ans}"),
                            if ans { 0 } else { 1 },
                        ),
                        Err(e) => return fail_input(&e.to_string()),
                    }
                }
            };
            let rep = Report {
                command: "vec".into(),
                version: VERSION,
                algebra: None,
                seed: 0,
                tol,
                body: Body::Vec { result: body },
                timing_ms: started.elapsed().as_millis(),
            };
            emit(rep, json, human);
            code
        }
        Command::Selftest { quick, seed, json } => {
            let started = Instant::now();
            let seed = seed.unwrap_or(0);
            let results = run_selftest(!quick, seed);
            let passed = results.iter().all(|r| r.passed);
            let mut human = String::new();
            for r in &results {
                human.push_str(&format!(
                    "{} {}: {}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                ));
            }
            human.push_str(if passed { "all suites passed" } else { "FAILURES present" });
            let rep = Report {
                command: "selftest".into(),
                version: VERSION,
                algebra: None,
                seed,
                tol: DEFAULT_TOL,
                body: Body::SelfTest {
                    suites: results.iter().map(report::SuiteBody::from).collect(),
                    passed,
                },
                timing_ms: started.elapsed().as_millis(),
            };
            emit(rep, json, human);
            if passed {
                0
            } else {
                1
            }
        }
    }
}

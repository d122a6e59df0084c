//! Command-line surface. [`run_from`] does all the work and returns the exit
//! code with the text to print, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 certified or pass, 1 not certified, conditional or failed
//! check, 2 input error or enumeration cap exceeded, 3 abstention.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{factor, ArithError, FactorBudget};
use crate::certifier::{self, Certificate, CertifyError, CurveSpec, Status};
use crate::homology::{self, HomologyError};
use crate::poly::{discriminant, IntPoly};
use crate::symplectic::verify;
use crate::symplectic::{SymplecticError, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ABSTAINED: i32 = 3;

/// Name of the environment variable holding the factoring budget.
pub const BUDGET_ENV: &str = "GALOIS2_FACTOR_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Debug, Parser)]
#[command(
    name = "galois2",
    version,
    about = "Certify congruence subgroups inside 2-adic Galois images"
)]
pub struct CliConfig {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Factoring budget as `TRIAL` or `TRIAL,RHO_ITERATIONS`.
    #[arg(long, global = true, env = BUDGET_ENV, value_parser = parse_budget)]
    pub factor_budget: Option<FactorBudget>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify one curve: `--f` with `--lambda` (and optionally `--lambda2`), or `--roots`.
    Certify {
        /// Monic polynomial, e.g. "x^3-2" or "[-2,0,0,1]".
        #[arg(long)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_int)]
        lambda: Option<BigInt>,
        #[arg(long, visible_alias = "lambda-prime", allow_hyphen_values = true, value_parser = parse_int)]
        lambda2: Option<BigInt>,
        /// Comma-separated roots; the last one is distinguished.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_int)]
        roots: Option<Vec<BigInt>>,
    },
    /// Apply the single-parameter criterion to every integer in a range.
    Scan {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_int)]
        from: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_int)]
        to: BigInt,
    },
    /// Run one of the finite verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Discriminant of a polynomial.
    Disc {
        #[arg(long)]
        f: String,
    },
    /// Prime factorization of an integer.
    Factor {
        #[arg(allow_hyphen_values = true, value_parser = parse_int)]
        n: BigInt,
    },
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Transvections and their commutators span sp_2g(F2).
    #[command(visible_alias = "sp-basis")]
    Lemma33 {
        #[arg(long)]
        g: usize,
    },
    /// Transvection powers generate a subgroup containing Gamma(2^N).
    #[command(visible_alias = "containment")]
    Prop32 {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: u32,
        #[arg(long = "nprime")]
        n_prime: u32,
        #[arg(long, default_value_t = 1)]
        layers: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Genus-one equality with Gamma(2^n) for degree-four models.
    #[command(visible_alias = "degree-four")]
    Prop34 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        layers: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// c-classes from even partitions, pairings and rank.
    #[command(visible_alias = "c-classes")]
    Cclass {
        #[arg(long)]
        g: usize,
    },
    /// p-adic distances before and after a Moebius shift.
    #[command(visible_alias = "shift")]
    Moebius {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_int)]
        roots: Vec<BigInt>,
        #[arg(long, value_parser = parse_int)]
        p: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_int)]
        beta: Option<BigInt>,
    },
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("{s:?} is not a decimal integer"))
}

/// Parses `TRIAL` or `TRIAL,RHO_ITERATIONS`.
pub fn parse_budget(s: &str) -> Result<FactorBudget, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|e| format!("bad factoring budget {s:?}: {e}"))
    };
    let mut budget = FactorBudget::default();
    match s.split(',').collect::<Vec<_>>().as_slice() {
        [t] => budget.trial_bound = parse(t)?,
        [t, r] => {
            budget.trial_bound = parse(t)?;
            budget.rho_iterations = parse(r)?;
        }
        _ => return Err(format!("bad factoring budget {s:?}: expected TRIAL or TRIAL,RHO")),
    }
    Ok(budget)
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn out(code: i32, stdout: String) -> Self {
        CliOutput {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, stderr: String) -> Self {
        CliOutput {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run_from<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput::err(code, text)
            } else {
                CliOutput::out(code, text)
            };
        }
    };
    run(&config)
}

pub fn run(config: &CliConfig) -> CliOutput {
    let budget = config.factor_budget.unwrap_or_default();
    let fmt = config.format;
    match &config.command {
        Command::Certify {
            f,
            lambda,
            lambda2,
            roots,
        } => cmd_certify(f.as_deref(), lambda, lambda2, roots, budget, fmt),
        Command::Scan { f, from, to } => cmd_scan(f, from, to, budget, fmt),
        Command::Verify { suite } => cmd_verify(suite, fmt),
        Command::Disc { f } => cmd_disc(f, fmt),
        Command::Factor { n } => cmd_factor(n, budget, fmt),
    }
}

fn parse_poly(s: &str) -> Result<IntPoly, CliOutput> {
    s.parse()
        .map_err(|e| CliOutput::err(EXIT_INPUT, format!("error: cannot parse polynomial {s:?}: {e}\n")))
}

fn certify_error(e: CertifyError) -> CliOutput {
    match e {
        CertifyError::Abstained { cofactor } => {
            let v = json!({ "status": "Abstained", "cofactor": cofactor.to_string() });
            CliOutput {
                code: EXIT_ABSTAINED,
                stdout: pretty(&v),
                stderr: format!("abstained: could not factor {cofactor} within the budget\n"),
            }
        }
        other => CliOutput::err(EXIT_INPUT, format!("error: {other}\n")),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

/// Exit code for a certificate status.
pub fn status_code(status: &Status) -> i32 {
    match status {
        Status::Certified => EXIT_OK,
        Status::CertifiedConditional(_) | Status::NotCertified(_) => EXIT_NEGATIVE,
    }
}

fn render_certificate(cert: &Certificate, fmt: Format) -> String {
    match fmt {
        Format::Json => cert.to_json() + "\n",
        Format::Human => cert.to_human(),
    }
}

pub fn cmd_certify(
    f: Option<&str>,
    lambda: &Option<BigInt>,
    lambda2: &Option<BigInt>,
    roots: &Option<Vec<BigInt>>,
    budget: FactorBudget,
    fmt: Format,
) -> CliOutput {
    let spec = match (f, lambda, lambda2, roots) {
        (Some(f), Some(l), None, None) => match parse_poly(f) {
            Ok(f) => CurveSpec::IrredPlusLambda { f, lambda: l.clone() },
            Err(e) => return e,
        },
        (Some(f), Some(l), Some(l2), None) => match parse_poly(f) {
            Ok(f) => CurveSpec::IrredPlusTwoLambdas {
                f,
                lambda: l.clone(),
                lambda2: l2.clone(),
            },
            Err(e) => return e,
        },
        (None, None, None, Some(r)) => CurveSpec::SplitRoots { roots: r.clone() },
        _ => {
            return CliOutput::err(
                EXIT_INPUT,
                "error: give either --f with --lambda [--lambda2], or --roots\n".into(),
            )
        }
    };
    match certifier::certify(&spec, budget) {
        Ok(cert) => CliOutput::out(status_code(&cert.status), render_certificate(&cert, fmt)),
        Err(e) => certify_error(e),
    }
}

pub fn cmd_scan(f: &str, from: &BigInt, to: &BigInt, budget: FactorBudget, fmt: Format) -> CliOutput {
    let f = match parse_poly(f) {
        Ok(f) => f,
        Err(e) => return e,
    };
    let report = match certifier::scan(&f, from, to, budget) {
        Ok(r) => r,
        Err(e) => return certify_error(e),
    };
    let text = match fmt {
        Format::Json => pretty(&report),
        Format::Human => {
            let mut s = format!("scan of f = {} over [{}, {}]\n", report.f, report.from, report.to);
            for e in &report.entries {
                let k = e.level_exponent.map(|k| format!(" (k = {k})")).unwrap_or_default();
                let _ = writeln!(s, "lambda = {}: {}{k}", e.lambda, e.outcome);
            }
            let c = &report.counts;
            let _ = writeln!(
                s,
                "total {}: certified {}, conditional {}, sigma-obstructed {}, unit {}, degenerate {}, abstained {}",
                c.total,
                c.certified,
                c.certified_conditional,
                c.sigma_obstructed,
                c.unit_value,
                c.degenerate,
                c.abstained
            );
            s
        }
    };
    CliOutput::out(EXIT_OK, text)
}

fn symplectic_error(e: SymplecticError) -> CliOutput {
    match e {
        SymplecticError::CapExceeded { size, cap } => CliOutput::err(
            EXIT_INPUT,
            format!("error: enumeration cap exceeded: {size} elements (cap {cap})\n"),
        ),
        other => CliOutput::err(EXIT_INPUT, format!("error: {other}\n")),
    }
}

fn homology_error(e: HomologyError) -> CliOutput {
    CliOutput::err(EXIT_INPUT, format!("error: {e}\n"))
}

fn render_report<T: Serialize>(suite: &str, pass: bool, report: &T, fmt: Format) -> CliOutput {
    let code = if pass { EXIT_OK } else { EXIT_NEGATIVE };
    let value = serde_json::to_value(report).expect("reports serialize");
    let text = match fmt {
        Format::Json => pretty(&json!({ "suite": suite, "pass": pass, "report": value })),
        Format::Human => {
            let mut s = format!("{suite}: {}\n", if pass { "PASS" } else { "FAIL" });
            if let Value::Object(map) = value {
                for (k, v) in map {
                    let _ = writeln!(s, "  {k}: {v}");
                }
            }
            s
        }
    };
    CliOutput::out(code, text)
}

pub fn cmd_verify(suite: &Suite, fmt: Format) -> CliOutput {
    match suite {
        Suite::Lemma33 { g } => {
            let classes = match homology::c_classes(*g) {
                Ok(c) => c,
                Err(e) => return homology_error(e),
            };
            match verify::sp_basis_certify(*g, &classes) {
                Ok(r) => render_report("lemma33", r.pass, &r, fmt),
                Err(e) => symplectic_error(e),
            }
        }
        Suite::Prop32 {
            g,
            n,
            n_prime,
            layers,
            cap,
        } => match verify::containment_certify(*g, *n, *n_prime, *layers, *cap) {
            Ok(r) => render_report("prop32", r.pass(), &r, fmt),
            Err(e) => symplectic_error(e),
        },
        Suite::Prop34 { n, layers, cap } => match verify::degree_four_certify(*n, *layers, *cap) {
            Ok(r) => render_report("prop34", r.pass(), &r, fmt),
            Err(e) => symplectic_error(e),
        },
        Suite::Cclass { g } => match homology::cclass_report(*g) {
            Ok(r) => render_report("cclass", r.pass(), &r, fmt),
            Err(e) => homology_error(e),
        },
        Suite::Moebius { roots, p, beta } => {
            let r = match beta {
                Some(b) => homology::moebius_shift_with(roots, p, b),
                None => homology::moebius_shift(roots, p),
            };
            match r {
                Ok(r) => render_report("moebius", r.preserved, &r, fmt),
                Err(e) => homology_error(e),
            }
        }
    }
}

pub fn cmd_disc(f: &str, fmt: Format) -> CliOutput {
    let f = match parse_poly(f) {
        Ok(f) => f,
        Err(e) => return e,
    };
    match discriminant(&f) {
        Ok(d) => CliOutput::out(
            EXIT_OK,
            match fmt {
                Format::Json => pretty(&json!({ "f": f.to_string(), "discriminant": d.to_string() })),
                Format::Human => format!("disc({f}) = {d}\n"),
            },
        ),
        Err(e) => CliOutput::err(EXIT_INPUT, format!("error: {e}\n")),
    }
}

pub fn cmd_factor(n: &BigInt, budget: FactorBudget, fmt: Format) -> CliOutput {
    match factor(n, budget) {
        Ok(fac) => {
            let text = match fmt {
                Format::Json => {
                    let factors: Vec<Value> = fac
                        .factors
                        .iter()
                        .map(|(p, e)| json!({ "p": p.to_string(), "e": e }))
                        .collect();
                    pretty(&json!({ "n": n.to_string(), "unit": fac.unit, "factors": factors }))
                }
                Format::Human => {
                    let mut parts: Vec<String> = Vec::new();
                    if fac.unit < 0 {
                        parts.push("-1".into());
                    }
                    parts.extend(fac.factors.iter().map(
                        |(p, e)| {
                            if *e == 1 {
                                p.to_string()
                            } else {
                                format!("{p}^{e}")
                            }
                        },
                    ));
                    if parts.is_empty() {
                        parts.push("1".into());
                    }
                    format!("{n} = {}\n", parts.join(" * "))
                }
            };
            CliOutput::out(EXIT_OK, text)
        }
        Err(ArithError::Zero) => CliOutput::err(EXIT_INPUT, "error: cannot factor 0\n".into()),
        Err(e) => certify_error(e.into()),
    }
}

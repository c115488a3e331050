//! The `rcc` command line. Exit codes: 0 success, 1 failed check or
//! violated precondition, 2 usage, parse or file error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::calculus::{
    calculus_integral, calculus_taylor, resolvent_probe, spectral_radius_bound, CalculusResult, OperatorKernelConfig,
};
use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::io::{HyperPolyFile, OperatorFile, RunReport};
use crate::kernels::sphere_rule;
use crate::matrix::{hermitian_residual, to_nested};
use crate::polyspace::{HyperPolynomial, OperatorTuple, PointR};
use crate::quant::{quantize, ClassicalPolynomial};
use crate::verify::{run_suites, Suite, VerifyConfig};

pub const DEFAULT_SEED: u64 = 7;
pub const SEED_ENV: &str = "RC_SEED";
pub const PROBE_HEADER: &str = "radius,degree,term_norm,partial_norm,verdict";

#[derive(Debug, Parser)]
#[command(name = "rcc", version, about = "Hyperholomorphic functional calculus for tuples of self-adjoint matrices")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run invariant suites and report per-check residuals.
    Verify(VerifyArgs),
    /// Weyl-symmetrize a classical polynomial over an operator tuple.
    Quantize(QuantizeArgs),
    /// Evaluate f(T) by Taylor substitution, boundary integration or both.
    Calculus(CalculusArgs),
    /// Chart kernel-series convergence along a ray, as CSV.
    Probe(ProbeArgs),
    /// Dump a sphere quadrature rule as JSON.
    SphereRule(SphereRuleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Algebra,
    Hyperholo,
    Orthogonality,
    Calculus,
    Quantization,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Algebra => vec![Suite::Algebra],
            SuiteArg::Hyperholo => vec![Suite::Hyperholo],
            SuiteArg::Orthogonality => vec![Suite::Orthogonality],
            SuiteArg::Calculus => vec![Suite::Calculus],
            SuiteArg::Quantization => vec![Suite::Quantization],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            other => other.suites()[0].name(),
        }
    }
}

#[derive(Debug, Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall time in the report (breaks byte-identical reruns).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Random seed; falls back to RC_SEED, then 7.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct QuantizeArgs {
    /// Polynomial such as "2.5 x1^2 x3 - x2".
    poly: String,
    /// Operator tuple JSON file.
    operators: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Taylor,
    Integral,
    Both,
}

#[derive(Debug, Args)]
struct CalculusArgs {
    /// Operator tuple JSON file.
    operators: PathBuf,
    /// Polynomial text; the monomial x^alpha stands for V_alpha.
    #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
    poly: Option<String>,
    /// Hyperholomorphic coefficient file.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    route: RouteArg,
    /// Sphere radius; defaults to twice the spectral bound.
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, default_value_t = 32)]
    order: usize,
    /// Kernel truncation degree; defaults to deg f.
    #[arg(long)]
    truncation: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct ProbeArgs {
    /// Operator tuple JSON file.
    operators: PathBuf,
    /// Ray direction in R^{m+1}, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    direction: Vec<f64>,
    /// Radii along the ray, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    radii: Vec<f64>,
    /// Read radii as multiples of the spectral bound.
    #[arg(long)]
    relative: bool,
    #[arg(long, default_value_t = 8)]
    degree: u32,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SphereRuleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error plus the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Io(_) | Error::Json(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return 2;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let outcome = match cli.command {
        Command::Verify(a) => cmd_verify(a, echo, stdout, stderr),
        Command::Quantize(a) => cmd_quantize(a, echo, stdout, stderr),
        Command::Calculus(a) => cmd_calculus(a, echo, stdout, stderr),
        Command::Probe(a) => cmd_probe(a, stdout),
        Command::SphereRule(a) => cmd_sphere_rule(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| Error::Parse {
            position: 0,
            message: format!("{SEED_ENV} must be an unsigned integer, got '{text}'"),
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn finish(mut report: RunReport, output: &Output, start: Instant, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let elapsed = start.elapsed().as_secs_f64();
    if output.timing {
        report.wall_time_s = Some(elapsed);
    }
    emit(&report.to_json(), output.out.as_deref(), stdout)?;
    let _ = writeln!(stderr, "elapsed {elapsed:.2}s");
    Ok(())
}

fn load_tuple(path: &Path) -> Result<OperatorTuple> {
    OperatorFile::read(path)?.to_tuple()
}

fn cmd_verify(a: VerifyArgs, echo: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let start = Instant::now();
    let mut cfg = VerifyConfig { seed: resolve_seed(a.seed)?, max_degree: a.max_degree, ..VerifyConfig::default() };
    for spec in &a.tol {
        cfg.tolerances.set_override(spec).map_err(|e| Failure { code: 2, message: e.to_string() })?;
    }
    let result = run_suites(&a.suite.suites(), &cfg)?;
    let failed: Vec<&str> = result.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let mut report = RunReport::new(echo, json!({ "suite": a.suite.name(), "config": cfg }));
    report.diagnostics = json!({
        "checks": result.checks.len(),
        "failed": failed,
    });
    report.result = serde_json::to_value(&result).map_err(Error::from)?;
    for c in &result.checks {
        let _ = writeln!(
            stderr,
            "{} {}/{} residual {:e} tol {:e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.suite.name(),
            c.name,
            c.residual,
            c.tolerance
        );
    }
    finish(report, &a.output, start, stdout, stderr)?;
    Ok(if result.passed { 0 } else { 1 })
}

fn cmd_quantize(a: QuantizeArgs, echo: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let start = Instant::now();
    let p: ClassicalPolynomial = a.poly.parse()?;
    let tuple = load_tuple(&a.operators)?;
    let m = quantize(&p, &tuple)?;
    let residual = hermitian_residual(&m);
    let mut report = RunReport::new(echo, json!({ "poly": p.to_string(), "m": tuple.m(), "d": tuple.d() }));
    report.result = json!({ "matrix": to_nested(&m) });
    report.diagnostics = json!({ "hermitian_residual": residual });
    let _ = writeln!(stderr, "hermitian residual {residual:e}");
    finish(report, &a.output, start, stdout, stderr)?;
    Ok(0)
}

/// `x^alpha` in polynomial text stands for `V_alpha e0`.
fn hyper_from_text(text: &str, m: usize) -> Result<HyperPolynomial> {
    let p: ClassicalPolynomial = text.parse()?;
    let n = m.max(p.m());
    let p = p.with_variables(n)?;
    let mut f = HyperPolynomial::zero(n);
    for (alpha, c) in p.terms() {
        f.add_term(alpha.clone(), Multivector::scalar(n, c))?;
    }
    Ok(f)
}

fn cmd_calculus(a: CalculusArgs, echo: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let start = Instant::now();
    let tuple = load_tuple(&a.operators)?;
    let f = match (&a.poly, &a.coeffs) {
        (Some(text), _) => hyper_from_text(text, tuple.m())?,
        (None, Some(path)) => HyperPolyFile::read(path)?.to_poly()?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let bound = spectral_radius_bound(&tuple);
    let truncation = a.truncation.unwrap_or(f.degree());
    let mut cfg = OperatorKernelConfig { quad_order: a.order, ..OperatorKernelConfig::for_tuple(&tuple, truncation) };
    if let Some(r) = a.radius {
        cfg.radius = r;
    }
    let config = json!({
        "route": format!("{:?}", a.route).to_lowercase(),
        "n": f.n(),
        "m": tuple.m(),
        "d": tuple.d(),
        "spectral_bound": bound,
        "kernel": cfg,
    });
    let mut report = RunReport::new(echo, config);
    let value = |r: &CalculusResult| serde_json::to_value(r).map_err(Error::from);
    match a.route {
        RouteArg::Taylor => {
            let r = calculus_taylor(&f, &tuple)?;
            report.result = json!({ "taylor": value(&r)? });
        }
        RouteArg::Integral => {
            let r = calculus_integral(&f, &tuple, &cfg)?;
            report.result = json!({ "integral": value(&r)? });
        }
        RouteArg::Both => {
            let t = calculus_taylor(&f, &tuple)?;
            let i = calculus_integral(&f, &tuple, &cfg)?;
            let disagreement = i.distance(&t.value);
            let _ = writeln!(stderr, "route disagreement {disagreement:e}");
            report.result = json!({ "taylor": value(&t)?, "integral": value(&i)? });
            report.diagnostics = json!({
                "disagreement": disagreement,
                "relative_disagreement": i.relative_distance(&t.value),
            });
        }
    }
    finish(report, &a.output, start, stdout, stderr)?;
    Ok(0)
}

fn cmd_probe(a: ProbeArgs, stdout: &mut dyn Write) -> CmdResult {
    let tuple = load_tuple(&a.operators)?;
    let bound = spectral_radius_bound(&tuple);
    let dir = PointR::new(a.direction.clone())?;
    if dir.norm() == 0.0 {
        return Err(Error::Domain("direction must be non-zero".into()).into());
    }
    let unit = dir.scaled(1.0 / dir.norm());
    let mut csv = String::from(PROBE_HEADER);
    csv.push('\n');
    for &r in &a.radii {
        let radius = if a.relative { r * bound } else { r };
        let report = resolvent_probe(&unit.scaled(radius), &tuple, a.degree)?;
        for row in &report.rows {
            csv.push_str(&format!(
                "{},{},{:e},{:e},{}\n",
                radius,
                row.degree,
                row.term_norm,
                row.partial_norm,
                report.verdict.as_str()
            ));
        }
    }
    emit(&csv, a.out.as_deref(), stdout)?;
    Ok(0)
}

fn cmd_sphere_rule(a: SphereRuleArgs, stdout: &mut dyn Write) -> CmdResult {
    let rule = sphere_rule(a.n, a.radius, a.order)?;
    let text = serde_json::to_string(&rule).map_err(Error::from)? + "\n";
    emit(&text, a.out.as_deref(), stdout)?;
    Ok(0)
}

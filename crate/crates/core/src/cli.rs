//! The `cfcycles` command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cf::{coefficient_source, convergent_values, expand_real, parse_cf, Constant, ContinuedFraction};
use crate::chain::{build_chain, verify_chain, verify_lemmas, Arrangement, ChainLink, VerificationReport};
use crate::clifford::{
    ahlfors_validate, b_vectors_to_multivectors, build_nd_chain, convergence_check, parse_b_vectors,
    ConnectingGenerator, ConvergenceMode, Multivector, NdLink, MAX_DIM,
};
use crate::error::Error;
use crate::render::{render_chain_svg, render_section_plane, RenderConfig};
use crate::scalar::{parse_rational, QSqrt2, Rational, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cfcycles", version, about = "Continued fractions as chains of horocycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the convergents P_n/Q_n.
    Convergents(SourceArgs),
    /// Build a planar horocycle chain and write it as SVG.
    Chain(ChainArgs),
    /// Check every link of a planar chain; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Continued fraction of vectors: chain, convergence report and an
    /// optional section-plane SVG.
    Clifford(CliffordArgs),
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// `e`, `pi`, `file PATH` or `real P/Q`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "VALUE"], required = true)]
    source: Vec<String>,
    /// Number of terms after the integer part (default: 10 for e, 12 for
    /// pi, all for files and rationals).
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Numeric {
    /// Rationals, or Q(sqrt 2) when the arrangement needs it.
    Exact,
    Float,
}

#[derive(Args, Debug)]
struct ChainCommon {
    #[command(flatten)]
    source: SourceArgs,
    /// tangent, orthogonal or mixed (also 1, 2, 3).
    #[arg(long, default_value = "tangent")]
    arrangement: Arrangement,
    #[arg(long, value_enum, default_value_t = Numeric::Exact)]
    numeric: Numeric,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// SVG output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render settings as `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[command(flatten)]
    common: ChainCommon,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: ChainCommon,
    /// Relative tolerance for floating point checks; exact checks ignore it.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Radius,
    Height,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Generator {
    /// Hyperplane through both touch points (`x = c̄d`).
    Adapted,
    /// `x = e1`, `r = 1` for every link.
    Fixed,
}

#[derive(Args, Debug)]
struct CliffordArgs {
    /// `file PATH` reads one coefficient vector per line; `e`, `pi` and
    /// `real P/Q` put the partial denominators on e1 (integer part dropped).
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "VALUE"], required = true)]
    source: Vec<String>,
    /// Number of vector coefficients to use (default: all, 10 for e).
    #[arg(long)]
    terms: Option<usize>,
    /// n, the dimension of the coefficient vectors; the algebra is Cl(n+1).
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value = "tangent")]
    arrangement: Arrangement,
    #[arg(long, value_enum, default_value_t = Generator::Adapted)]
    generator: Generator,
    /// Size measure of the connecting spheres. Heights are zero for the
    /// adapted generator, whose spheres are centred on the boundary.
    #[arg(long, value_enum, default_value_t = Mode::Radius)]
    mode: Mode,
    /// Check the decrease over the last N spheres only (0: all).
    #[arg(long, default_value_t = 0)]
    window: usize,
    /// Slack of the enclosure test.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Numeric::Exact)]
    numeric: Numeric,
    #[command(flatten)]
    render: RenderArgs,
}

/// An input problem, reported with exit code 2.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, InputError>;

fn input<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(InputError(msg.into()))
}

enum Source {
    Constant(Constant),
    File(PathBuf),
    Real(Rational),
}

fn parse_source(words: &[String]) -> CliResult<Source> {
    match words {
        [k] if k == "e" => Ok(Source::Constant(Constant::E)),
        [k] if k == "pi" => Ok(Source::Constant(Constant::Pi)),
        [k, path] if k == "file" => Ok(Source::File(PathBuf::from(path))),
        [k, v] if k == "real" => real(v),
        [word] if word.starts_with("real:") => real(&word["real:".len()..]),
        _ => input(format!("unknown source `{}`; expected e, pi, file PATH or real P/Q", words.join(" "))),
    }
}

fn real(v: &str) -> CliResult<Source> {
    match parse_rational(v) {
            Some(q) => Ok(Source::Real(q)),
        None => input(format!("not a rational number: {v}")),
    }
}

/// `--source real -1/3` would read `-1/3` as a flag; fold it into the
/// single word `real:-1/3` first.
fn fold_negative_reals(args: Vec<OsString>) -> Vec<OsString> {
    let mut out: Vec<OsString> = Vec::with_capacity(args.len());
    let mut i = 0;
    while i < args.len() {
        let is = |j: usize, s: &str| args.get(j).is_some_and(|a| a == s);
        let negative = args.get(i + 2).and_then(|a| a.to_str()).is_some_and(|a| a.starts_with('-') && a.len() > 1);
        if is(i, "--source") && is(i + 1, "real") && negative {
            out.push(args[i].clone());
            let mut word = OsString::from("real:");
            word.push(&args[i + 2]);
            out.push(word);
            i += 3;
        } else {
            out.push(args[i].clone());
            i += 1;
        }
    }
    out
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).or_else(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn truncate(cf: ContinuedFraction, terms: Option<usize>) -> CliResult<ContinuedFraction> {
    match terms {
        None => Ok(cf),
        Some(n) if n <= cf.len() => Ok(cf.truncated(n)),
        Some(n) => input(format!("{n} terms requested but the source has {}", cf.len())),
    }
}

fn load_cf(args: &SourceArgs) -> CliResult<ContinuedFraction> {
    match parse_source(&args.source)? {
        Source::Constant(Constant::E) => Ok(coefficient_source(Constant::E, args.terms.unwrap_or(10))?),
        Source::Constant(Constant::Pi) => {
            Ok(coefficient_source(Constant::Pi, args.terms.unwrap_or(crate::cf::PI_TERMS.len()))?)
        }
        Source::File(path) => truncate(parse_cf(&read(&path)?)?, args.terms),
        Source::Real(q) => truncate(expand_real(&q), args.terms),
    }
}

fn render_config(args: &RenderArgs) -> CliResult<RenderConfig> {
    let mut cfg = match &args.config {
        Some(path) => RenderConfig::parse(&read(path)?)?,
        None => RenderConfig::default(),
    };
    for (value, slot) in [(args.width, &mut cfg.width), (args.height, &mut cfg.height)] {
        match value {
            Some(v) if v > 0.0 && v.is_finite() => *slot = v,
            Some(v) => return input(format!("canvas size must be positive, got {v}")),
            None => {}
        }
    }
    Ok(cfg)
}

fn write_svg(path: &Option<PathBuf>, svg: &str, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, svg).or_else(|e| input(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(svg.as_bytes()).or_else(|e| input(format!("cannot write output: {e}"))),
    }
}

fn cmd_convergents(args: &SourceArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cf = load_cf(args)?;
    let values = convergent_values(&cf, cf.len())?;
    let mut text = String::from("n\tconvergent\tdecimal\n");
    for (i, v) in values.iter().enumerate() {
        let line = match v {
            Ok(q) => format!("{}\t{q}\t{}\n", i + 1, Scalar::to_f64(q)),
            Err(_) => format!("{}\tinf\tinf\n", i + 1),
        };
        text.push_str(&line);
    }
    out.write_all(text.as_bytes()).or_else(|e| input(e.to_string()))?;
    Ok(EXIT_OK)
}

fn chain_svg<S: Scalar>(cf: &ContinuedFraction, arr: Arrangement, cfg: &RenderConfig) -> CliResult<(usize, String)> {
    let chain: Vec<ChainLink<S>> = build_chain(cf, arr, cf.len())?;
    Ok((chain.len(), render_chain_svg(&chain, cfg)))
}

fn cmd_chain(args: &ChainArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cf = load_cf(&args.common.source)?;
    let cfg = render_config(&args.render)?;
    let arr = args.common.arrangement;
    let (links, svg) = match (args.common.numeric, arr) {
        (Numeric::Float, _) => chain_svg::<f64>(&cf, arr, &cfg)?,
        (Numeric::Exact, Arrangement::Tangent) => chain_svg::<Rational>(&cf, arr, &cfg)?,
        (Numeric::Exact, _) => chain_svg::<QSqrt2>(&cf, arr, &cfg)?,
    };
    write_svg(&args.render.out, &svg, out)?;
    if let Some(path) = &args.render.out {
        let _ = writeln!(out, "wrote {} ({links} links, {arr})", path.display());
    }
    Ok(EXIT_OK)
}

fn verify_in<S: Scalar>(cf: &ContinuedFraction, arr: Arrangement, tol: f64) -> CliResult<VerificationReport> {
    let chain: Vec<ChainLink<S>> = build_chain(cf, arr, cf.len())?;
    let mut report = verify_chain(&chain, arr, tol);
    report.checks.extend(verify_lemmas(&chain, arr, tol).checks);
    report.checks.sort_by_key(|c| c.link);
    Ok(report)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cf = load_cf(&args.common.source)?;
    let arr = args.common.arrangement;
    let report = match (args.common.numeric, arr) {
        (Numeric::Float, _) => verify_in::<f64>(&cf, arr, args.tol)?,
        (Numeric::Exact, Arrangement::Tangent) => verify_in::<Rational>(&cf, arr, args.tol)?,
        (Numeric::Exact, _) => verify_in::<QSqrt2>(&cf, arr, args.tol)?,
    };
    let failed = report.failures().count();
    let mut text = report.to_string();
    text.push_str(&format!("{} checks, {failed} failed\n", report.checks.len()));
    out.write_all(text.as_bytes()).or_else(|e| input(e.to_string()))?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILED })
}

/// Coefficient rows in `R^n` for the clifford subcommand.
fn load_b_vectors(args: &CliffordArgs) -> CliResult<(usize, Vec<Vec<Rational>>)> {
    let (n, mut rows) = match parse_source(&args.source)? {
        Source::File(path) => {
            let (n, rows) = parse_b_vectors(&read(&path)?)?;
            if let Some(dim) = args.dim.filter(|&d| d != n) {
                return input(format!("--dim {dim} does not match the {n} coordinates in {}", path.display()));
            }
            (n, rows)
        }
        source => {
            let cf = match source {
                Source::Constant(c) => {
                    let count = args.terms.unwrap_or(if c == Constant::E { 10 } else { crate::cf::PI_TERMS.len() });
                    coefficient_source(c, count)?
                }
                Source::Real(q) => expand_real(&q),
                Source::File(_) => unreachable!(),
            };
            if !cf.is_simple() {
                return input("vector continued fractions need unit partial numerators");
            }
            let n = args.dim.unwrap_or(1);
            let rows = cf
                .terms
                .iter()
                .map(|t| {
                    let mut row = vec![Rational::from_i64(0); n];
                    row[0] = t.b().clone();
                    row
                })
                .collect();
            (n, rows)
        }
    };
    if n == 0 {
        return input("--dim must be at least 1");
    }
    if n + 1 > MAX_DIM {
        return Err(Error::DimensionTooLarge(n + 1).into());
    }
    if let Some(t) = args.terms {
        if t > rows.len() {
            return input(format!("{t} terms requested but the source has {}", rows.len()));
        }
        rows.truncate(t);
    }
    Ok((n, rows))
}

fn clifford_in<S: Scalar>(args: &CliffordArgs, n: usize, rows: &[Vec<Rational>]) -> Result<(String, Vec<NdLink<S>>, bool), Error> {
    let dim = n + 1;
    let bs: Vec<Multivector<S>> = b_vectors_to_multivectors(n, rows)?;
    let generator = match args.generator {
        Generator::Adapted => None,
        Generator::Fixed => Some(ConnectingGenerator::Fixed { x: Multivector::basis(dim, 1)?, r: S::one() }),
    };
    let chain = build_nd_chain(dim, &bs, args.arrangement, generator)?;
    let mut text = format!("R^{n} in Cl({dim}), {} factors, {} arrangement\n", bs.len(), args.arrangement);
    let mut valid = true;
    for link in &chain {
        let ok = ahlfors_validate(&link.matrix, args.tol).is_valid();
        valid &= ok;
        text.push_str(&format!(
            "link {} delta {} touch {} ahlfors {}\n",
            link.index,
            link.delta,
            link.touch_curr,
            if ok { "ok" } else { "fail" }
        ));
    }
    let spheres: Vec<_> = chain[1..].iter().map(|l| l.connecting.clone()).collect();
    let mode = match args.mode {
        Mode::Radius => ConvergenceMode::RadiusToZero,
        Mode::Height => ConvergenceMode::HeightToZero,
    };
    if spheres.is_empty() {
        text.push_str("no connecting spheres to compare\n");
    } else {
        match convergence_check(&spheres, mode, args.window, args.tol) {
            Ok(report) => {
                let yes = |b: bool| if b { "yes" } else { "no" };
                let sizes: Vec<String> = report.sizes.iter().map(|s| format!("{s:e}")).collect();
                let enclosed: Vec<&str> = report.enclosed.iter().map(|&b| yes(b)).collect();
                text.push_str(&format!("{} {}\n", args.mode.label(), sizes.join(" ")));
                text.push_str(&format!("enclosed {}\n", enclosed.join(" ")));
                let window = if args.window == 0 { "all".to_string() } else { args.window.to_string() };
                text.push_str(&format!("decreasing (window {window}) {}\n", yes(report.decreasing)));
                text.push_str(&format!("converges {}\n", yes(report.converges())));
            }
            Err(e) => text.push_str(&format!("convergence check skipped: {e}\n")),
        }
    }
    Ok((text, chain, valid))
}

impl Mode {
    fn label(self) -> &'static str {
        match self {
            Mode::Radius => "radii",
            Mode::Height => "heights",
        }
    }
}

fn clifford_report<S: Scalar>(args: &CliffordArgs, n: usize, rows: &[Vec<Rational>], cfg: &Option<RenderConfig>) -> Result<(String, Option<String>, bool), Error> {
    let (text, chain, valid) = clifford_in::<S>(args, n, rows)?;
    let svg = match cfg {
        Some(cfg) => Some(render_section_plane(&chain, cfg)?),
        None => None,
    };
    Ok((text, svg, valid))
}

fn cmd_clifford(args: &CliffordArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let (n, rows) = load_b_vectors(args)?;
    let wants_svg = args.render.out.is_some() || args.render.config.is_some();
    let cfg = if wants_svg { Some(render_config(&args.render)?) } else { None };
    let exact = match (args.numeric, args.arrangement) {
        (Numeric::Float, _) => None,
        (Numeric::Exact, Arrangement::Tangent) => Some(clifford_report::<Rational>(args, n, &rows, &cfg)),
        (Numeric::Exact, _) => Some(clifford_report::<QSqrt2>(args, n, &rows, &cfg)),
    };
    let (text, svg, valid) = match exact {
        Some(Ok(r)) => r,
        Some(Err(Error::NotRepresentable(what))) => {
            let _ = writeln!(err, "note: {what} is irrational here; continuing in floating point");
            clifford_report::<f64>(args, n, &rows, &cfg)?
        }
        Some(Err(e)) => return Err(e.into()),
        None => clifford_report::<f64>(args, n, &rows, &cfg)?,
    };
    out.write_all(text.as_bytes()).or_else(|e| input(e.to_string()))?;
    if let Some(svg) = svg {
        write_svg(&args.render.out, &svg, out)?;
        if let Some(path) = &args.render.out {
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    Ok(if valid { EXIT_OK } else { EXIT_FAILED })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = fold_negative_reals(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Convergents(a) => cmd_convergents(a, out),
        Command::Chain(a) => cmd_chain(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Clifford(a) => cmd_clifford(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

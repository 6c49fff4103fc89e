//! Command line driver.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use ratline_core::calculus::{differentiate_osc, fourier_transform};
use ratline_core::cauchy::{cauchy_apply, cauchy_offaxis};
use ratline_core::osc::OscPart;
use ratline_core::trig::{kernel_norm, lebesgue_constant};
use ratline_core::{Complex64, KernelOrder, MobiusMap, OscillatoryFunction, Side};

use crate::error::HarnessError;
use crate::io::{self, Envelope, Meta};
use crate::oracle::{oracle_cauchy, oracle_fourier, CauchyPoint, OracleOptions, OracleResult};
use crate::report::{convergence_sweep, error_report, Grid};
use crate::testfn::{self, TestFunction};

#[derive(Debug, Parser)]
#[command(name = "ratline", version, about = "Rational spectral approximation on the real line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interpolate a reference function and write its expansion as JSON.
    Approx(ApproxArgs),
    /// Fourier transform `⨍ e^{-ikx} f(x) dx` over a grid of k.
    Fourier(FourierArgs),
    /// Cauchy transform on the axis (one side) or at x + iy.
    Cauchy(CauchyArgs),
    /// Derivative of the approximant over a grid of x.
    Diff(DiffArgs),
    /// Error norms of the interpolant over a sequence of n.
    Convergence(ConvergenceArgs),
    /// L^p norms of the Dirichlet kernel and its derivative.
    KernelNorms(KernelNormArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Plus => Side::Plus,
            SideArg::Minus => Side::Minus,
        }
    }
}

/// Where the function comes from: a named reference or a saved expansion.
#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Reference function: gaussian, lorentzian, rational, appendixA, r1.
    #[arg(long, conflicts_with = "input")]
    pub function: Option<String>,
    /// Expansion written by `approx`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Interpolation size (ignored with --input).
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    /// Möbius parameter (ignored with --input).
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the --out extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        self.format.unwrap_or_else(|| match self.out.as_deref().and_then(Path::extension) {
            Some(ext) if ext == "json" => Format::Json,
            _ => Format::Csv,
        })
    }
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Compare against brute-force quadrature; fails if it does not converge.
    #[arg(long)]
    pub oracle: bool,
    /// Oracle agreement tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest oracle truncation radius.
    #[arg(long, default_value_t = 400.0)]
    pub truncation: f64,
}

impl OracleArgs {
    fn options(&self) -> OracleOptions {
        OracleOptions {
            truncation: self.truncation,
            tol: self.tol,
        }
    }
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long)]
    pub function: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Print the sup error over |x| ≤ 60 to stderr.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FourierArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Wavenumbers, e.g. `-10:10:0.05`.
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CauchyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Real parts of the evaluation points.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Boundary side; required unless --y is given.
    #[arg(long, value_enum, required_unless_present = "y")]
    pub side: Option<SideArg>,
    /// Imaginary parts for off-axis evaluation at x + iy (nonzero).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "side")]
    pub y: Option<String>,
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[arg(long)]
    pub function: String,
    /// Interpolation sizes, e.g. `10:130:8` or `8:1024:dyadic`.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 60.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 4001)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct KernelNormArgs {
    /// Exponents p ≥ 1.
    #[arg(long)]
    pub p: String,
    /// Derivative orders (0 or 1).
    #[arg(long, default_value = "0")]
    pub orders: String,
    #[arg(long)]
    pub n: String,
    /// Add a column with the Lebesgue constant of each n.
    #[arg(long)]
    pub lebesgue: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

type Handle<'a> = Box<dyn Fn(f64) -> Complex64 + Sync + 'a>;

/// The function a command acts on.
enum Source {
    Reference { f: TestFunction, g: OscillatoryFunction, n: usize },
    Loaded { g: OscillatoryFunction, meta: Meta },
}

impl Source {
    fn load(args: &SourceArgs) -> Result<Source, HarnessError> {
        match (&args.function, &args.input) {
            (Some(name), None) => {
                let f = testfn::by_name(name)?;
                let map = MobiusMap::new(args.beta)?;
                let g = f.interpolate(args.n, map)?;
                Ok(Source::Reference { f, g, n: args.n })
            }
            (None, Some(path)) => {
                let env: Envelope<Vec<OscPart>> = io::read_json(path)?;
                let g = io::from_parts(env.meta.beta, env.data)?;
                Ok(Source::Loaded { g, meta: env.meta })
            }
            _ => Err(HarnessError::Invalid("exactly one of --function or --input is required".into())),
        }
    }

    fn approximant(&self) -> &OscillatoryFunction {
        match self {
            Source::Reference { g, .. } | Source::Loaded { g, .. } => g,
        }
    }

    fn reference(&self) -> Option<&TestFunction> {
        match self {
            Source::Reference { f, .. } => Some(f),
            Source::Loaded { .. } => None,
        }
    }

    fn meta(&self) -> Meta {
        match self {
            Source::Reference { f, g, n } => Meta {
                beta: g.map().beta(),
                n: Some(*n),
                function: f.name.to_string(),
            },
            Source::Loaded { meta, .. } => meta.clone(),
        }
    }

    /// Unmodulated pieces and their wavenumbers, for the oracles: the exact
    /// reference when known, the stored expansion otherwise.
    fn oracle_parts(&self) -> Vec<(f64, Handle<'_>)> {
        match self {
            Source::Reference { f, .. } => f
                .parts
                .iter()
                .map(|p| {
                    let h = p.handle;
                    (p.wavenumber, Box::new(h) as Handle<'_>)
                })
                .collect(),
            Source::Loaded { g, .. } => g
                .parts()
                .iter()
                .map(|p| {
                    let e = &p.expansion;
                    (p.wavenumber, Box::new(move |x| e.evaluate_real(x)) as Handle<'_>)
                })
                .collect(),
        }
    }
}

/// Sum of per-part oracle results.
fn combine(results: impl IntoIterator<Item = OracleResult>) -> OracleResult {
    results.into_iter().fold(
        OracleResult {
            value: Complex64::new(0.0, 0.0),
            abs_error: 0.0,
            converged: true,
        },
        |acc, r| OracleResult {
            value: acc.value + r.value,
            abs_error: acc.abs_error + r.abs_error,
            converged: acc.converged && r.converged,
        },
    )
}

/// A table with named columns, written as CSV or as a JSON array of rows.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn write(&self, output: &OutputArgs, meta: Meta) -> Result<(), HarnessError> {
        let sink = io::sink(output.out.as_deref())?;
        match output.format() {
            Format::Csv => io::write_csv(sink, &self.header, &self.rows),
            Format::Json => {
                let data: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let m: Map<String, Value> = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, v)| (h.to_string(), serde_json::json!(v)))
                            .collect();
                        Value::Object(m)
                    })
                    .collect();
                io::write_json(sink, &Envelope { meta, data })
            }
        }
    }
}

fn check_oracles(what: &str, points: &[f64], results: &[OracleResult]) -> Result<(), HarnessError> {
    match points.iter().zip(results).find(|(_, r)| !r.converged) {
        Some((p, r)) => Err(HarnessError::OracleNonConvergence {
            what: format!("{what} = {p}"),
            abs_error: r.abs_error,
        }),
        None => Ok(()),
    }
}

fn run_approx(a: &ApproxArgs) -> Result<(), HarnessError> {
    let f = testfn::by_name(&a.function)?;
    let g = f.interpolate(a.n, MobiusMap::new(a.beta)?)?;
    if a.check {
        let e = error_report(&g, &f, Grid::default())?;
        eprintln!("sup error over |x| <= 60: {:e}", e.sup);
    }
    let env = Envelope {
        meta: Meta {
            beta: a.beta,
            n: Some(a.n),
            function: f.name.to_string(),
        },
        data: io::to_parts(&g),
    };
    io::write_json(io::sink(a.out.as_deref())?, &env)
}

fn run_fourier(a: &FourierArgs) -> Result<(), HarnessError> {
    let src = Source::load(&a.source)?;
    let ks = io::parse_range(&a.k)?;
    let g = src.approximant();
    let mut header = vec!["k", "re", "im"];
    let values: Vec<Complex64> = ks.par_iter().map(|&k| fourier_transform(g, k)).collect();
    let exact: Option<Vec<Complex64>> = src
        .reference()
        .and_then(|f| ks.iter().map(|&k| f.exact_fourier(k)).collect());
    if exact.is_some() {
        header.extend(["exact_re", "exact_im"]);
    }
    let oracles: Option<Vec<OracleResult>> = a.oracle.oracle.then(|| {
        let parts = src.oracle_parts();
        let opts = a.oracle.options();
        ks.par_iter()
            .map(|&k| combine(parts.iter().map(|(km, h)| oracle_fourier(h, k + km, opts))))
            .collect()
    });
    if oracles.is_some() {
        header.extend(["oracle_re", "oracle_im", "oracle_err"]);
    }
    let rows = ks
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let mut row = vec![k, values[i].re, values[i].im];
            if let Some(e) = &exact {
                row.extend([e[i].re, e[i].im]);
            }
            if let Some(o) = &oracles {
                row.extend([o[i].value.re, o[i].value.im, o[i].abs_error]);
            }
            row
        })
        .collect();
    Table { header, rows }.write(&a.output, src.meta())?;
    match &oracles {
        Some(o) => check_oracles("k", &ks, o),
        None => Ok(()),
    }
}

fn run_cauchy(a: &CauchyArgs) -> Result<(), HarnessError> {
    let src = Source::load(&a.source)?;
    let xs = io::parse_range(&a.x)?;
    let g = src.approximant();
    let opts = a.oracle.options();
    let parts = if a.oracle.oracle { src.oracle_parts() } else { Vec::new() };
    let oracle_at = |p: CauchyPoint| combine(parts.iter().map(|(km, h)| oracle_cauchy(h, *km, p, opts)));

    let (header, rows, oracles, labels) = match (&a.side, &a.y) {
        (Some(side), None) => {
            let side: Side = (*side).into();
            let c = cauchy_apply(g, side);
            let mut header = vec!["x", "re", "im"];
            if a.oracle.oracle {
                header.extend(["oracle_re", "oracle_im", "oracle_err"]);
            }
            let results: Vec<(Vec<f64>, Option<OracleResult>)> = xs
                .par_iter()
                .map(|&x| {
                    let v = c.evaluate_real(x);
                    let mut row = vec![x, v.re, v.im];
                    let o = a.oracle.oracle.then(|| oracle_at(CauchyPoint::Boundary(x, side)));
                    if let Some(o) = o {
                        row.extend([o.value.re, o.value.im, o.abs_error]);
                    }
                    (row, o)
                })
                .collect();
            let (rows, oracles): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            (header, rows, oracles, xs.clone())
        }
        (None, Some(y)) => {
            let ys = io::parse_range(y)?;
            if ys.contains(&0.0) {
                return Err(HarnessError::Invalid("--y values must be nonzero; use --side for boundary values".into()));
            }
            let pts: Vec<Complex64> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y))).collect();
            let mut header = vec!["x", "y", "re", "im", "degraded"];
            if a.oracle.oracle {
                header.extend(["oracle_re", "oracle_im", "oracle_err"]);
            }
            let results = pts
                .par_iter()
                .map(|&z| {
                    let v = cauchy_offaxis(g, z)?;
                    let mut row = vec![z.re, z.im, v.value.re, v.value.im, f64::from(u8::from(v.degraded))];
                    let o = a.oracle.oracle.then(|| oracle_at(CauchyPoint::OffAxis(z)));
                    if let Some(o) = o {
                        row.extend([o.value.re, o.value.im, o.abs_error]);
                    }
                    Ok((row, o))
                })
                .collect::<Result<Vec<_>, HarnessError>>()?;
            let (rows, oracles): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            let labels = pts.iter().map(|z| z.re).collect();
            (header, rows, oracles, labels)
        }
        _ => return Err(HarnessError::Invalid("give exactly one of --side or --y".into())),
    };
    Table { header, rows }.write(&a.output, src.meta())?;
    if a.oracle.oracle {
        let o: Vec<OracleResult> = oracles.into_iter().flatten().collect();
        check_oracles("x", &labels, &o)?;
    }
    Ok(())
}

fn run_diff(a: &DiffArgs) -> Result<(), HarnessError> {
    let src = Source::load(&a.source)?;
    let xs = io::parse_range(&a.x)?;
    let d = differentiate_osc(src.approximant());
    let mut header = vec!["x", "re", "im"];
    if src.reference().is_some() {
        header.extend(["exact_re", "exact_im"]);
    }
    let rows = xs
        .iter()
        .map(|&x| {
            let v = d.evaluate_real(x);
            let mut row = vec![x, v.re, v.im];
            if let Some(f) = src.reference() {
                let e = f.derivative(x);
                row.extend([e.re, e.im]);
            }
            row
        })
        .collect();
    Table { header, rows }.write(&a.output, src.meta())
}

fn run_convergence(a: &ConvergenceArgs) -> Result<(), HarnessError> {
    let f = testfn::by_name(&a.function)?;
    let ns = io::parse_int_range(&a.n)?;
    let grid = Grid {
        x_max: a.xmax,
        points: a.points,
    };
    let report = convergence_sweep(&f, &ns, a.beta, grid)?;
    let meta = Meta {
        beta: a.beta,
        n: None,
        function: f.name.to_string(),
    };
    match a.output.format() {
        Format::Json => io::write_json(io::sink(a.output.out.as_deref())?, &Envelope { meta, data: report }),
        Format::Csv => {
            let rows = report
                .n_values
                .iter()
                .zip(&report.errors)
                .enumerate()
                .map(|(i, (&n, e))| {
                    let order = if i == 0 { f64::NAN } else { report.fitted_orders[i - 1] };
                    vec![n as f64, e.sup, e.l2, e.h1, e.l1_derivative, order]
                })
                .collect();
            let header = vec!["n", "sup", "l2", "h1", "l1_derivative", "order"];
            Table { header, rows }.write(&a.output, meta)
        }
    }
}

fn run_kernel_norms(a: &KernelNormArgs) -> Result<(), HarnessError> {
    let ps = io::parse_range(&a.p)?;
    if let Some(p) = ps.iter().find(|&&p| p < 1.0) {
        return Err(HarnessError::Invalid(format!("kernel norms need p >= 1, got {p}")));
    }
    let orders = io::parse_int_range(&a.orders)?
        .into_iter()
        .map(|o| KernelOrder::try_from(o as u32))
        .collect::<Result<Vec<_>, _>>()?;
    let ns = io::parse_int_range(&a.n)?;
    if ns.contains(&0) {
        return Err(HarnessError::Invalid("kernel sizes must be positive".into()));
    }
    let mut jobs = Vec::new();
    for &n in &ns {
        for &p in &ps {
            for (oi, &order) in orders.iter().enumerate() {
                jobs.push((n, p, oi, order));
            }
        }
    }
    let lebesgue: Vec<f64> = if a.lebesgue { ns.par_iter().map(|&n| lebesgue_constant(n)).collect() } else { Vec::new() };
    let rows: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(n, p, _, order)| {
            let o = if order == KernelOrder::Value { 0.0 } else { 1.0 };
            let mut row = vec![n as f64, p, o, kernel_norm(n, p, order)];
            if a.lebesgue {
                let i = ns.iter().position(|&m| m == n).unwrap_or(0);
                row.push(lebesgue[i]);
            }
            row
        })
        .collect();
    let mut header = vec!["n", "p", "order", "norm"];
    if a.lebesgue {
        header.push("lebesgue");
    }
    let meta = Meta {
        beta: 1.0,
        n: None,
        function: "dirichlet".into(),
    };
    Table { header, rows }.write(&a.output, meta)
}

pub fn execute(cli: &Cli) -> Result<(), HarnessError> {
    match &cli.command {
        Command::Approx(a) => run_approx(a),
        Command::Fourier(a) => run_fourier(a),
        Command::Cauchy(a) => run_cauchy(a),
        Command::Diff(a) => run_diff(a),
        Command::Convergence(a) => run_convergence(a),
        Command::KernelNorms(a) => run_kernel_norms(a),
    }
}

/// Parse `argv` (including the program name) and run; the return value is
/// the process exit status.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

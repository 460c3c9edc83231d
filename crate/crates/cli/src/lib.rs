//! Command-line front end for the zgl toolkit.

pub mod cache;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use zgl::eval::{self, EvalConfig, EvalPoint, Method};
use zgl::experiment::{self, ExperimentSpec, ZeroSumReport, DEFAULT_NONVANISH_THRESHOLD};
use zgl::lab::{self, CheckId, DiagnosticSpec, LabContext};
use zgl::report::{self, format_float as fmt};
use zgl::zeros::{self, ZeroTable};
use zgl::{arith, primes, Error};

pub const CACHE_ENV: &str = "ZGL_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub eval: EvalConfig,
    /// Largest |Z(γ)| accepted for an ordinate read from the cache.
    pub zero_tolerance: f64,
    pub nonvanish_threshold: f64,
    pub slack: f64,
    pub zero_cache_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            eval: EvalConfig::default(),
            zero_tolerance: 1e-6,
            nonvanish_threshold: DEFAULT_NONVANISH_THRESHOLD,
            slack: lab::DEFAULT_SLACK,
            zero_cache_dir: None,
            output_format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> zgl::Result<()> {
        self.eval.validate()?;
        if !(self.zero_tolerance > 0.0 && self.nonvanish_threshold > 0.0 && self.slack > 0.0) {
            return Err(Error::DomainError("tolerances and slack must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "zgl", version, about = "Zeta zeros, twisted coefficients and shifted zero sums")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Zero-table cache directory (default: $ZGL_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate zeta and related functions.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Find, import or count zeros on the critical line.
    #[command(subcommand)]
    Zeros(ZerosCmd),
    /// Twisted von Mangoldt coefficients.
    #[command(subcommand)]
    Coeffs(CoeffsCmd),
    /// Witness primes and prime ranges.
    #[command(subcommand)]
    Prime(PrimeCmd),
    /// The shifted zero sum and its main term.
    #[command(subcommand)]
    Zerosum(ZerosumCmd),
    /// Search [T, T(1+ε)] for a zero with ζ(ρ+iy) away from 0.
    Witness1 {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Count zeros up to T with ζ(ρ+iy) away from 0.
    N0y {
        #[arg(long)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Run one auxiliary-estimate check.
    Lemma {
        /// sp_integral, cgg_integral, mv_local, chi_asym, lindelof_scan,
        /// series_bound, technical_bound, summation_bound or
        /// dirichlet_consistency.
        check_id: String,
        /// Check parameter as key=value; repeatable.
        #[arg(long = "param", short = 'p', value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        slack: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZetaFunction {
    Zeta,
    HardyZ,
    Theta,
    Chi,
    Digamma,
    Logderiv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    EulerMaclaurin,
    RiemannSiegel,
}

#[derive(Debug, Subcommand)]
enum ZetaCmd {
    Eval {
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, default_value = "zeta")]
        function: ZetaFunction,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
}

#[derive(Debug, Args)]
struct Range {
    #[arg(long = "from")]
    from: f64,
    #[arg(long = "to")]
    to: f64,
}

#[derive(Debug, Subcommand)]
enum ZerosCmd {
    /// Locate zeros with ordinates in [from, to].
    Find {
        #[command(flatten)]
        range: Range,
    },
    /// Validate a zero file and store it in the cache.
    Import {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        range: Range,
    },
    /// Riemann–von Mangoldt count N(T), optionally with the located count.
    Count {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CoeffsCmd {
    /// D_y(n) for n ≤ limit as CSV `n,re,im`.
    Table {
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long)]
        limit: usize,
    },
}

#[derive(Debug, Subcommand)]
enum PrimeCmd {
    Witness {
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long)]
        t: f64,
    },
    Range {
        #[arg(long = "t-bold")]
        t_bold: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
    },
}

#[derive(Debug, Subcommand)]
enum ZerosumCmd {
    Run {
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        /// A prime, or `auto`.
        #[arg(long, default_value = "auto")]
        x: String,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        a: f64,
        /// Defaults to A/2.
        #[arg(long)]
        c: Option<f64>,
        /// Keep the per-zero terms (JSON output only).
        #[arg(long)]
        detail: bool,
    },
    Sweep {
        /// Comma-separated list of T.
        #[arg(long = "t-list", value_delimiter = ',', required = true)]
        t_list: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        /// T2 = T(1 + delta).
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Also write a log-log plot of ratio against T.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(Error::Io(e.to_string()))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx {
    cfg: RunConfig,
    format: OutputFormat,
    cache: Option<PathBuf>,
}

impl Ctx {
    /// Zeros for [lo, hi]: from the cache when possible, else located and
    /// then cached.
    fn zeros(&self, lo: f64, hi: f64, err: &mut dyn Write) -> CliResult<ZeroTable> {
        if let Some(dir) = &self.cache {
            match cache::load_cached(dir, lo, hi, self.cfg.zero_tolerance, &self.cfg.eval) {
                Ok(t) if t.covers(lo, hi) => return Ok(t),
                Ok(_) | Err(Error::CacheMiss(_)) => {}
                Err(e) => return Err(e.into()),
            }
            let t = zeros::find_zeros(lo, hi, &self.cfg.eval)?;
            if t.complete {
                let p = cache::cache_zeros(dir, lo, hi, &t)?;
                let _ = writeln!(err, "cached {} zeros in {}", t.len(), p.display());
            }
            return Ok(t);
        }
        Ok(zeros::find_zeros(lo, hi, &self.cfg.eval)?)
    }
}

fn load_config(path: Option<&Path>) -> CliResult<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("config {}: {e}", p.display())))
        }
    }
}

/// Runs the command line `args` (including the program name). Returns 0 on
/// success, 1 on a usage error and 2 on a computation error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let result = (|| -> CliResult<()> {
        let pool = {
            let mut b = rayon::ThreadPoolBuilder::new();
            if let Some(n) = cli.threads {
                if n == 0 {
                    return Err(Failure::Usage("--threads must be positive".into()));
                }
                b = b.num_threads(n);
            }
            b.build().map_err(|e| Failure::Compute(Error::EvaluationFailure(e.to_string())))?
        };
        let cfg = load_config(cli.config.as_deref())?;
        cfg.validate()?;
        let cache = cli
            .cache_dir
            .clone()
            .or_else(|| cfg.zero_cache_dir.clone())
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        let ctx = Ctx {
            format: cli.format.unwrap_or(cfg.output_format),
            cfg,
            cache,
        };
        let mut buf: Vec<u8> = Vec::new();
        let mut notes: Vec<u8> = Vec::new();
        let r = pool.install(|| dispatch(&cli.command, &ctx, &mut buf, &mut notes));
        err.write_all(&notes)?;
        r?;
        match &cli.out {
            Some(p) => std::fs::write(p, &buf)?,
            None => out.write_all(&buf)?,
        }
        Ok(())
    })();
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            2
        }
    }
}

fn json_line<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string(v).map_err(|e| Failure::Compute(Error::Io(e.to_string())))
}

fn dispatch(cmd: &Command, ctx: &Ctx, out: &mut Vec<u8>, err: &mut Vec<u8>) -> CliResult<()> {
    let cfg = &ctx.cfg.eval;
    let json = ctx.format == OutputFormat::Json;
    match cmd {
        Command::Zeta(ZetaCmd::Eval { sigma, t, function, method }) => {
            let p = EvalPoint::new(*sigma, *t)?;
            #[derive(Serialize)]
            struct Row {
                function: &'static str,
                sigma: f64,
                t: f64,
                re: f64,
                im: f64,
                abs_error_estimate: Option<f64>,
                method: Option<Method>,
            }
            let (name, value, err_est, m) = match function {
                ZetaFunction::Zeta => {
                    let v = match method {
                        MethodArg::Auto => eval::zeta(p, cfg)?,
                        MethodArg::EulerMaclaurin => eval::zeta_with_method(p, cfg, Method::EulerMaclaurin)?,
                        MethodArg::RiemannSiegel => eval::zeta_with_method(p, cfg, Method::RiemannSiegel)?,
                    };
                    ("zeta", v.value, Some(v.abs_error_estimate), Some(v.method_used))
                }
                ZetaFunction::HardyZ => {
                    let v = eval::hardy_z(*t, cfg)?;
                    ("hardy_z", v.value, Some(v.abs_error_estimate), Some(v.method_used))
                }
                ZetaFunction::Theta => ("theta", eval::rs_theta(*t)?.into(), None, None),
                ZetaFunction::Chi => ("chi", eval::chi(p)?.chi_value, None, None),
                ZetaFunction::Digamma => ("digamma", eval::digamma(p)?, None, None),
                ZetaFunction::Logderiv => {
                    let table = if *sigma < 1.25 {
                        ctx.zeros((t.abs() - 3.0).max(0.0), t.abs() + 3.0, err)?
                    } else {
                        ZeroTable::empty(0.0, 0.0)
                    };
                    let v = eval::logderiv_zeta(p, &table, cfg)?;
                    ("logderiv", v.value, Some(v.abs_error_estimate), Some(v.method_used))
                }
            };
            let row = Row {
                function: name,
                sigma: *sigma,
                t: *t,
                re: value.re,
                im: value.im,
                abs_error_estimate: err_est,
                method: m,
            };
            if json {
                writeln!(out, "{}", json_line(&row)?)?;
            } else {
                writeln!(out, "function,sigma,t,re,im,abs_error_estimate,method")?;
                let method = m.map_or(String::new(), |m| json_line(&m).unwrap_or_default().trim_matches('"').to_string());
                writeln!(
                    out,
                    "{name},{},{},{},{},{},{method}",
                    fmt(*sigma),
                    fmt(*t),
                    fmt(value.re),
                    fmt(value.im),
                    err_est.map_or(String::new(), fmt)
                )?;
            }
        }
        Command::Zeros(ZerosCmd::Find { range }) => {
            let table = ctx.zeros(range.from, range.to, err)?;
            if json {
                writeln!(out, "{}", json_line(&table)?)?;
            } else {
                for z in &table.zeros {
                    writeln!(out, "{:.12}", z.gamma)?;
                }
            }
            if !table.complete {
                let _ = writeln!(err, "warning: search over [{}, {}] is incomplete", range.from, range.to);
            }
        }
        Command::Zeros(ZerosCmd::Import { file, range }) => {
            let table = zeros::load_zero_table(file, range.from, range.to, cfg)?;
            if let Some(dir) = &ctx.cache {
                let p = cache::cache_zeros(dir, range.from, range.to, &table)?;
                let _ = writeln!(err, "cached {} zeros in {}", table.len(), p.display());
            }
            let worst = table.zeros.iter().map(|z| z.refinement_residual).fold(0.0, f64::max);
            if json {
                writeln!(out, "{}", json_line(&table)?)?;
            } else {
                writeln!(out, "zeros={} complete={} max_abs_z={worst:e}", table.len(), table.complete)?;
            }
        }
        Command::Zeros(ZerosCmd::Count { t, exact }) => {
            let rvm = zeros::count_zeros_rvm(*t);
            let located = if *exact {
                let table = ctx.zeros(0.0, *t, err)?;
                Some((table.len(), table.complete))
            } else {
                None
            };
            if json {
                #[derive(Serialize)]
                struct Row {
                    t: f64,
                    rvm_main: f64,
                    rvm_rounded: i64,
                    located: Option<usize>,
                    complete: Option<bool>,
                }
                let row = Row {
                    t: *t,
                    rvm_main: rvm.main,
                    rvm_rounded: rvm.rounded,
                    located: located.map(|l| l.0),
                    complete: located.map(|l| l.1),
                };
                writeln!(out, "{}", json_line(&row)?)?;
            } else {
                write!(out, "T={t} rvm_main={} rvm_rounded={}", rvm.main, rvm.rounded)?;
                if let Some((n, c)) = located {
                    write!(out, " located={n} complete={c}")?;
                }
                writeln!(out)?;
            }
        }
        Command::Coeffs(CoeffsCmd::Table { y, limit }) => {
            let lam = arith::lambda_sieve(*limit)?;
            let table = arith::coeff_dy(*y, *limit, &lam)?;
            if json {
                for n in 1..=*limit {
                    let v = table.get(n);
                    writeln!(out, "{{\"n\":{n},\"re\":{},\"im\":{}}}", json_line(&v.re)?, json_line(&v.im)?)?;
                }
            } else {
                table.write_csv(&mut *out)?;
            }
        }
        Command::Prime(PrimeCmd::Witness { y, t }) => {
            let w = primes::find_witness_prime(*y, *t)?;
            if json {
                writeln!(out, "{}", json_line(&w)?)?;
            } else {
                writeln!(
                    out,
                    "p={} deviation={} window=[{}, {}]",
                    w.p, w.deviation, w.window_lo, w.window_hi
                )?;
            }
        }
        Command::Prime(PrimeCmd::Range { t_bold, y, theta }) => {
            let r = primes::theorem2_prime_range(*t_bold, *y, *theta)?;
            if json {
                writeln!(out, "{}", json_line(&r)?)?;
            } else {
                writeln!(
                    out,
                    "lo={} hi={} scriptL={} count={} smallest={} largest={}",
                    r.lo,
                    r.hi,
                    r.script_l,
                    r.primes.len(),
                    r.primes[0],
                    r.primes[r.primes.len() - 1]
                )?;
            }
        }
        Command::Zerosum(ZerosumCmd::Run { t1, t2, y, x, theta, a, c, detail }) => {
            let t_bold = 0.5 * (t1 + t2);
            let x = if x == "auto" {
                let (x, note) = experiment::select_x(t_bold, *y, *theta)?;
                if let Some(n) = note {
                    let _ = writeln!(err, "note: {n}");
                }
                x
            } else {
                x.parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("--x must be a prime or `auto`, got {x}")))?
            };
            let spec = ExperimentSpec::new(*t1, *t2, *y, x, *a, c.unwrap_or(0.5 * a), *theta)?;
            let zeros = ctx.zeros(*t1, *t2, err)?;
            let r = experiment::zero_sum_detailed(&spec, &zeros, cfg, *detail)?;
            emit_reports(out, ctx.format, std::slice::from_ref(&r))?;
        }
        Command::Zerosum(ZerosumCmd::Sweep { t_list, y, a, theta, delta, svg }) => {
            let entries = experiment::residual_sweep_with(t_list, *y, *a, *theta, *delta, cfg, |lo, hi| {
                ctx.zeros(lo, hi, &mut std::io::sink()).map_err(|f| match f {
                    Failure::Compute(e) => e,
                    Failure::Usage(m) => Error::DomainError(m),
                })
            })?;
            let mut ok = Vec::new();
            let mut first_err = None;
            for e in entries {
                match e.outcome {
                    Ok(r) => ok.push(r),
                    Err(x) => {
                        let _ = writeln!(err, "T={}: {}: {x}", e.t, x.name());
                        first_err.get_or_insert(x);
                    }
                }
            }
            if !ok.is_empty() {
                emit_reports(out, ctx.format, &ok)?;
            }
            if let Some(path) = svg {
                let label = format!("y={y} A={a} Theta={theta}");
                std::fs::write(path, report::residual_svg(&[report::series_from_reports(&label, &ok)]))?;
            }
            if let Some(e) = first_err {
                return Err(e.into());
            }
        }
        Command::Witness1 { t, y, c, threshold } => {
            let th = threshold.unwrap_or(ctx.cfg.nonvanish_threshold);
            let w = experiment::theorem1_witness(*t, *y, *c, th, cfg)?;
            if json {
                writeln!(out, "{}", json_line(&w)?)?;
            } else {
                let found = w.witness_gamma.map_or("none".to_string(), |g| format!("{g:.12}"));
                let mag = w
                    .witness_gamma
                    .and_then(|g| w.shifted_values.iter().find(|v| v.0 == g))
                    .map_or(String::new(), |v| format!(" shifted_abs={}", v.1));
                writeln!(
                    out,
                    "T={} epsilon={} window=[{}, {}] zeros={} witness={found}{mag}",
                    w.t,
                    w.epsilon,
                    w.window.0,
                    w.window.1,
                    w.zeros_in_window.len()
                )?;
            }
        }
        Command::N0y { t, y, threshold } => {
            let th = threshold.unwrap_or(ctx.cfg.nonvanish_threshold);
            let zeros = ctx.zeros(0.0, *t, err)?;
            let n = experiment::n0y_count(*t, *y, th, &zeros, cfg)?;
            if json {
                writeln!(out, "{}", json_line(&n)?)?;
            } else {
                writeln!(out, "T={t} y={y} total={} nonvanishing={} flagged={}", n.total, n.nonvanishing, n.flagged.len())?;
            }
        }
        Command::Lemma { check_id, params, slack } => {
            let id = CheckId::parse(check_id).ok_or_else(|| Failure::Usage(format!("unknown check id {check_id}")))?;
            let mut map = BTreeMap::new();
            for p in params {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("--param expects KEY=VALUE, got {p}")))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("--param {k}: not a number")))?;
                map.insert(k.trim().to_string(), v);
            }
            let spec = DiagnosticSpec { check_id: id, params: map };
            let zeros = if id == CheckId::MvLocal {
                let t = spec.params.get("t").copied().unwrap_or(f64::NAN);
                if t.is_finite() {
                    Some(ctx.zeros((t - 3.0).max(0.0), t + 3.0, err)?)
                } else {
                    None
                }
            } else {
                None
            };
            let lctx = LabContext {
                zeros,
                slack: Some(slack.unwrap_or(ctx.cfg.slack)),
            };
            let r = lab::bound_ratio_scan(&spec, &lctx, cfg)?;
            writeln!(out, "{}", json_line(&r)?)?;
        }
    }
    Ok(())
}

/// Zero-sum reports as CSV (header plus rows) or JSON lines.
pub fn emit_reports(out: &mut dyn Write, format: OutputFormat, reports: &[ZeroSumReport]) -> zgl::Result<()> {
    let text = match format {
        OutputFormat::Csv => report::to_csv(reports),
        OutputFormat::Json => report::to_json_lines(reports)?,
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

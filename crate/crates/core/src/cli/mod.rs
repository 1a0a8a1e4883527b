//! The `c2rp` command-line front end.
//!
//! [`run`] takes the argument list and output streams and returns the exit
//! status, so the whole interface is testable in-process.

mod cache;
mod render;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

pub use cache::ContextCache;
pub use render::{BasisReport, BetaRow, ClassEntry, SearchRow, SwReport, TcRow, MatlemReport, SEARCH_HEADER, TC_HEADER};
pub use verify::{run_suite, Failure, Suite, VerifyReport};

use crate::charclasses::{eta_c_routes_agree, immersion_report, sw_search, sw_series, w_eta_c_coeff, Bundle};
use crate::grassmann::{ambient_len, hg_normal_form, oracle_basis, power_sum_regime, GMonomial};
use crate::tcomplexity::{tc_bounds, zcl_exhaustive, zcl_report, zcl_witness, Decomposition, EXHAUSTIVE_MAX_N};
use crate::wcalg::{normal_form, RawWMonomial};
use crate::{f2core, tcomplexity, Error, WContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
/// Route mismatches and failed verification suites.
pub const EXIT_MISMATCH: i32 = 4;

/// Environment variable for the default worker count.
pub const JOBS_ENV: &str = "C2RP_JOBS";
/// Environment variable for the context cache budget, in MiB.
pub const CACHE_ENV: &str = "C2RP_CACHE_MB";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "c2rp", version, about = "Mod-2 cohomology of C(RP^n, 2), W_n and G_(n+1,2)")]
pub struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    /// Memory budget for cached ring contexts, in MiB.
    #[arg(long, global = true, env = CACHE_ENV, default_value_t = 1024)]
    pub cache_mb: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Oracle basis of H^D(G_(n+1,2)) and, in the upper half, the power-sum table.
    Basis {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Reduce a monomial in x, u, y to the basis of H*(C(RP^n,2)).
    NormalForm {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        monomial: String,
    },
    /// Stiefel-Whitney classes of a bundle.
    Sw {
        #[arg(long = "n")]
        n: usize,
        /// One of tau-g, tau-w, eta-w, tau-c, eta-c.
        #[arg(long)]
        bundle: Bundle,
        /// Only this degree; default is the whole series.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Top nonzero normal class of C(RP^n,2) for 2 <= n <= n-max.
    SwSearch {
        #[arg(long)]
        n_max: usize,
    },
    /// Zero-divisor cup length and topological complexity bounds.
    Zcl {
        #[arg(long = "n")]
        n: usize,
        /// Exhaustive search over generator powers (n <= 8).
        #[arg(long)]
        exhaustive: bool,
        /// Check the lower-bound product.
        #[arg(long)]
        witness: bool,
    },
    /// Table of zcl and TC bounds over a range of n.
    TcReport {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Fill the exhaustive column where the budget allows.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Determinant of the power-sum matrix A_m.
    Matlem {
        #[arg(long = "m")]
        m: usize,
    },
    /// (Non)immersion and nonembedding dimensions with their certificates.
    Immersion {
        #[arg(long = "n")]
        n: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Upper end of the sweep (n, or m for matlem).
        #[arg(long = "n-max", visible_alias = "m-max")]
        max: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => exit_code(e),
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::RouteMismatch(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

/// Rendered output and the exit status it implies.
struct Outcome {
    body: String,
    status: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, status: EXIT_OK }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    let cache = ContextCache::new(cli.cache_mb.saturating_mul(1 << 20));
    match execute(&cli, &|n| cache.get(n)) {
        Ok((body, status)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &body),
                None => out.write_all(body.as_bytes()),
            };
            match written {
                Ok(()) => status,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_IO
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the parsed command on a thread pool sized by `--jobs`, taking ring
/// contexts from `contexts`. Returns the rendered output and exit status.
pub fn execute<F>(cli: &Cli, contexts: &F) -> Result<(String, i32), CliError>
where
    F: Fn(usize) -> Result<Arc<WContext>, Error> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli, contexts)).map(|o| (o.body, o.status))
}

fn pick_format(requested: Option<Format>, allowed: &[Format], command: &str) -> Result<Format, CliError> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(CliError::Usage(format!("{command} does not support --format {f:?}").to_lowercase())),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_table<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

const TEXT_FIRST: &[Format] = &[Format::Text, Format::Json];
const CSV_FIRST: &[Format] = &[Format::Csv, Format::Json];

fn dispatch<F>(cli: &Cli, contexts: &F) -> Result<Outcome, CliError>
where
    F: Fn(usize) -> Result<Arc<WContext>, Error> + Sync,
{
    let fmt = |allowed, name| pick_format(cli.format, allowed, name);
    match &cli.command {
        Command::Basis { n, degree } => {
            let f = fmt(TEXT_FIRST, "basis")?;
            let r = basis_report(*n, *degree)?;
            Ok(Outcome::ok(if f == Format::Json { json(&r) } else { render::basis_text(&r) }))
        }
        Command::NormalForm { n, monomial } => {
            let f = fmt(TEXT_FIRST, "normal-form")?;
            let raw: RawWMonomial = monomial.parse()?;
            let nf = normal_form(&*contexts(*n)?, raw);
            Ok(Outcome::ok(if f == Format::Json { json(&nf) } else { render::normal_form_text(&nf) }))
        }
        Command::Sw { n, bundle, degree } => {
            let f = fmt(TEXT_FIRST, "sw")?;
            let r = sw_report(&*contexts(*n)?, *bundle, *degree)?;
            Ok(Outcome::ok(if f == Format::Json { json(&r) } else { render::sw_text(&r) }))
        }
        Command::SwSearch { n_max } => {
            let f = fmt(CSV_FIRST, "sw-search")?;
            let records = sw_search(*n_max);
            Ok(Outcome::ok(if f == Format::Json {
                json(&records)
            } else {
                csv_table(SEARCH_HEADER, &render::search_rows(&records))?
            }))
        }
        Command::Zcl { n, exhaustive, witness } => {
            let f = fmt(TEXT_FIRST, "zcl")?;
            let r = zcl_report(&*contexts(*n)?, *witness, *exhaustive)?;
            Ok(Outcome::ok(if f == Format::Json { json(&r) } else { render::zcl_text(&r) }))
        }
        Command::TcReport { n_min, n_max, exhaustive } => {
            let f = fmt(CSV_FIRST, "tc-report")?;
            let rows = tc_rows(*n_min, *n_max, *exhaustive, contexts)?;
            Ok(Outcome::ok(if f == Format::Json { json(&rows) } else { csv_table(TC_HEADER, &rows)? }))
        }
        Command::Matlem { m } => {
            let f = fmt(TEXT_FIRST, "matlem")?;
            if *m == 0 {
                return Err(CliError::Usage("m must be at least 1".into()));
            }
            let r = MatlemReport {
                m: *m,
                det: f2core::matlem_det(*m) as u8,
            };
            Ok(Outcome::ok(if f == Format::Json {
                json(&r)
            } else {
                format!("det A_{} = {} (mod 2)\n", r.m, r.det)
            }))
        }
        Command::Immersion { n } => {
            let f = fmt(TEXT_FIRST, "immersion")?;
            let r = immersion_report(&*contexts(*n)?)?;
            Ok(Outcome::ok(if f == Format::Json { json(&r) } else { render::immersion_text(&r) }))
        }
        Command::Verify { suite, max } => {
            let f = fmt(TEXT_FIRST, "verify")?;
            let r = run_suite(*suite, *max, contexts);
            let body = if f == Format::Json { json(&r) } else { render::verify_text(&r) };
            Ok(Outcome {
                body,
                status: if r.ok() { EXIT_OK } else { EXIT_MISMATCH },
            })
        }
    }
}

pub fn basis_report(n: usize, degree: usize) -> Result<BasisReport, Error> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let dd = oracle_basis(n, degree);
    let beta_table = power_sum_regime(n, degree).map(|_| {
        (0..ambient_len(degree))
            .map(|i| GMonomial::from_index(degree, i))
            .filter_map(|m| {
                hg_normal_form(n, m).ok().map(|v| BetaRow {
                    monomial: m.to_string(),
                    beta: v.ones().map(|j| j + 1).collect(),
                })
            })
            .collect()
    });
    Ok(BasisReport {
        n,
        degree,
        dim: dd.dim(),
        basis: dd.basis.iter().map(|m| m.to_string()).collect(),
        relations_applied: dd.relations_applied,
        beta_table,
    })
}

pub fn sw_report(ctx: &WContext, bundle: Bundle, degree: Option<usize>) -> Result<SwReport, Error> {
    let n = ctx.n();
    let entry = |c: &crate::WClass| ClassEntry {
        degree: c.degree,
        nonzero: !c.is_zero(),
        terms: ctx.terms(c).iter().map(|t| t.to_string()).collect(),
    };
    let classes = match (bundle, degree) {
        (Bundle::EtaC, Some(k)) => vec![entry(&w_eta_c_coeff(ctx, k)?)],
        (_, Some(k)) => vec![entry(&sw_series(ctx, bundle, k)?.classes[k])],
        (_, None) => {
            if bundle == Bundle::EtaC {
                eta_c_routes_agree(ctx)?;
            }
            sw_series(ctx, bundle, ctx.top_degree())?.classes.iter().map(entry).collect()
        }
    };
    Ok(SwReport { n, bundle, classes })
}

pub fn tc_rows<F>(n_min: usize, n_max: usize, exhaustive: bool, contexts: &F) -> Result<Vec<TcRow>, Error>
where
    F: Fn(usize) -> Result<Arc<WContext>, Error> + Sync,
{
    if n_min < 2 {
        return Err(Error::InvalidN(n_min));
    }
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let ctx = contexts(n)?;
            let dec = Decomposition::of(n)?;
            let bounds = tc_bounds(n)?;
            let zcl_exhaustive = if exhaustive && n <= EXHAUSTIVE_MAX_N {
                Some(zcl_exhaustive(&ctx)?.value)
            } else {
                None
            };
            Ok(TcRow {
                n,
                e: dec.e,
                d: dec.d,
                r: dec.r,
                zcl_formula: tcomplexity::zcl_formula(n)?,
                zcl_exhaustive,
                witness_ok: zcl_witness(&ctx)?.ok(),
                tc_lower: bounds.lower,
                tc_upper: bounds.upper,
                gap: bounds.gap,
            })
        })
        .collect()
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use spd_core::bounds;
use spd_core::cases::{self, QuantityReport};
use spd_core::degenerations::{c1_block_substitution, c3_two_powers, DegenerationSpec};
use spd_core::flatten::{partial_space, shift_basis, FlattenConfig};
use spd_core::macaulay::{macaulay_min_growth, macaulay_rep};
use spd_core::poly::format::{from_json, parse_text, to_json, to_text};
use spd_core::poly::{make_determinant, make_padded_permanent, make_permanent};
use spd_core::smallscale::{render_table, verify_smallscale};
use spd_core::{ArithmeticMode, BigQuantity, Instance, SparsePolynomial, VariableTable};

#[derive(Parser)]
#[command(name = "spd", version, about = "Shifted partial derivatives: exact ranks, Macaulay bounds and case checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Interval,
}

impl From<Mode> for ArithmeticMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ArithmeticMode::Exact,
            Mode::Interval => ArithmeticMode::Interval,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    C1,
    C3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct RankArgs {
    /// `det:N`, `perm:M`, `padded:M,N`, or a polynomial file (text, or JSON if it ends in .json)
    #[arg(long)]
    poly: String,
    #[arg(long)]
    k: u32,
    /// Rank modulo this prime instead of over Q
    #[arg(long, conflicts_with = "random_prime")]
    prime: Option<u64>,
    /// Rank modulo a random prime in [2^60, 2^61)
    #[arg(long)]
    random_prime: bool,
    /// Refuse matrices with more nonzero entries than this
    #[arg(long, default_value_t = spd_core::flatten::DEFAULT_ENTRY_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify (m, n, k, tau) and evaluate each applicable case
    CaseCheck {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        tau: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Check a grid of (k, tau) samples at fixed (m, n)
    Sweep {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// Comma-separated k values
        #[arg(long, value_delimiter = ',')]
        k_samples: Vec<u64>,
        /// Add this many log-uniformly spaced k values in [1, n-1], plus k = 0
        #[arg(long)]
        k_log: Option<u32>,
        /// Comma-separated tau values
        #[arg(long, value_delimiter = ',')]
        tau_samples: Vec<u64>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Print only the summary, not every instance report
        #[arg(long)]
        summary: bool,
    },
    /// Dimension of the span of order-k partial derivatives
    RankPartials {
        #[command(flatten)]
        args: RankArgs,
    },
    /// Dimension of the degree n-k+tau component of the order-k Jacobian ideal
    RankShifted {
        #[command(flatten)]
        args: RankArgs,
        #[arg(long)]
        tau: u32,
        /// Ambient dimension to shift in; padded with unused matrix coordinates.
        /// Defaults to n^2 for the built-in families and to the polynomial's own variables for files.
        #[arg(long)]
        ambient: Option<usize>,
    },
    /// Macaulay representation of Q at degree d
    MacaulayRep { q: BigUint, d: u32 },
    /// Minimal dim I_{d+tau} for an ideal in N variables with codim Q in degree d
    MacaulayBound { q: BigUint, d: u32, tau: u32, n_vars: u64 },
    /// Evaluate a closed-form bound
    Bound {
        /// padded-upper, det-partials, two-power-dim, leading-monomial-lower,
        /// perm-partials-upper, crude-upper, full-component
        name: String,
        #[arg(long, default_value_t = 0)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        tau: u64,
        /// Dimension for full-component
        #[arg(long, default_value_t = 0)]
        v: u64,
        /// Degree for full-component
        #[arg(long, default_value_t = 0)]
        d: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Print one of the explicit degenerations of det_n and its image
    Degenerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check the engine against the brute-force oracles
    VerifySmallscale {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::CaseCheck { m, n, k, tau, mode } => {
            let report = cases::check_instance(&Instance::new(m, n, k, tau)?, mode.into());
            print_json(&report)?;
            Ok(report.exit_code() as u8)
        }
        Cmd::Sweep { m, n, mut k_samples, k_log, tau_samples, mode, summary } => {
            if let Some(c) = k_log {
                k_samples.extend(log_uniform(n, c));
            }
            let report = cases::theorem_sweep(m, n, &k_samples, &tau_samples, mode.into())?;
            let coverage = cases::coverage(m, n);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if summary {
                print_json(&json!({
                    "m": m, "n": n, "in_regime": report.in_regime, "instances": report.reports.len(),
                    "uncovered": report.uncovered, "unresolved": report.unresolved, "alarms": report.alarms,
                    "coverage": coverage,
                }))?;
            } else {
                print_json(&json!({ "sweep": report, "coverage": coverage }))?;
            }
            Ok(report.exit_code() as u8)
        }
        Cmd::RankPartials { args } => {
            let p = load_poly(&args.poly)?;
            let cfg = config(&args)?;
            let b = partial_space(&p, args.k, &cfg)?;
            print_json(&json!({
                "poly": args.poly, "k": args.k, "degree": b.degree(), "rank": b.rank(),
                "rows": b.rows().len(), "columns": b.columns().len(), "mode": b.mode(),
                "beyond_degree": b.beyond_degree(),
            }))?;
            Ok(0)
        }
        Cmd::RankShifted { args, tau, ambient } => {
            let p = load_poly(&args.poly)?;
            let cfg = config(&args)?;
            let table = ambient_table(&args.poly, &p, ambient)?;
            let partials = partial_space(&p, args.k, &cfg)?;
            let b = shift_basis(&partials, tau, &table, &cfg)?;
            print_json(&json!({
                "poly": args.poly, "k": args.k, "tau": tau, "ambient": table.len(), "degree": b.degree(),
                "partials_rank": partials.rank(), "rank": b.rank(), "rows": b.rows().len(),
                "columns": b.columns().len(), "mode": b.mode(),
            }))?;
            Ok(0)
        }
        Cmd::MacaulayRep { q, d } => {
            let rep = macaulay_rep(&q, d)?;
            print_json(&json!({ "q": q.to_string(), "d": d, "rep": rep_json(&rep) }))?;
            Ok(0)
        }
        Cmd::MacaulayBound { q, d, tau, n_vars } => {
            let rep = macaulay_rep(&q, d)?;
            let bound = macaulay_min_growth(&q, d, tau, n_vars)?;
            print_json(&json!({
                "q": q.to_string(), "d": d, "tau": tau, "n_vars": n_vars,
                "rep": rep_json(&rep), "bound": bound.to_string(),
            }))?;
            Ok(0)
        }
        Cmd::Bound { name, n, m, k, tau, v, d, mode } => {
            let q = named_bound(&name, n, m, k, tau, v, d)?;
            let report = QuantityReport::of(&q, mode.into());
            print_json(&json!({ "name": name, "params": {"n": n, "m": m, "k": k, "tau": tau, "v": v, "d": d}, "quantity": report }))?;
            Ok(0)
        }
        Cmd::Degenerate { kind, n, m, k, format } => {
            let spec = match kind {
                Kind::C1 => {
                    let (Some(m), Some(k)) = (m, k) else { bail!("--kind c1 needs --m and --k") };
                    c1_block_substitution(n, m, k)?
                }
                Kind::C3 => c3_two_powers(n)?,
            };
            print_degeneration(&spec, format)?;
            Ok(0)
        }
        Cmd::VerifySmallscale { json } => {
            let rows = verify_smallscale();
            if json {
                print_json(&rows)?;
            } else {
                print!("{}", render_table(&rows));
            }
            Ok(if rows.iter().all(|r| r.pass) { 0 } else { 1 })
        }
    }
}

fn log_uniform(n: u64, count: u32) -> Vec<u64> {
    let mut out = vec![0];
    if n < 2 || count == 0 {
        return out;
    }
    let top = ((n - 1) as f64).ln();
    for i in 0..count {
        let t = if count == 1 { 0.0 } else { top * i as f64 / (count - 1) as f64 };
        out.push((t.exp().round() as u64).clamp(1, n - 1));
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn config(a: &RankArgs) -> Result<FlattenConfig> {
    let cfg = match (a.prime, a.random_prime) {
        (Some(p), _) => FlattenConfig::prime(p)?,
        (None, true) => FlattenConfig::random_prime(&mut rand::thread_rng()),
        (None, false) => FlattenConfig::exact(),
    };
    Ok(cfg.with_budget(a.budget))
}

enum Family {
    Det(u32),
    Perm(u32),
    Padded(u32, u32),
}

fn family(spec: &str) -> Result<Option<Family>> {
    let Some((name, args)) = spec.split_once(':') else { return Ok(None) };
    let num = |s: &str| s.trim().parse::<u32>().with_context(|| format!("bad size `{s}` in `{spec}`"));
    Ok(Some(match name {
        "det" => Family::Det(num(args)?),
        "perm" => Family::Perm(num(args)?),
        "padded" => {
            let (m, n) = args.split_once(',').context("padded needs `padded:M,N`")?;
            Family::Padded(num(m)?, num(n)?)
        }
        _ => return Ok(None),
    }))
}

fn load_poly(spec: &str) -> Result<SparsePolynomial> {
    Ok(match family(spec)? {
        Some(Family::Det(n)) => make_determinant(n)?,
        Some(Family::Perm(m)) => make_permanent(m)?,
        Some(Family::Padded(m, n)) => make_padded_permanent(m, n)?,
        None => {
            let path = PathBuf::from(spec);
            let src = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            if path.extension().is_some_and(|e| e == "json") {
                from_json(&serde_json::from_str(&src)?)?
            } else {
                parse_text(&src)?
            }
        }
    })
}

fn ambient_table(spec: &str, p: &SparsePolynomial, size: Option<usize>) -> Result<VariableTable> {
    let (base, default) = match family(spec)? {
        Some(Family::Det(n)) => (VariableTable::matrix(n), (n * n) as usize),
        Some(Family::Perm(m)) => (VariableTable::permanent(m), (m * m) as usize),
        Some(Family::Padded(m, n)) => (VariableTable::padded(m), (n * n) as usize),
        None => {
            let t = VariableTable::new(p.variables());
            let len = t.len();
            (t, len)
        }
    };
    let total = size.unwrap_or(default);
    if total < base.len() {
        bail!("ambient dimension {total} is smaller than the {} active variables", base.len());
    }
    Ok(base.with_filler(total))
}

fn rep_json(rep: &spd_core::MacaulayRep) -> Value {
    Value::Array(rep.terms.iter().map(|(a, i)| json!([a.to_string(), i])).collect())
}

fn named_bound(name: &str, n: u64, m: u64, k: u64, tau: u64, v: u64, d: u64) -> Result<BigQuantity> {
    Ok(match name {
        "padded-upper" => bounds::padded_upper(n, m, k, tau)?,
        "det-partials" => bounds::det_partials_count(n, k),
        "two-power-dim" => bounds::two_power_dim(n, k, tau)?,
        "leading-monomial-lower" => bounds::leading_monomial_lower(n, k, tau)?,
        "perm-partials-upper" => bounds::perm_partials_upper(m, k),
        "crude-upper" => bounds::crude_upper(n, m, k, tau)?,
        "full-component" => bounds::full_component(v, d),
        other => bail!("unknown bound `{other}`"),
    })
}

fn print_degeneration(spec: &DegenerationSpec, format: Format) -> Result<()> {
    let image = spec.apply()?;
    match format {
        Format::Json => {
            let sub: serde_json::Map<String, Value> =
                spec.substitution.images().map(|(v, p)| (v.name(), serde_json::to_value(to_json(p)).unwrap())).collect();
            print_json(&json!({ "kind": spec.kind, "substitution": sub, "polynomial": to_json(&image) }))
        }
        Format::Text => {
            println!("# {}", serde_json::to_string(&spec.kind)?);
            println!("# substitution");
            for (v, p) in spec.substitution.images() {
                println!("{} = {}", v.name(), to_text(p).trim_end().replace('\n', " + "));
            }
            println!("# polynomial");
            print!("{}", to_text(&image));
            Ok(())
        }
    }
}

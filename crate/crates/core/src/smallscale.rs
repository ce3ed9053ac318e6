//! Oracle-versus-engine cross-checks on desk-scale instances.

use num_bigint::BigInt;
use serde::Serialize;

use crate::binomial::binom;
use crate::bounds;
use crate::degenerations::c3_two_powers;
use crate::flatten::{partial_space, shift_basis, FlattenConfig};
use crate::macaulay::respects_min_growth;
use crate::oracle::{brute_rank, leading_monomials_of_minors, monomial_ideal_component, OracleError};
use crate::poly::{make_determinant, make_padded_permanent, SparsePolynomial, Var, VariableTable};

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub group: &'static str,
    pub instance: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Component dimensions of `I^{p,k}` in degrees `deg p - k + tau`, `tau = 0..=max_tau`,
/// each paired with the dense oracle's rank (or the reason it refused).
pub struct Series {
    pub dims: Vec<usize>,
    pub oracle: Vec<Result<usize, OracleError>>,
    pub degree0: u32,
    pub n_vars: u64,
}

pub fn shifted_series(p: &SparsePolynomial, k: u32, max_tau: u32, ambient: &VariableTable) -> Series {
    let cfg = FlattenConfig::exact();
    let partials = partial_space(p, k, &cfg).expect("small instance");
    let mut dims = Vec::new();
    let mut oracle = Vec::new();
    for tau in 0..=max_tau {
        let b = shift_basis(&partials, tau, ambient, &cfg).expect("small instance");
        dims.push(b.rank());
        oracle.push(brute_rank(b.rows()));
    }
    Series { dims, oracle, degree0: partials.degree(), n_vars: ambient.len() as u64 }
}

impl Series {
    /// Whether every consecutive pair of dimensions respects Macaulay's minimal growth.
    pub fn growth_ok(&self) -> bool {
        self.dims.windows(2).enumerate().all(|(i, w)| {
            respects_min_growth(w[0] as u64, w[1] as u64, self.degree0 + i as u32, self.n_vars).unwrap_or(false)
        })
    }
}

fn row(group: &'static str, instance: String, expected: impl ToString, got: impl ToString, pass: bool) -> CheckRow {
    CheckRow { group, instance, expected: expected.to_string(), got: got.to_string(), pass }
}

fn oracle_row(group: &'static str, instance: String, engine: usize, oracle: &Result<usize, OracleError>) -> CheckRow {
    match oracle {
        Ok(r) => row(group, instance, r, engine, *r == engine),
        Err(e) => row(group, instance, format!("oracle refused: {e}"), engine, false),
    }
}

/// Two-power degeneration of `det_n`, shifted inside `C^{n^2}`.
pub fn two_power_ambient(n: u32) -> VariableTable {
    VariableTable::new([Var::ELL1, Var::ELL2]).with_filler((n * n) as usize)
}

/// Padded permanent `l^{n-m} perm_m`, shifted inside `C^{n^2}`.
pub fn padded_ambient(m: u32, n: u32) -> VariableTable {
    VariableTable::padded(m).with_filler((n * n) as usize)
}

pub fn verify_smallscale() -> Vec<CheckRow> {
    let mut out = Vec::new();

    for n in 2..=4u32 {
        let det = make_determinant(n).expect("small n");
        for k in 0..=n {
            let b = partial_space(&det, k, &FlattenConfig::exact()).expect("small instance");
            let inst = format!("det n={n} k={k}");
            out.push(oracle_row("det-partials/oracle", inst.clone(), b.rank(), &brute_rank(b.rows())));
            let want = binom(n as i128, k as i128).pow(2);
            out.push(row("det-partials/formula", inst, &want, b.rank(), want == b.rank().into()));
        }
    }

    for n in 1..=5u32 {
        for k in 0..n {
            let got = leading_monomials_of_minors(n, k).map(|s| s.len().to_string()).unwrap_or_else(|e| e.to_string());
            let want = binom((n + k) as i128, 2 * k as i128);
            out.push(row("leading-monomials", format!("n={n} k={k}"), &want, &got, want.to_string() == got));
        }
    }

    for n in 3..=4u32 {
        let det = make_determinant(n).expect("small n");
        let ambient = VariableTable::matrix(n);
        for k in 1..=2u32 {
            let s = shifted_series(&det, k, 2, &ambient);
            for tau in 0..=2u32 {
                let (dim, inst) = (s.dims[tau as usize], format!("det n={n} k={k} tau={tau}"));
                out.push(oracle_row("det-shifted/oracle", inst.clone(), dim, &s.oracle[tau as usize]));
                let lower = bounds::leading_monomial_lower(n as u64, k as u64, tau as u64).expect("small").exact();
                out.push(row("det-shifted/lower-bound", inst.clone(), format!(">= {lower}"), dim, BigInt::from(dim) >= lower));
                let mono = leading_monomials_of_minors(n, k).and_then(|l| monomial_ideal_component(&l, tau, &ambient));
                if let Ok(c) = mono {
                    out.push(row("det-shifted/monomial-count", inst, format!("<= {dim}"), c, c as usize <= dim));
                }
            }
            out.push(row("macaulay-growth", format!("det n={n} k={k}"), "respected", s.growth_ok(), s.growth_ok()));
        }
    }

    for n in 2..=5u32 {
        let r = c3_two_powers(n).and_then(|d| d.apply()).expect("small n");
        let ambient = two_power_ambient(n);
        for k in 0..n {
            let s = shifted_series(&r, k, 4, &ambient);
            for tau in 0..=4u32 {
                let (dim, inst) = (s.dims[tau as usize], format!("two-powers n={n} k={k} tau={tau}"));
                out.push(oracle_row("two-powers/oracle", inst.clone(), dim, &s.oracle[tau as usize]));
                let formula = if k == 0 {
                    bounds::full_component((n * n) as u64, tau as u64).exact()
                } else {
                    bounds::two_power_dim(n as u64, k as u64, tau as u64).expect("small").exact()
                };
                let group = if k == 0 { "two-powers/principal" } else { "two-powers/formula" };
                out.push(row(group, inst, &formula, dim, formula == dim.into()));
            }
        }
    }

    let m = 2u32;
    for n in 3..=6u32 {
        let p = make_padded_permanent(m, n).expect("n > m");
        let ambient = padded_ambient(m, n);
        for k in 0..n - m {
            let s = shifted_series(&p, k, 2, &ambient);
            for tau in 0..=2u32 {
                let (dim, inst) = (s.dims[tau as usize], format!("padded m={m} n={n} k={k} tau={tau}"));
                out.push(oracle_row("padded/oracle", inst.clone(), dim, &s.oracle[tau as usize]));
                let (n6, m6, k6, t6) = (n as u64, m as u64, k as u64, tau as u64);
                let up = bounds::padded_upper(n6, m6, k6, t6).expect("k < n - m").exact();
                let crude = bounds::crude_upper(n6, m6, k6, t6).expect("small").exact();
                let ok = BigInt::from(dim) <= up && BigInt::from(dim) <= crude;
                out.push(row("padded/upper-bounds", inst, format!("<= min({up}, {crude})"), dim, ok));
            }
            out.push(row("macaulay-growth", format!("padded m={m} n={n} k={k}"), "respected", s.growth_ok(), s.growth_ok()));
        }
    }
    out
}

/// Plain-text table of check rows.
pub fn render_table(rows: &[CheckRow]) -> String {
    let w = rows.iter().map(|r| r.group.len()).max().unwrap_or(5).max(5);
    let wi = rows.iter().map(|r| r.instance.len()).max().unwrap_or(8).max(8);
    let mut s = format!("{:<4}  {:<w$}  {:<wi$}  {:>12}  expected\n", "ok", "group", "instance", "got");
    for r in rows {
        let status = if r.pass { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status:<4}  {:<w$}  {:<wi$}  {:>12}  {}\n", r.group, r.instance, r.got, r.expected));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    s.push_str(&format!("{} checks, {} failed\n", rows.len(), failed));
    s
}

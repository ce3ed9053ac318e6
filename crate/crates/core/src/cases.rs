//! Per-instance classification into the four cases and exact evaluation of
//! each case's decisive inequality.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    self, compare, full_component, ArithmeticMode, BigQuantity, ComparisonResult, Evaluated, Outcome, Provenance,
};

/// Exact values with at most this many digits are written out in reports.
pub const PRINTED_DIGITS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseId {
    C1,
    C2,
    C3,
    C4,
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for CaseId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(CaseId::C1),
            "C2" => Ok(CaseId::C2),
            "C3" => Ok(CaseId::C3),
            "C4" => Ok(CaseId::C4),
            _ => Err(format!("unknown case `{s}`")),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CaseError {
    #[error("padding needs n > m (got m = {m}, n = {n})")]
    NoPadding { m: u64, n: u64 },
    #[error("need m >= 1")]
    ZeroM,
    #[error("need k < n (got k = {k}, n = {n})")]
    KTooLarge { k: u64, n: u64 },
    #[error("n = {0} is too large for 64-bit parameter arithmetic")]
    Overflow(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub tau: u64,
}

impl Instance {
    pub fn new(m: u64, n: u64, k: u64, tau: u64) -> Result<Self, CaseError> {
        if m == 0 {
            return Err(CaseError::ZeroM);
        }
        if n <= m {
            return Err(CaseError::NoPadding { m, n });
        }
        if k >= n {
            return Err(CaseError::KTooLarge { k, n });
        }
        if n > 1 << 20 || tau > 1 << 62 {
            return Err(CaseError::Overflow(n));
        }
        Ok(Instance { m, n, k, tau })
    }

    /// `n > 2m^2 + 2m`.
    pub fn in_regime(&self) -> bool {
        in_regime(self.m, self.n)
    }

    fn wide(&self) -> (u128, u128, u128, u128) {
        (self.m as u128, self.n as u128, self.k as u128, self.tau as u128)
    }
}

pub fn in_regime(m: u64, n: u64) -> bool {
    let (m, n) = (m as u128, n as u128);
    n > 2 * m * m + 2 * m
}

fn c1_region(i: &Instance) -> bool {
    let (m, n, k, _) = i.wide();
    (m + 1) * (n - k) < n
}

fn c2_region(i: &Instance) -> bool {
    let (m, n, k, _) = i.wide();
    2 * m <= k && k + 2 * m <= n
}

fn c3_region(i: &Instance) -> bool {
    let (m, n, k, t) = i.wide();
    k < 2 * m && 2 * t > 3 * n * n * m
}

fn c4_region(i: &Instance) -> bool {
    let (m, n, k, t) = i.wide();
    k < 2 * m && t * m < 6 * n * n * n
}

/// `tau < n^3 / (6m)`, the threshold reached at the end of the C4 derivation.
fn c4_derived_threshold(i: &Instance) -> bool {
    let (m, n, _, t) = i.wide();
    6 * m * t < n * n * n
}

/// Every case whose parameter inequalities hold.
pub fn classify(i: &Instance) -> Vec<CaseId> {
    let mut out = Vec::new();
    if c1_region(i) {
        out.push(CaseId::C1);
    }
    if c2_region(i) {
        out.push(CaseId::C2);
    }
    if c3_region(i) {
        out.push(CaseId::C3);
    }
    if c4_region(i) {
        out.push(CaseId::C4);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantityReport {
    pub provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_interval: Option<[f64; 2]>,
}

impl QuantityReport {
    pub fn from_evaluated(p: Provenance, e: &Evaluated) -> Self {
        let (value, digits) = match e.exact() {
            Some(v) => {
                let s = v.to_string();
                let d = s.trim_start_matches('-').len();
                ((d <= PRINTED_DIGITS).then_some(s), Some(d))
            }
            None => (e.is_zero().then(|| "0".to_string()), None),
        };
        QuantityReport { provenance: p.tag(), value, digits, log_interval: e.log_bounds().map(|(a, b)| [a, b]) }
    }

    pub fn of(q: &BigQuantity, mode: ArithmeticMode) -> Self {
        Self::from_evaluated(q.provenance, &q.evaluate(mode))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Holds {
    Yes,
    No,
    Unresolved,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub id: CaseId,
    /// Whether the instance lies in the case's parameter region.
    pub in_region: bool,
    pub lhs: QuantityReport,
    pub rhs: QuantityReport,
    /// `>=`, `>` or `contains`.
    pub relation: &'static str,
    pub holds: Holds,
    /// Whether the bounds used are valid at this instance, so that `holds` certifies the case.
    pub bounds_valid: bool,
    pub arithmetic: ArithmeticMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transfer: Option<QuantityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CaseRecord {
    pub fn certifies(&self) -> bool {
        self.holds == Holds::Yes && self.bounds_valid
    }
}

fn holds_from(c: &ComparisonResult, strict: bool) -> Holds {
    match c.outcome {
        Outcome::Greater => Holds::Yes,
        Outcome::Equal if !strict => Holds::Yes,
        Outcome::Equal | Outcome::Less => Holds::No,
        Outcome::Unresolved => Holds::Unresolved,
    }
}

fn record_from(
    id: CaseId,
    in_region: bool,
    lhs: &BigQuantity,
    rhs: &BigQuantity,
    strict: bool,
    mode: ArithmeticMode,
) -> CaseRecord {
    let c = compare(&lhs.expr, &rhs.expr, mode);
    CaseRecord {
        id,
        in_region,
        lhs: QuantityReport::from_evaluated(lhs.provenance, &c.lhs),
        rhs: QuantityReport::from_evaluated(rhs.provenance, &c.rhs),
        relation: if strict { ">" } else { ">=" },
        holds: holds_from(&c, strict),
        bounds_valid: true,
        arithmetic: c.mode,
        precision_bits: c.precision,
        transfer: None,
        subcase: None,
        notes: Vec::new(),
    }
}

fn unavailable(id: CaseId, in_region: bool, why: String) -> CaseRecord {
    let none = |p: Provenance| QuantityReport { provenance: p.tag(), value: None, digits: None, log_interval: None };
    CaseRecord {
        id,
        in_region,
        lhs: none(Provenance::FullComponent),
        rhs: none(Provenance::PaddedUpper),
        relation: ">",
        holds: Holds::No,
        bounds_valid: false,
        arithmetic: ArithmeticMode::Exact,
        precision_bits: None,
        transfer: None,
        subcase: None,
        notes: vec![why],
    }
}

const PRINCIPAL_NOTE: &str =
    "k = 0: both Jacobian ideals are principal, so both dimensions equal binom(n^2+tau-1, tau) and no strict inequality is possible";

/// Evaluates a case's decisive comparison. The instance does not have to lie
/// in the case's region; `in_region` records whether it does.
pub fn check_case(id: CaseId, i: &Instance, mode: ArithmeticMode) -> CaseRecord {
    let (m, n, k, tau) = (i.m, i.n, i.k, i.tau);
    match id {
        CaseId::C1 => {
            let in_region = c1_region(i);
            let d = n - k;
            let q = full_component(m * m + 1, d);
            let mut r = record_from(id, in_region, &q, &q, false, mode);
            r.relation = "contains";
            let fits = (m as u128 + 1) * d as u128 <= n as u128;
            r.holds = if fits { Holds::Yes } else { Holds::No };
            r.notes.push(format!(
                "block degeneration with {d} blocks of size {m} needs (m+1)(n-k) = {} <= n = {n}: {}",
                (m as u128 + 1) * d as u128,
                if fits { "satisfied" } else { "violated" }
            ));
            r
        }
        CaseId::C2 => {
            let in_region = c2_region(i);
            let lhs = bounds::det_partials_count(n, k);
            let rhs = full_component(n * n, m);
            let mut r = record_from(id, in_region, &lhs, &rhs, false, mode);
            if n - k > m {
                // Macaulay growth from degree n-k with d - q = m
                if let Ok(up) = bounds::padded_upper(n, m, k, tau) {
                    r.transfer = Some(QuantityReport::of(&up, mode));
                }
                r.notes.push("transfer to degree n-k+tau: corollary growth with N = n^2, d = n-k, d-q = m equals padded-upper".into());
            } else {
                r.bounds_valid = false;
                r.notes.push("n - k <= m: the padded upper bound and the growth transfer do not apply".into());
            }
            r
        }
        CaseId::C3 => {
            let in_region = c3_region(i);
            let Ok(rhs) = bounds::padded_upper(n, m, k, tau) else {
                return unavailable(id, in_region, "k >= n - m: padded upper bound not valid".into());
            };
            let lhs = bounds::two_power_dim(n, k, tau).expect("parameters checked");
            let mut r = record_from(id, in_region, &lhs, &rhs, true, mode);
            if k == 0 {
                r.bounds_valid = false;
                r.notes.push(PRINCIPAL_NOTE.into());
            }
            r
        }
        CaseId::C4 => {
            let in_region = c4_region(i);
            let lhs = bounds::leading_monomial_lower(n, k, tau).expect("parameters checked");
            let rhs = bounds::crude_upper(n, m, k, tau).expect("parameters checked");
            let mut r = record_from(id, in_region, &lhs, &rhs, true, mode);
            if 2 * k >= m {
                r.subcase = Some("k >= m/2".into());
            } else {
                let sum = bounds::perm_partials_upper(m, k).exact();
                let single = bounds::det_partials_count(m, k).exact() * BigInt::from(k);
                r.subcase = Some("k < m/2".into());
                r.notes.push(format!(
                    "sum_(j<=k) binom(m,j)^2 < k binom(m,k)^2: {}",
                    if sum < single { "holds" } else { "fails" }
                ));
            }
            r.notes.push(format!(
                "tau < 6n^3/m: {}; tau < n^3/(6m): {}",
                (tau as u128) * (m as u128) < 6 * (n as u128).pow(3),
                c4_derived_threshold(i)
            ));
            if k == 0 {
                r.bounds_valid = false;
                r.notes.push(PRINCIPAL_NOTE.into());
            }
            r
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SeparationFailsConfirmed,
    InequalityUnresolved,
    OutOfRegime,
}

#[derive(Clone, Debug, Serialize)]
pub struct Inputs {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub tau: u64,
    pub t: u64,
    pub epsilon: String,
    pub delta: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub inputs: Inputs,
    pub in_regime: bool,
    pub applicable: Vec<CaseId>,
    pub cases: Vec<CaseRecord>,
    pub verdict: Verdict,
    /// Set when the instance satisfies `n > 2m^2 + 2m` but no case certifies it.
    pub alarm: bool,
}

impl CaseReport {
    /// 0 confirmed, 2 unresolved, 3 alarm; out-of-regime instances without an alarm give 0.
    pub fn exit_code(&self) -> i32 {
        if self.alarm {
            3
        } else if self.verdict == Verdict::InequalityUnresolved {
            2
        } else {
            0
        }
    }
}

fn ratio(a: u128, b: u128) -> String {
    BigRational::new(BigInt::from(a), BigInt::from(b)).to_string()
}

pub fn check_instance(i: &Instance, mode: ArithmeticMode) -> CaseReport {
    let applicable = classify(i);
    let cases: Vec<CaseRecord> = applicable.iter().map(|&c| check_case(c, i, mode)).collect();
    let verdict = if cases.iter().any(CaseRecord::certifies) {
        Verdict::SeparationFailsConfirmed
    } else if cases.iter().any(|c| c.holds == Holds::Unresolved && c.bounds_valid) {
        Verdict::InequalityUnresolved
    } else {
        Verdict::OutOfRegime
    };
    let (m, n, k, tau) = i.wide();
    CaseReport {
        inputs: Inputs {
            m: i.m,
            n: i.n,
            k: i.k,
            tau: i.tau,
            t: i.tau + i.n - i.k,
            epsilon: ratio(k, m),
            delta: ratio(tau, n * n * m),
        },
        in_regime: i.in_regime(),
        applicable,
        cases,
        verdict,
        alarm: i.in_regime() && verdict == Verdict::OutOfRegime,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub m: u64,
    pub n: u64,
    pub in_regime: bool,
    pub warnings: Vec<String>,
    pub reports: Vec<CaseReport>,
    pub uncovered: Vec<(u64, u64)>,
    pub unresolved: Vec<(u64, u64)>,
    pub alarms: Vec<(u64, u64)>,
}

impl SweepReport {
    pub fn exit_code(&self) -> i32 {
        if !self.alarms.is_empty() {
            3
        } else if !self.unresolved.is_empty() {
            2
        } else {
            0
        }
    }
}

/// Classifies and checks every `(k, tau)` pair; samples with `k >= n` are skipped with a warning.
pub fn theorem_sweep(m: u64, n: u64, ks: &[u64], taus: &[u64], mode: ArithmeticMode) -> Result<SweepReport, CaseError> {
    Instance::new(m, n, 0, 0)?;
    let mut warnings = Vec::new();
    if !in_regime(m, n) {
        warnings.push(format!("n = {n} is not above 2m^2 + 2m = {}; instances are out of regime", 2 * m * m + 2 * m));
    }
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for &k in ks {
        if k >= n {
            warnings.push(format!("k = {k} skipped (k < n required)"));
            continue;
        }
        for &t in taus {
            pairs.push((k, t));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let instances: Vec<Instance> = pairs.iter().map(|&(k, t)| Instance::new(m, n, k, t)).collect::<Result<_, _>>()?;
    let reports: Vec<CaseReport> = instances.par_iter().map(|i| check_instance(i, mode)).collect();
    let key = |r: &CaseReport| (r.inputs.k, r.inputs.tau);
    Ok(SweepReport {
        m,
        n,
        in_regime: in_regime(m, n),
        warnings,
        uncovered: reports.iter().filter(|r| r.applicable.is_empty()).map(key).collect(),
        unresolved: reports.iter().filter(|r| r.verdict == Verdict::InequalityUnresolved).map(key).collect(),
        alarms: reports.iter().filter(|r| r.alarm).map(key).collect(),
        reports,
    })
}

/// Pure parameter-space coverage of the four regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub m: u64,
    pub n: u64,
    /// Every `k` with `2m <= k < n` lies in C1 or C2.
    pub large_k_covered: bool,
    pub first_gap_k: Option<u64>,
    /// For `k < 2m`, every `tau` lies in C3 or C4 (header thresholds).
    pub tau_covered: bool,
    /// Same with C4 cut at `n^3/(6m)`.
    pub tau_covered_derived_threshold: bool,
}

pub fn coverage(m: u64, n: u64) -> Coverage {
    let (mm, nn) = (m as u128, n as u128);
    let first_gap_k = (2 * m..n).find(|&k| {
        let i = Instance { m, n, k, tau: 0 };
        !c1_region(&i) && !c2_region(&i)
    });
    // C3 is 2 tau > 3 n^2 m; C4 is tau m < 6 n^3. A gap is an integer tau with
    // tau >= ceil(6n^3/m) and 2 tau <= 3 n^2 m.
    let c4_end = (6 * nn.pow(3)).div_ceil(mm);
    let c3_start = 3 * nn * nn * mm / 2;
    let c4_end_derived = nn.pow(3).div_ceil(6 * mm);
    Coverage {
        m,
        n,
        large_k_covered: first_gap_k.is_none(),
        first_gap_k,
        tau_covered: c4_end > c3_start,
        tau_covered_derived_threshold: c4_end_derived > c3_start,
    }
}

/// `ceil(3 n^2 m / 2)`.
pub fn c3_threshold(m: u64, n: u64) -> u64 {
    ((3 * (n as u128).pow(2) * m as u128).div_ceil(2)) as u64
}

/// `floor(n^3 / (6m))`.
pub fn c4_derived_tau(m: u64, n: u64) -> u64 {
    ((n as u128).pow(3) / (6 * m as u128)) as u64
}

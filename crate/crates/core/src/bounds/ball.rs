//! Fixed-point ball arithmetic on big integers.
//!
//! A [`Ball`] at precision `p` stands for the closed interval
//! `[(mid - rad) / 2^p, (mid + rad) / 2^p]`. Every operation rounds so that
//! the true result stays inside the returned ball.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::binomial::factorial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    prec: u32,
}

fn big(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: BigUint::zero(), prec }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        Ball { mid: n.into() << prec, rad: BigUint::zero(), prec }
    }

    /// `num / den` for `den > 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        debug_assert!(den.is_positive());
        let mid = (num << prec).div_floor(den);
        Ball { mid, rad: BigUint::one(), prec }
    }

    fn raw(mid: BigInt, rad: BigUint, prec: u32) -> Self {
        Ball { mid, rad, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Numerator of the lower endpoint, scaled by `2^prec`.
    pub fn lo(&self) -> BigInt {
        &self.mid - BigInt::from(self.rad.clone())
    }

    pub fn hi(&self) -> BigInt {
        &self.mid + BigInt::from(self.rad.clone())
    }

    pub fn radius_ulps(&self) -> &BigUint {
        &self.rad
    }

    /// Width of the ball as an `f64`.
    pub fn width(&self) -> f64 {
        scaled_to_f64(&BigInt::from(self.rad.clone() * 2u32), self.prec)
    }

    pub fn add(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball::raw(&self.mid + &o.mid, &self.rad + &o.rad, self.prec)
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball::raw(&self.mid - &o.mid, &self.rad + &o.rad, self.prec)
    }

    pub fn neg(&self) -> Ball {
        Ball::raw(-&self.mid, self.rad.clone(), self.prec)
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec;
        let mid = (&self.mid * &o.mid) >> p;
        let err = self.mid.magnitude() * &o.rad + o.mid.magnitude() * &self.rad + &self.rad * &o.rad;
        Ball::raw(mid, (err >> p) + 2u32, p)
    }

    pub fn mul_int(&self, n: &BigInt) -> Ball {
        Ball::raw(&self.mid * n, &self.rad * n.magnitude(), self.prec)
    }

    /// Division by a positive integer.
    pub fn div_int(&self, n: &BigUint) -> Ball {
        let d = BigInt::from(n.clone());
        Ball::raw(self.mid.div_floor(&d), &self.rad / n + 2u32, self.prec)
    }

    pub fn definitely_gt(&self, o: &Ball) -> bool {
        self.lo() > o.hi()
    }

    pub fn definitely_lt(&self, o: &Ball) -> bool {
        self.hi() < o.lo()
    }

    pub fn definitely_positive(&self) -> bool {
        self.lo().is_positive()
    }

    pub fn contains_ball(&self, o: &Ball) -> bool {
        self.lo() <= o.lo() && o.hi() <= self.hi()
    }

    pub fn overlaps(&self, o: &Ball) -> bool {
        !(self.definitely_gt(o) || self.definitely_lt(o))
    }

    pub fn mid_f64(&self) -> f64 {
        scaled_to_f64(&self.mid, self.prec)
    }

    /// Outward-rounded `f64` endpoints.
    pub fn bounds_f64(&self) -> (f64, f64) {
        let lo = scaled_to_f64(&self.lo(), self.prec);
        let hi = scaled_to_f64(&self.hi(), self.prec);
        (outward(lo, -1.0), outward(hi, 1.0))
    }

    /// The ball rounded to a lower precision.
    pub fn truncate(&self, prec: u32) -> Ball {
        assert!(prec <= self.prec);
        let s = self.prec - prec;
        Ball::raw(&self.mid >> s, (&self.rad >> s) + 1u32, prec)
    }

    /// `[exp(lo), exp(hi)]`.
    pub fn exp(&self) -> Ball {
        let lo = exp_point(&self.lo(), self.prec).lo();
        let hi = exp_point(&self.hi(), self.prec).hi();
        hull(lo, hi, self.prec)
    }

    /// `[ln(lo), ln(hi)]`; `None` unless the ball is strictly positive.
    pub fn ln(&self) -> Option<Ball> {
        if !self.definitely_positive() {
            return None;
        }
        let p = self.prec;
        let lo = ln_uint(&self.lo().to_biguint()?, p).sub(&ln2(p).mul_int(&big(p))).lo();
        let hi = ln_uint(&self.hi().to_biguint()?, p).sub(&ln2(p).mul_int(&big(p))).hi();
        Some(hull(lo, hi, p))
    }
}

fn hull(lo: BigInt, hi: BigInt, prec: u32) -> Ball {
    let sum = &lo + &hi;
    let mid = sum.div_floor(&big(2));
    let rad = (&hi - &mid).max(&mid - &lo);
    Ball::raw(mid, rad.to_biguint().unwrap_or_default() + 1u32, prec)
}

fn outward(x: f64, dir: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    x + dir * (x.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE)
}

fn scaled_to_f64(n: &BigInt, prec: u32) -> f64 {
    let bits = n.bits() as i64;
    let shift = (bits - 64).max(0);
    let head = (n >> shift as usize).to_f64().unwrap_or(f64::NAN);
    head * 2f64.powi((shift - prec as i64).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// `atanh(1/x)` for an integer `x >= 2`.
fn atanh_inv(x: u64, prec: u32) -> Ball {
    let one = BigInt::one() << prec;
    let x2 = BigInt::from(x) * x;
    let mut power = one.div_floor(&big(x));
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        sum += &power / big(2 * j + 1);
        power = power.div_floor(&x2);
        j += 1;
    }
    Ball::raw(sum, BigUint::from(2 * j + 4), prec)
}

/// `atan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: u64, prec: u32) -> Ball {
    let one = BigInt::one() << prec;
    let x2 = BigInt::from(x) * x;
    let mut power = one.div_floor(&big(x));
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / big(2 * j + 1);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = power.div_floor(&x2);
        j += 1;
    }
    Ball::raw(sum, BigUint::from(2 * j + 4), prec)
}

pub fn ln2(prec: u32) -> Ball {
    atanh_inv(3, prec).mul_int(&big(2))
}

pub fn pi(prec: u32) -> Ball {
    atan_inv(5, prec).mul_int(&big(16)).sub(&atan_inv(239, prec).mul_int(&big(4)))
}

/// Natural log of a positive integer.
pub fn ln_uint(n: &BigUint, prec: u32) -> Ball {
    assert!(!n.is_zero(), "ln of zero");
    let s = n.bits() - 1;
    let base = BigUint::one() << s;
    // ln n = s ln 2 + 2 atanh((n - 2^s) / (n + 2^s)), argument in [0, 1/3)
    let y = ((n - &base) << prec) / (n + &base);
    let y = BigInt::from_biguint(Sign::Plus, y);
    let y2 = (&y * &y) >> prec;
    let mut power = y;
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        sum += &power / big(2 * j + 1);
        power = (&power * &y2) >> prec;
        j += 1;
    }
    let atanh = Ball::raw(sum * 2, BigUint::from(8 * j + 16), prec);
    ln2(prec).mul_int(&big(s)).add(&atanh)
}

/// `exp(v / 2^prec)`.
fn exp_point(v: &BigInt, prec: u32) -> Ball {
    let l2 = ln2(prec + 8).truncate(prec);
    let k = v.div_floor(&l2.mid);
    let kf = k.to_i64().expect("exponent within range");
    assert!(kf < 1 << 24, "exp argument too large");
    let r = Ball::raw(v.clone(), BigUint::zero(), prec).sub(&l2.mul_int(&k));
    // r in [0, ln 2] up to rounding
    let one = BigInt::one() << prec;
    let mut term = one.clone();
    let mut sum = BigInt::zero();
    let mut j = 1u64;
    while !term.is_zero() {
        sum += &term;
        term = ((&term * &r.mid) >> prec) / big(j);
        j += 1;
    }
    // derivative of exp on [0, 1] is below 3
    let rad = BigUint::from(2 * j + 4) + &r.rad * 3u32;
    let e = Ball::raw(sum, rad, prec);
    if kf >= 0 {
        let s = kf as usize;
        Ball::raw(e.mid << s, e.rad << s, prec)
    } else {
        let s = (-kf) as usize;
        Ball::raw(e.mid >> s, (e.rad >> s) + 1u32, prec)
    }
}

pub fn exp(x: &Ball) -> Ball {
    x.exp()
}

/// Tangent numbers `T_1, T_2, ...` (1, 2, 16, 272, ...).
fn tangent_numbers(n: usize) -> Vec<BigUint> {
    let mut t = vec![BigUint::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigUint::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    t
}

const STIRLING_TERMS: usize = 320;

fn tangents() -> &'static [BigUint] {
    static CELL: OnceLock<Vec<BigUint>> = OnceLock::new();
    CELL.get_or_init(|| tangent_numbers(STIRLING_TERMS + 1))
}

/// Arguments up to this size use the exact factorial.
const EXACT_FACTORIAL_MAX: u64 = 20_000;

/// `ln(n!)`.
pub fn ln_factorial(n: u64, prec: u32) -> Ball {
    if n < 2 {
        return Ball::zero(prec);
    }
    if n <= EXACT_FACTORIAL_MAX {
        return ln_uint(&factorial(n), prec);
    }
    // ln n! = (n + 1/2) ln n - n + ln(2 pi)/2 + sum_j B_2j / (2j (2j - 1) n^(2j-1))
    let nb = BigUint::from(n);
    let ln_n = ln_uint(&nb, prec);
    let half_ln_2pi = pi(prec).mul_int(&big(2)).ln().expect("2 pi is positive").div_int(&BigUint::from(2u32));
    let main = ln_n.mul_int(&big(2 * n + 1)).div_int(&BigUint::from(2u32)).sub(&Ball::from_int(n, prec)).add(&half_ln_2pi);
    // B_2j / (2j (2j-1)) = (-1)^(j-1) T_j / (4^j (4^j - 1) (2j - 1))
    let t = tangents();
    let mut series = BigInt::zero();
    let mut npow = nb.clone();
    let n2 = &nb * &nb;
    let mut j = 1usize;
    let mut err = BigUint::zero();
    let scale = |j: usize| {
        let four = BigUint::one() << (2 * j);
        &four * (&four - 1u32) * (2 * j as u64 - 1)
    };
    loop {
        let den = scale(j) * &npow;
        let term = BigInt::from((&t[j] << prec as usize) / &den);
        err += 1u32;
        if j % 2 == 1 {
            series += &term;
        } else {
            series -= &term;
        }
        npow = &npow * &n2;
        j += 1;
        let next_den = scale(j) * &npow;
        let next = (&t[j] << prec as usize) / &next_den;
        if next.is_zero() || j > STIRLING_TERMS {
            // remainder is bounded by the first omitted term
            err += next + 1u32;
            break;
        }
    }
    main.add(&Ball::raw(series, err, prec))
}

/// `ln binom(a, b)`, `None` when the binomial vanishes.
pub fn ln_binom(a: i128, b: i128, prec: u32) -> Option<Ball> {
    if a < 0 || b < 0 || b > a {
        return None;
    }
    let (a, b) = (a as u64, b as u64);
    Some(ln_factorial(a, prec).sub(&ln_factorial(b, prec)).sub(&ln_factorial(a - b, prec)))
}

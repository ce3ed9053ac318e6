//! Prime-field arithmetic for fast rank computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::poly::Rational;

/// Smallest modulus accepted for rank computations.
pub const MIN_PRIME: u64 = 1 << 60;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is below the 2^60 minimum")]
    PrimeTooSmall(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit the 62-bit arithmetic")]
    PrimeTooLarge(u64),
    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
}

/// The field `F_p` for a prime `2^60 < p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < MIN_PRIME {
            return Err(FieldError::PrimeTooSmall(p));
        }
        if p >= 1 << 62 {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !primal_check::miller_rabin(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// A uniformly drawn prime in `[2^60, 2^61)`.
    pub fn random(rng: &mut impl Rng) -> Self {
        loop {
            let candidate = rng.gen_range(MIN_PRIME..(1u64 << 61)) | 1;
            if primal_check::miller_rabin(candidate) {
                return PrimeField { p: candidate };
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("reduced residue fits")
    }

    pub fn from_rational(&self, q: &Rational) -> Result<u64, FieldError> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        if den == 0 {
            return Err(FieldError::DenominatorVanishes(self.p));
        }
        Ok(self.mul(num, self.inv(den)))
    }

    /// Symmetric lift of a residue, for display.
    pub fn lift(&self, a: u64) -> BigInt {
        let a = BigInt::from(a);
        let p = BigInt::from(self.p);
        if a.clone() * 2 > p {
            a - p
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rejects_small_or_composite_moduli() {
        assert_eq!(PrimeField::new(101), Err(FieldError::PrimeTooSmall(101)));
        assert_eq!(PrimeField::new(MIN_PRIME), Err(FieldError::NotPrime(MIN_PRIME)));
    }

    #[test]
    fn random_prime_in_range_and_inverse() {
        let mut rng = seeded_rng();
        let f = PrimeField::random(&mut rng);
        assert!(f.modulus() >= MIN_PRIME && f.modulus() < 1 << 61);
        for a in [1u64, 2, 12345, f.modulus() - 1] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(f.mul(f.from_rational(&half).unwrap(), 2), 1);
        assert_eq!(f.lift(f.from_bigint(&BigInt::from(-7))), BigInt::from(-7));
    }

    fn seeded_rng() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(7)
    }
}

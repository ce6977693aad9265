//! Coefficient fields.
//!
//! Scalars are always stored as [`BigRational`]. Over a prime field the
//! stored value is the least nonnegative residue, so equality of stored
//! values is equality in the field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    PrimeField(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::PrimeField(p))
        } else {
            Err(Error::InvalidRing(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField(p) => *p,
        }
    }

    fn modulus(p: u64) -> BigInt {
        BigInt::from(p)
    }

    /// Canonical representative of an integer.
    pub fn from_int(&self, value: impl Into<BigInt>) -> Scalar {
        let v: BigInt = value.into();
        match self {
            Field::Rationals => BigRational::from_integer(v),
            Field::PrimeField(p) => BigRational::from_integer(v.mod_floor(&Self::modulus(*p))),
        }
    }

    /// Canonical representative of a rational number; fails when the
    /// denominator vanishes in the field.
    pub fn from_rational(&self, value: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(value.clone()),
            Field::PrimeField(p) => {
                let m = Self::modulus(*p);
                let den = value.denom().mod_floor(&m);
                if den.is_zero() {
                    return Err(Error::DivisorNotInvertible(value.denom().to_string()));
                }
                let inv = mod_inverse(&den, &m);
                Ok(BigRational::from_integer(
                    (value.numer().mod_floor(&m) * inv).mod_floor(&m),
                ))
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::PrimeField(p) => {
                let m = Self::modulus(*p);
                Some(BigRational::from_integer(mod_inverse(a.numer(), &m)))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|inv| self.mul(a, &inv))
    }

    /// Reduce an integral-valued rational into canonical form. Inputs must
    /// already be canonical representatives combined by ring operations.
    fn reduce(&self, v: Scalar) -> Scalar {
        match self {
            Field::Rationals => v,
            Field::PrimeField(p) => {
                debug_assert!(v.is_integer());
                BigRational::from_integer(v.to_integer().mod_floor(&Self::modulus(*p)))
            }
        }
    }

    /// Whether `n` is zero in the field.
    pub fn divides_order(&self, n: usize) -> bool {
        match self {
            Field::Rationals => false,
            Field::PrimeField(p) => (n as u64).is_multiple_of(*p),
        }
    }

    /// Display a canonical scalar.
    pub fn format_scalar(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::PrimeField(p) => write!(f, "ZZ/{p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` when `q = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

//! Exact coefficients: arbitrary-precision rationals and prime fields.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use super::AlgebraError;

/// Coefficient field of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    /// Integers mod a prime, canonical representative in `[0, p)`.
    Prime(u64),
}

impl Field {
    /// Prime field constructor; rejects non-primes.
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        if p < 2 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(k))),
            Field::Prime(p) => {
                let r = k.rem_euclid(*p as i64) as u64;
                Scalar::Mod { value: r, prime: *p }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= p) {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A nonzero-or-zero field element. Rationals are kept reduced with positive
/// denominator (the representation `BigRational` maintains); mod-p values are
/// kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, prime: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Mod { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q })
                if p == q =>
            {
                Scalar::Mod { value: (a + b) % p, prime: *p }
            }
            _ => panic!("scalar backend mismatch: {self:?} + {other:?}"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, prime: p }, Scalar::Mod { value: b, prime: q })
                if p == q =>
            {
                let v = ((*a as u128) * (*b as u128) % (*p as u128)) as u64;
                Scalar::Mod { value: v, prime: *p }
            }
            _ => panic!("scalar backend mismatch: {self:?} * {other:?}"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, prime } => {
                Scalar::Mod { value: (prime - value) % prime, prime: *prime }
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    /// Multiply by an integer without needing the ambient `Field`.
    pub fn mul_i64(&self, k: i64) -> Scalar {
        self.mul(&self.field().from_i64(k))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Mod { value, prime } => {
                // Fermat: v^(p-2) mod p.
                let mut base = *value as u128;
                let m = *prime as u128;
                let mut exp = prime - 2;
                let mut acc = 1u128;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Scalar::Mod { value: acc as u64, prime: *prime }
            }
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

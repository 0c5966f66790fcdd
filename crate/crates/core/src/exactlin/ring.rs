use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ring element. Every supported ring stores its elements as reduced
/// fractions; over the integers and prime fields the denominator is always 1,
/// and prime-field numerators live in `0..p`.
pub type Scalar = BigRational;

/// The exact coefficient rings supported by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientRing {
    pub fn prime_field(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Schema(format!("{p} is not a prime below 2^31")));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    ///
    /// Over the integers a non-integral input is a caller bug and panics.
    pub fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            CoefficientRing::Integers => {
                assert!(x.is_integer(), "non-integral value {x} over Z");
                x
            }
            CoefficientRing::Rationals => x,
            CoefficientRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                if x.is_integer() {
                    return Scalar::from_integer(num);
                }
                let den = x.denom().mod_floor(&p);
                let inv = den.modpow(&(&p - BigInt::from(2)), &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    /// True when `x` is already a canonical element of this ring.
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            CoefficientRing::Integers => x.is_integer(),
            CoefficientRing::Rationals => true,
            CoefficientRing::PrimeField(p) => {
                x.is_integer() && !x.is_negative() && x.numer() < &BigInt::from(*p)
            }
        }
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

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            CoefficientRing::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if !self.is_unit(a) {
            return None;
        }
        Some(self.reduce(a.recip()))
    }

    /// Euclidean size used for pivot selection: |a| over Z, 0/1 over fields.
    pub fn size(&self, a: &Scalar) -> BigInt {
        match self {
            CoefficientRing::Integers => a.numer().abs(),
            _ => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Euclidean quotient `q` with `size(a - q*b) < size(b)`.
    pub fn quotient(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoefficientRing::Integers => Scalar::from_integer(a.numer().div_floor(b.numer())),
            _ => self.mul(a, &self.inv(b).expect("division by zero")),
        }
    }

    /// True when `b` divides `a`.
    pub fn divides(&self, b: &Scalar, a: &Scalar) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        match self {
            CoefficientRing::Integers => a.numer().is_multiple_of(b.numer()),
            _ => true,
        }
    }

    /// Exact division; caller guarantees `b | a`.
    pub fn exact_div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoefficientRing::Integers => Scalar::from_integer(a.numer() / b.numer()),
            _ => self.quotient(a, b),
        }
    }

    /// Unit `u` such that `u * a` is the canonical associate of `a`
    /// (non-negative over Z, 1 over fields).
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        match self {
            CoefficientRing::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            _ => {
                if a.is_zero() {
                    Scalar::one()
                } else {
                    self.inv(a).unwrap()
                }
            }
        }
    }

    /// Canonical representative of `a` modulo the ideal generated by `d`.
    pub fn residue(&self, a: &Scalar, d: &Scalar) -> Scalar {
        match self {
            CoefficientRing::Integers if !d.is_zero() => {
                Scalar::from_integer(a.numer().mod_floor(&d.numer().abs()))
            }
            CoefficientRing::Integers => a.clone(),
            _ => {
                if d.is_zero() {
                    a.clone()
                } else {
                    Scalar::zero()
                }
            }
        }
    }

    /// Short code used on the command line and in reports: `z`, `q`, `fp:P`.
    pub fn code(&self) -> String {
        match self {
            CoefficientRing::Integers => "z".into(),
            CoefficientRing::Rationals => "q".into(),
            CoefficientRing::PrimeField(p) => format!("fp:{p}"),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "int" | "integers" => Ok(CoefficientRing::Integers),
            "q" | "rat" | "rationals" => Ok(CoefficientRing::Rationals),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::Schema(format!("unknown ring `{s}`")))?;
                CoefficientRing::prime_field(p)
            }
        }
    }
}

/// Renders a scalar as `"n"` or `"n/d"`.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Schema(format!("bad scalar `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Small integer view, used by tests and reports.
pub fn scalar_to_i64(x: &Scalar) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

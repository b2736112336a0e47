//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! The modulus of a prime field is only known at run time (it comes from the
//! command line), so scalars carry their field with them and the arithmetic
//! operators check that both operands live in the same field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid field descriptor `{0}` (expected `rat` or `fp:<prime>`)")]
    BadDescriptor(String),
    #[error("{value} has a denominator divisible by {modulus}")]
    NotRepresentable { value: String, modulus: u64 },
}

/// Which field the algebra is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        // Keep products of two residues inside u128 comfortably.
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps an exact rational into this field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, FieldError> {
        match *self {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue fits in u64")
                };
                let num = reduce(q.numer());
                let den = reduce(q.denom());
                if den == 0 {
                    return Err(FieldError::NotRepresentable {
                        value: q.to_string(),
                        modulus: p,
                    });
                }
                let den = Scalar::Mod {
                    value: den,
                    modulus: p,
                };
                let num = Scalar::Mod {
                    value: num,
                    modulus: p,
                };
                Ok(&num * &den.inv().expect("nonzero residue is invertible"))
            }
        }
    }

    /// Field of a scalar value.
    pub fn of(s: &Scalar) -> Field {
        match s {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rat"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rat" {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("fp:").map(str::parse::<u64>) {
            Some(Ok(p)) => Field::prime(p),
            _ => Err(FieldError::BadDescriptor(s.to_string())),
        }
    }
}

/// An element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> Field {
        Field::of(self)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    /// `self / other`; panics on division by zero.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self * &other.inv().expect("division by zero scalar")
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) if p == q => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) if p == q => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Parses `n` or `n/d` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s.trim(), None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => {
            let d: BigInt = d.parse().ok()?;
            if !d.is_positive() {
                return None;
            }
            d
        }
        None => BigInt::one(),
    };
    Some(BigRational::new(num, den))
}

/// Canonical text form `n` or `n/d` of a rational.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

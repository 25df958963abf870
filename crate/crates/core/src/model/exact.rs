//! Exact integers and rationals.
//!
//! Every comparison the engine makes goes through these types. There is no
//! floating point anywhere on the decision path: ties such as `ratio == mu`
//! are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;

/// Arbitrary-precision signed integer. Objective coordinates reach `base^n`.
pub type ExactInt = BigInt;

/// Exact rational in canonical form: `den > 0`, `gcd(|num|, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(num: impl Into<ExactInt>, den: impl Into<ExactInt>) -> Result<Self, ModelError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ModelError::ZeroDenominator);
        }
        Ok(ExactRatio(BigRational::new(num.into(), den)))
    }

    pub fn from_int(value: impl Into<ExactInt>) -> Self {
        ExactRatio(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
    }

    pub fn numer(&self) -> &ExactInt {
        self.0.numer()
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &ExactInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn recip(&self) -> Result<Self, ModelError> {
        if self.0.is_zero() {
            return Err(ModelError::ZeroDenominator);
        }
        Ok(ExactRatio(self.0.recip()))
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> ExactInt {
        self.0.ceil().to_integer()
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> ExactInt {
        self.0.floor().to_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRatio(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Lossy, for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRatio {
    fn from(value: BigRational) -> Self {
        ExactRatio(value)
    }
}

impl From<i64> for ExactRatio {
    fn from(value: i64) -> Self {
        ExactRatio::from_int(value)
    }
}

impl From<ExactInt> for ExactRatio {
    fn from(value: ExactInt) -> Self {
        ExactRatio::from_int(value)
    }
}

// Canonical form makes the derived ordering of BigRational a cross-multiplication,
// but spell it out so the contract does not depend on the backing crate.
impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a ExactRatio> for &'a ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &'a ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics like the integer types do; callers validate divisors.
forward_binop!(Div, div);

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactRatio({self})")
    }
}

/// Accepts `"p/q"` or an integer literal `"p"`. Signs are allowed on `p` only.
impl FromStr for ExactRatio {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::BadRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let num = parse_int(p).ok_or_else(bad)?;
                if q.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let den = parse_int(q).ok_or_else(bad)?;
                ExactRatio::new(num, den)
            }
            None => parse_int(s).map(ExactRatio::from_int).ok_or_else(bad),
        }
    }
}

/// Parses a plain decimal integer with an optional sign. Rejects `"2.5"`, `"1e3"`, `""`.
pub fn parse_int(s: &str) -> Option<ExactInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `base^exp` as an exact integer.
pub fn int_pow(base: u64, exp: u32) -> ExactInt {
    num_traits::pow(ExactInt::from(base), exp as usize)
}

/// Bit length of `|value|`.
pub fn bit_len(value: &ExactInt) -> u64 {
    value.abs().bits()
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRatio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing an [`ExactInt`] as a decimal string.
pub mod decimal {
    use super::{parse_int, ExactInt};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &ExactInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<ExactInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_int(&s).ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {s:?}")))
    }
}

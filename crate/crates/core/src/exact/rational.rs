use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// A nonnegative rational number in lowest terms.
///
/// `num()` and `den()` are the numerator and denominator of the reduced
/// fraction; zero is stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, ExactError> {
        let (n, d) = (numerator.into(), denominator.into());
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Self::from_big(BigRational::new(n, d))
    }

    /// Wraps a signed rational, rejecting negative values.
    pub fn from_big(q: BigRational) -> Result<Self, ExactError> {
        if q.is_negative() {
            return Err(ExactError::NegativeValue(q.to_string()));
        }
        Ok(Rational(q))
    }

    pub fn integer(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// n(q)
    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    /// d(q)
    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        let d = &self.0 - &other.0;
        (!d.is_negative()).then_some(Rational(d))
    }
}

impl std::ops::Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl std::ops::Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_big(&self.0, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational::from_big(parse_big(s)?)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn fmt_big(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Renders a signed rational as `"a/b"`, or `"a"` when integral.
pub fn format_big(q: &BigRational) -> String {
    struct W<'a>(&'a BigRational);
    impl fmt::Display for W<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_big(self.0, f)
        }
    }
    W(q).to_string()
}

/// Parses `"a/b"`, `"-a/b"` or `"a"` exactly.
pub fn parse_big(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    Ok(BigRational::new(n, d))
}

pub fn floor_to_int(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_to_int(q: &BigRational) -> BigInt {
    q.numer().div_ceil(q.denom())
}

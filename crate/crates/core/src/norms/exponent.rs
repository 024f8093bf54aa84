use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::parse_decimal_rational;

/// A norm exponent in `[1, inf]`, exact when finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Finite(BigRational),
    Infinity,
}

impl Exponent {
    pub fn finite(value: BigRational) -> Result<Self> {
        if value < BigRational::one() {
            return Err(Error::InvalidArgument(format!(
                "exponent {value} is below 1"
            )));
        }
        Ok(Exponent::Finite(value))
    }

    pub fn from_integer(value: u64) -> Result<Self> {
        Exponent::finite(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn one() -> Self {
        Exponent::Finite(BigRational::one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exponent::Finite(r) => Some(r),
            Exponent::Infinity => None,
        }
    }

    /// Conjugate exponent `q` with `1/p + 1/q = 1`; `1/inf = 0`.
    pub fn conjugate(&self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(BigRational::one()),
            Exponent::Finite(p) => {
                if p.is_one() {
                    Exponent::Infinity
                } else {
                    Exponent::Finite(p / (p - BigRational::one()))
                }
            }
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Infinity, Exponent::Infinity) => Ordering::Equal,
            (Exponent::Infinity, _) => Ordering::Greater,
            (_, Exponent::Infinity) => Ordering::Less,
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "inf"),
            Exponent::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `inf`/`∞`, fractions like `5/4`, and decimals like `1.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" || s.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinity);
        }
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            let d: BigInt = den.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(s.into()));
            }
            return Exponent::finite(BigRational::new(n, d));
        }
        let r = parse_decimal_rational(s).ok_or_else(|| Error::Parse(s.into()))?;
        Exponent::finite(r)
    }
}

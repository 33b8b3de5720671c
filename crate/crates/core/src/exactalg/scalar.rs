use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// A commutative ring containing the rationals.
///
/// Every formula in this crate has rational structure constants (binomials,
/// factorials, Stirling numbers), so the coefficient ring must admit an
/// embedding of `Rat`. Implemented for `Rat`, the floating point types and
/// multivariate polynomials over any `Scalar`.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(v)))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

/// A `Scalar` with exact-or-approximate division.
pub trait Field: Scalar + Div<Output = Self> {}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn pow(&self, exp: u32) -> Self {
        num_traits::Pow::pow(self, exp)
    }
}

impl Field for Rat {}

impl Scalar for f64 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Field for f64 {}

impl Scalar for f32 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl Field for f32 {}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `num / den` in lowest terms. Panics on a zero denominator; use
/// [`try_rat`] for untrusted input.
pub fn rat(num: i64, den: i64) -> Rat {
    try_rat(num, den).expect("zero denominator")
}

pub fn try_rat(num: i64, den: i64) -> Result<Rat> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rat::new(BigInt::from(num), BigInt::from(den)))
}

pub fn big(v: impl Into<BigInt>) -> Rat {
    Rat::from_integer(v.into())
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace allowed).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let parse_int = |x: &str| {
        BigInt::from_str(x.trim()).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
    };
    match t.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
        None => Ok(Rat::from_integer(parse_int(t)?)),
    }
}

/// Canonical `"p/q"` form; integers print without a denominator.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Integer binomial coefficient with the convention `binom(n, k) = 0` for
/// `k < 0` or `k > n`; `n` must be non-negative.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Checked `i128` binomial, `None` on overflow. Same conventions as [`binomial`].
pub fn binomial_i128(n: i64, k: i64) -> Option<i128> {
    if n < 0 || k < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)? / (i + 1) as i128;
    }
    Some(acc)
}

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::Field;
use crate::error::{Error, Result};

/// Ratio of two univariate polynomials, kept reduced: numerator and
/// denominator are coprime and the denominator is monic.
#[derive(Clone)]
pub struct RatFn<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Field> RatFn<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g)?;
        let (mut den, _) = den.div_rem(&g)?;
        let lead = den.leading().cloned().expect("nonzero denominator");
        let inv = T::one() / lead;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }

    pub fn numer(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `None` at poles.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

/// Equality by cross-multiplication, independent of normal form.
impl<T: Field> PartialEq for RatFn<T> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<T: Field> Add for &RatFn<T> {
    type Output = RatFn<T>;

    fn add(self, rhs: &RatFn<T>) -> RatFn<T> {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFn::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl<T: Field> Sub for &RatFn<T> {
    type Output = RatFn<T>;

    fn sub(self, rhs: &RatFn<T>) -> RatFn<T> {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFn::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl<T: Field> Mul for &RatFn<T> {
    type Output = RatFn<T>;

    fn mul(self, rhs: &RatFn<T>) -> RatFn<T> {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl<T: Field + fmt::Display> fmt::Display for RatFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<T: Field> fmt::Debug for RatFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RatFn")
            .field("num", &self.num)
            .field("den", &self.den)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, Rat};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn reduces_common_factors() {
        // (k^2 - 1) / (2k + 2) = (k - 1)/2
        let f = RatFn::new(p(&[-1, 0, 1]), p(&[2, 2])).unwrap();
        assert_eq!(f.denom(), &p(&[1]));
        assert_eq!(f.numer(), &Poly::new(vec![Rat::new((-1).into(), 2.into()), Rat::new(1.into(), 2.into())]));
    }

    #[test]
    fn denominator_is_monic_and_positive() {
        let f = RatFn::new(p(&[0, 1]), p(&[-3, -3])).unwrap();
        assert_eq!(f.denom().leading(), Some(&int(1)));
        assert_eq!(f.eval(&int(2)), Some(Rat::new((-2).into(), 9.into())));
        assert_eq!(f.eval(&int(-1)), None);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFn::new(p(&[1]), Poly::zero()).unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = RatFn::from_poly(p(&[1, 1]));
        let b = RatFn::new(p(&[1, 2, 1]), p(&[1, 1])).unwrap();
        assert_eq!(a, b);
        let diff = &a - &b;
        assert!(diff.is_zero());
        assert_eq!(&a * &b, RatFn::from_poly(p(&[1, 2, 1])));
        assert_eq!(&a + &a, RatFn::from_poly(p(&[2, 2])));
    }
}

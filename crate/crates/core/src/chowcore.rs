//! Chow weight and higher Futaki invariants from a Hilbert polynomial
//! `chi(k) = sum a_l k^(n-l)` and a weight polynomial
//! `w(k) = sum b_l k^(n+1-l)`.
//!
//! The normalized Chow weight of the `k`-th power is
//! `Chow(k) = w(k)/chi(k) - (b_0/a_0) k`, and expanding it gives
//!
//! ```text
//! Chow(k) = b_{n+1}/chi(k) + (a_0/chi(k)) * sum_{l=1..n} F_l k^(n+1-l),
//! F_l     = (a_0 b_l - b_0 a_l) / a_0^2.
//! ```
//!
//! Callers are responsible for the geometric side conditions (very ample
//! polarization, no higher cohomology); only the polynomials are seen here.

use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, RatFn, Scalar};
use crate::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct HilbertData<T = Rat> {
    n: usize,
    a: Vec<T>,
}

impl<T: Scalar> HilbertData<T> {
    /// `a = [a_0, .., a_n]`; requires `a_0 != 0`.
    pub fn new(n: usize, a: Vec<T>) -> Result<Self> {
        if a.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: a.len(),
            });
        }
        if a[0].is_zero() {
            return Err(Error::Degenerate("leading Hilbert coefficient a_0 is zero".into()));
        }
        Ok(HilbertData { n, a })
    }

    /// Reads `a_l` off the coefficient of `k^(n-l)`.
    pub fn from_poly(n: usize, chi: &Poly<T>) -> Result<Self> {
        if chi.degree().is_some_and(|d| d > n) {
            return Err(Error::Precondition(format!(
                "Hilbert polynomial of degree {:?} exceeds dimension {n}",
                chi.degree()
            )));
        }
        Self::new(n, (0..=n).map(|l| chi.coeff(n - l)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn to_poly(&self) -> Poly<T> {
        Poly::new(self.a.iter().rev().cloned().collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightData<T = Rat> {
    n: usize,
    b: Vec<T>,
}

impl<T: Scalar> WeightData<T> {
    /// `b = [b_0, .., b_{n+1}]`.
    pub fn new(n: usize, b: Vec<T>) -> Result<Self> {
        if b.len() != n + 2 {
            return Err(Error::DimensionMismatch {
                expected: n + 2,
                found: b.len(),
            });
        }
        Ok(WeightData { n, b })
    }

    /// Reads `b_l` off the coefficient of `k^(n+1-l)`.
    pub fn from_poly(n: usize, w: &Poly<T>) -> Result<Self> {
        if w.degree().is_some_and(|d| d > n + 1) {
            return Err(Error::Precondition(format!(
                "weight polynomial of degree {:?} exceeds n+1 = {}",
                w.degree(),
                n + 1
            )));
        }
        Self::new(n, (0..=n + 1).map(|l| w.coeff(n + 1 - l)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// The constant term `b_{n+1}`.
    pub fn b_top(&self) -> &T {
        &self.b[self.n + 1]
    }

    pub fn to_poly(&self) -> Poly<T> {
        Poly::new(self.b.iter().rev().cloned().collect())
    }
}

fn check_dims<T>(h: &HilbertData<T>, w: &WeightData<T>) -> Result<()> {
    if h.n != w.n {
        return Err(Error::DimensionMismatch {
            expected: h.n,
            found: w.n,
        });
    }
    Ok(())
}

/// `[a_0 b_l - b_0 a_l]` for `l = 1..n`.
///
/// Needs no division, so it also runs over polynomial rings; this is how
/// the invariants are carried out symbolically.
pub fn futaki_numerators<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len() - 1;
    (1..=n)
        .map(|l| a[0].clone() * b[l].clone() - b[0].clone() * a[l].clone())
        .collect()
}

/// `Chow(k) = w(k)/chi(k) - (b_0/a_0) k` as a reduced rational function.
pub fn chow_weight_fn<T: Field>(h: &HilbertData<T>, w: &WeightData<T>) -> Result<RatFn<T>> {
    check_dims(h, w)?;
    let ratio = w.b[0].clone() / h.a[0].clone();
    let chi = h.to_poly();
    let shifted = &w.to_poly() - &(&chi * &Poly::monomial(ratio, 1));
    RatFn::new(shifted, chi)
}

/// `[F_1, .., F_n]`, `F_l = (a_0 b_l - b_0 a_l) / a_0^2`.
pub fn futaki_invariants<T: Field>(h: &HilbertData<T>, w: &WeightData<T>) -> Result<Vec<T>> {
    check_dims(h, w)?;
    let a0sq = h.a[0].clone() * h.a[0].clone();
    Ok(futaki_numerators(&h.a, &w.b)
        .into_iter()
        .map(|x| x / a0sq.clone())
        .collect())
}

/// Changes the linearization: `w(k) -> w(k) + c k chi(k)`, i.e.
/// `b_l -> b_l + c a_l` for `l <= n`, with `b_{n+1}` untouched.
pub fn shift_linearization<T: Scalar>(
    w: &WeightData<T>,
    h: &HilbertData<T>,
    c: &T,
) -> Result<WeightData<T>> {
    check_dims(h, w)?;
    let mut b = w.b.clone();
    for (bl, al) in b.iter_mut().zip(&h.a) {
        *bl = bl.clone() + c.clone() * al.clone();
    }
    Ok(WeightData { n: w.n, b })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport<T: Field = Rat> {
    pub chow: RatFn<T>,
    pub futaki: Vec<T>,
    pub b_top: T,
}

/// Chow weight, `F_l` and `b_{n+1}` together. The expansion identity
/// `Chow = b_{n+1}/chi + (a_0/chi) sum F_l k^(n+1-l)` is checked before
/// returning; a failure is reported as [`Error::InternalMismatch`].
pub fn report<T: Field>(h: &HilbertData<T>, w: &WeightData<T>) -> Result<InvariantReport<T>> {
    let chow = chow_weight_fn(h, w)?;
    let futaki = futaki_invariants(h, w)?;
    let b_top = w.b_top().clone();
    if chow != expansion(h, &futaki, &b_top)? {
        return Err(Error::InternalMismatch(
            "Chow weight disagrees with its F_l expansion".into(),
        ));
    }
    Ok(InvariantReport { chow, futaki, b_top })
}

/// `b_top/chi + (a_0/chi) sum F_l k^(n+1-l)`.
pub fn expansion<T: Field>(h: &HilbertData<T>, futaki: &[T], b_top: &T) -> Result<RatFn<T>> {
    let n = h.n;
    if futaki.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: futaki.len(),
        });
    }
    let mut coeffs = vec![T::zero(); n + 2];
    for (l, f) in futaki.iter().enumerate() {
        coeffs[n - l] = h.a[0].clone() * f.clone();
    }
    coeffs[0] = coeffs[0].clone() + b_top.clone();
    RatFn::new(Poly::new(coeffs), h.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use num_traits::Zero;

    fn hd(a: &[Rat]) -> HilbertData {
        HilbertData::new(a.len() - 1, a.to_vec()).unwrap()
    }

    fn wd(b: &[Rat]) -> WeightData {
        WeightData::new(b.len() - 2, b.to_vec()).unwrap()
    }

    #[test]
    fn line_with_quadratic_weight() {
        // chi = k + 1, w = k^2
        let h = hd(&[int(1), int(1)]);
        let w = wd(&[int(1), int(0), int(0)]);
        let chow = chow_weight_fn(&h, &w).unwrap();
        let expected = RatFn::new(Poly::new(vec![int(0), int(-1)]), Poly::new(vec![int(1), int(1)])).unwrap();
        assert_eq!(chow, expected);
        assert_eq!(futaki_invariants(&h, &w).unwrap(), vec![int(-1)]);
        let r = report(&h, &w).unwrap();
        assert_eq!(r.futaki, vec![int(-1)]);
        assert_eq!(r.b_top, int(0));
    }

    #[test]
    fn pure_linearization_has_zero_chow() {
        let h = hd(&[rat(1, 2), rat(3, 2), int(1)]);
        let c = rat(-7, 3);
        let chi = h.to_poly();
        let w = WeightData::from_poly(2, &(&chi * &Poly::monomial(c, 1))).unwrap();
        assert!(chow_weight_fn(&h, &w).unwrap().is_zero());
        assert!(futaki_invariants(&h, &w).unwrap().iter().all(|f| f.is_zero()));
    }

    #[test]
    fn zero_action() {
        let h = hd(&[int(1), int(1)]);
        let w = wd(&[int(0), int(0), int(0)]);
        let r = report(&h, &w).unwrap();
        assert!(r.chow.is_zero());
        assert_eq!(r.futaki, vec![int(0)]);
        assert_eq!(r.b_top, int(0));
    }

    #[test]
    fn plane_with_cubic_weight() {
        let h = hd(&[rat(1, 2), rat(3, 2), int(1)]);
        let w = wd(&[int(1), int(0), int(0), int(0)]);
        assert_eq!(futaki_invariants(&h, &w).unwrap(), vec![int(-6), int(-4)]);
        report(&h, &w).unwrap();
    }

    #[test]
    fn shifts() {
        let h = hd(&[int(1), int(1)]);
        let w = wd(&[int(1), int(0), int(0)]);
        assert_eq!(shift_linearization(&w, &h, &int(0)).unwrap(), w);
        let w1 = shift_linearization(&w, &h, &int(1)).unwrap();
        assert_eq!(w1.b(), &[int(2), int(1), int(0)]);
        assert_eq!(futaki_invariants(&h, &w1).unwrap(), vec![int(-1)]);
        let c = -(w.b()[0].clone() / h.a()[0].clone());
        assert_eq!(shift_linearization(&w, &h, &c).unwrap().b()[0], int(0));
    }

    #[test]
    fn b_top_enters_the_expansion() {
        let h = hd(&[int(1), int(1)]);
        let w = wd(&[int(0), int(0), int(3)]);
        let r = report(&h, &w).unwrap();
        assert_eq!(r.b_top, int(3));
        assert_eq!(r.chow.eval(&int(2)), Some(int(1)));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            HilbertData::new(1, vec![int(0), int(1)]),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            HilbertData::new(2, vec![int(1), int(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
        let h = hd(&[int(1), int(1)]);
        let w = wd(&[int(1), int(0), int(0), int(0)]);
        assert!(matches!(futaki_invariants(&h, &w), Err(Error::DimensionMismatch { .. })));
        assert!(chow_weight_fn(&h, &w).is_err());
    }
}

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::scalar::{Rat, Scalar};
use crate::error::{Error, Result};

type Exponents = Vec<u32>;

/// Sparse multivariate polynomial over named indeterminates.
///
/// The indeterminate list is fixed when the polynomial is built. A
/// polynomial with an empty list is a pure constant and combines with any
/// other polynomial; two non-empty lists must match exactly. Zero
/// coefficients are never stored.
#[derive(Clone)]
pub struct MultiPoly<T> {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, T>,
}

impl<T: Scalar> MultiPoly<T> {
    /// The zero polynomial over `vars`.
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// One polynomial per indeterminate, in order.
    pub fn generators<S: AsRef<str>>(vars: &[S]) -> Vec<Self> {
        let base = Self::new(vars);
        (0..vars.len())
            .map(|i| {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                base.clone().with_term(e, T::one())
            })
            .collect()
    }

    pub fn constant(c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Arc::from(Vec::<String>::new()),
            terms,
        }
    }

    /// Builds a polynomial over `vars` from `(exponents, coefficient)` pairs,
    /// summing repeated monomials.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Exponents, T)>,
    ) -> Result<Self> {
        let mut out = Self::new(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: vars.len(),
                    found: e.len(),
                });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn with_term(mut self, e: Exponents, c: T) -> Self {
        self.add_term(e, c);
        self
    }

    fn add_term(&mut self, e: Exponents, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &T)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exps: &[u32]) -> T {
        if self.vars.is_empty() {
            return if exps.iter().all(|&e| e == 0) {
                self.terms.get(&Vec::new()).cloned().unwrap_or_else(T::zero)
            } else {
                T::zero()
            };
        }
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    fn unify(&self, other: &Self) -> Result<Arc<[String]>> {
        if self.vars.is_empty() {
            Ok(other.vars.clone())
        } else if other.vars.is_empty() || self.vars == other.vars {
            Ok(self.vars.clone())
        } else {
            Err(Error::IndeterminateMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    /// Terms re-keyed over `vars` (only constants ever need padding).
    fn terms_over(&self, vars: &Arc<[String]>) -> Cow<'_, BTreeMap<Exponents, T>> {
        if self.vars.len() == vars.len() {
            Cow::Borrowed(&self.terms)
        } else {
            Cow::Owned(
                self.terms
                    .iter()
                    .map(|(_, c)| (vec![0; vars.len()], c.clone()))
                    .collect(),
            )
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let vars = self.unify(other)?;
        let mut out = MultiPoly {
            vars: vars.clone(),
            terms: self.terms_over(&vars).into_owned(),
        };
        for (e, c) in other.terms_over(&vars).iter() {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let vars = self.unify(other)?;
        let mut out = MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        let rhs = other.terms_over(&vars);
        for (ea, ca) in self.terms_over(&vars).iter() {
            for (eb, cb) in rhs.iter() {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    /// Formal partial derivative with respect to indeterminate `var`.
    pub fn partial(&self, var: usize) -> Result<Self> {
        if var >= self.vars.len() {
            return Err(Error::Domain(format!(
                "no indeterminate #{var} among {:?}",
                self.vars
            )));
        }
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c.clone() * T::from_i64(e[var] as i64));
        }
        Ok(out)
    }

    /// Evaluates at `point`, one value per indeterminate.
    pub fn eval(&self, point: &[T]) -> Result<T> {
        if !self.vars.is_empty() && point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                found: point.len(),
            });
        }
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Replaces indeterminate `var` by `value`, keeping the indeterminate list.
    pub fn substitute(&self, var: usize, value: &T) -> Result<Self> {
        if var >= self.vars.len() {
            return Err(Error::Domain(format!(
                "no indeterminate #{var} among {:?}",
                self.vars
            )));
        }
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut d = e.clone();
            d[var] = 0;
            out.add_term(d, c.clone() * value.pow(e[var]));
        }
        Ok(out)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl<T: Scalar> PartialEq for MultiPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        match self.unify(other) {
            Ok(vars) => *self.terms_over(&vars) == *other.terms_over(&vars),
            Err(_) => false,
        }
    }
}

impl<T: Scalar> Zero for MultiPoly<T> {
    fn zero() -> Self {
        MultiPoly::constant(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Scalar> One for MultiPoly<T> {
    fn one() -> Self {
        MultiPoly::constant(T::one())
    }
}

impl<T: Scalar> Neg for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn neg(self) -> MultiPoly<T> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<T: Scalar> Neg for MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn neg(self) -> MultiPoly<T> {
        -&self
    }
}

// The operator forms panic on indeterminate mismatch; use the `try_*`
// methods when operands come from different sources.
macro_rules! checked_ops {
    ($($tr:ident :: $m:ident => $try:ident),*) => {$(
        impl<T: Scalar> $tr<&MultiPoly<T>> for &MultiPoly<T> {
            type Output = MultiPoly<T>;
            fn $m(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
                self.$try(rhs).expect("indeterminate sets must agree")
            }
        }
        impl<T: Scalar> $tr for MultiPoly<T> {
            type Output = MultiPoly<T>;
            fn $m(self, rhs: MultiPoly<T>) -> MultiPoly<T> {
                self.$try(&rhs).expect("indeterminate sets must agree")
            }
        }
    )*};
}

checked_ops!(Add::add => try_add, Sub::sub => try_sub, Mul::mul => try_mul);

impl<T: Scalar> Scalar for MultiPoly<T> {
    fn from_rat(r: &Rat) -> Self {
        MultiPoly::constant(T::from_rat(r))
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first, then reverse lexicographic.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (name, &k) in self.vars.iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiPoly")
            .field("vars", &self.vars)
            .field("terms", &self.terms)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    type Q = MultiPoly<Rat>;

    #[test]
    fn power_rule() {
        let g = Q::generators(&["m", "a"]);
        let (m, a) = (&g[0], &g[1]);
        let p = &(&(m * m) * m) * a;
        let d = p.partial(0).unwrap();
        let expected = &(&(m * m) * a).scale(&int(3)) + &Q::zero();
        assert_eq!(d, expected);
        assert_eq!(d.coeff(&[2, 1]), int(3));
        assert!(p.partial(2).is_err());
    }

    #[test]
    fn mismatched_indeterminates_rejected() {
        let x = &Q::generators(&["x"])[0];
        let y = &Q::generators(&["y"])[0];
        assert!(matches!(x.try_add(y), Err(Error::IndeterminateMismatch { .. })));
        assert!(x.try_mul(y).is_err());
        assert_ne!(x, y);
    }

    #[test]
    fn constants_adopt_indeterminates() {
        let g = Q::generators(&["x", "y"]);
        let p = &g[0] + &Q::one();
        assert_eq!(p.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(p.coeff(&[0, 0]), int(1));
        assert_eq!(&p - &g[0], Q::one());
    }

    #[test]
    fn cancellation_removes_terms() {
        let g = Q::generators(&["x", "y"]);
        let p = &(&g[0] * &g[1]) - &(&g[1] * &g[0]);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert_eq!(p.total_degree(), None);
    }

    #[test]
    fn evaluation_and_substitution() {
        let g = Q::generators(&["x", "y"]);
        // x^2 y - 3y + 2
        let p = &(&(&(&g[0] * &g[0]) * &g[1]) - &g[1].scale(&int(3))) + &Q::from_i64(2);
        assert_eq!(p.eval(&[int(2), int(5)]).unwrap(), int(20 - 15 + 2));
        assert!(p.eval(&[int(1)]).is_err());
        let s = p.substitute(1, &int(5)).unwrap();
        assert_eq!(s.eval(&[int(2), int(0)]).unwrap(), int(7));
        assert!(!p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(3));
    }
}

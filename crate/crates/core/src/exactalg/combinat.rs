//! Coefficient generators shared by the invariant formulas.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Poly;
use super::scalar::{big, factorial, int, Rat};
use crate::error::{Error, Result};
use crate::PolyK;

/// Coefficients `[s_0, .., s_n]` of `x (x+1) ... (x+n-1)`, the unsigned
/// Stirling numbers of the first kind. Equivalently
/// `binom(n + x - 1, x - 1) = sum_h s_h x^h / n!`.
pub fn stirling_coeffs(n: usize) -> Result<Vec<Rat>> {
    if n == 0 {
        return Err(Error::Domain("stirling_coeffs needs n >= 1".into()));
    }
    Ok(rising_factorial_coeffs(n)
        .into_iter()
        .map(big)
        .collect())
}

// Integer version, s_h for h in 0..=n.
pub(crate) fn rising_factorial_coeffs(n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(1)];
    for i in 0..n {
        // multiply by (x + i)
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (h, a) in c.iter().enumerate() {
            next[h + 1] += a;
            next[h] += a * BigInt::from(i);
        }
        c = next;
    }
    c
}

/// `binom(n + a*k - 1, a*k - 1)` as a polynomial in `k`.
pub fn binom_poly_in_k(a: u64, n: usize) -> Result<PolyK> {
    if a == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "binom_poly_in_k needs a >= 1 and n >= 1 (got a={a}, n={n})"
        )));
    }
    let s = rising_factorial_coeffs(n);
    let nf = big(factorial(n as u32));
    let a = BigInt::from(a);
    let mut apow = BigInt::from(1);
    let mut coeffs = Vec::with_capacity(n + 1);
    for sh in &s {
        coeffs.push(big(sh * &apow) / &nf);
        apow *= &a;
    }
    Ok(Poly::new(coeffs))
}

/// `[C_1, .., C_n]` with `sum_l C_l k^(n+1-l) = k (k+1) ... (k+n-1) / (n (n+1))`.
pub fn cm_constants(n: usize) -> Result<Vec<Rat>> {
    if n == 0 {
        return Err(Error::Domain("cm_constants needs n >= 1".into()));
    }
    let s = rising_factorial_coeffs(n);
    let norm = int((n * (n + 1)) as i64);
    Ok((1..=n).map(|l| big(s[n + 1 - l].clone()) / &norm).collect())
}

//! Blowups of a polarized manifold `(M, L)` at points fixed by a `C^*`-action.
//!
//! The blown-up manifold carries `L~ = beta^* L^m (x) O(-sum alpha_j E_j)`.
//! The base is assumed asymptotically Chow polystable, so its linearization
//! can be normalized to `w(M, L^k) = 0`; then only the exceptional data
//! contribute to the weight. At each blown-up point `p_j` the inputs are the
//! moment-map value `phi(p_j)` for the normalized linearization and the total
//! isotropy weight `lambda(p_j)` on `T_{p_j} M`.
//!
//! With `s_h` the coefficients of `x (x+1) .. (x+n-1)`:
//!
//! ```text
//! chi~(k) = chi(M, L^{mk}) - sum_j binom(n + alpha_j k - 1, alpha_j k - 1)
//! w~(k)   = sum_j [ binom(n + alpha_j k - 1, alpha_j k - 1) mk phi_j
//!                 + binom(n + alpha_j k - 1, alpha_j k - 2) lambda_j ]
//! ```
//!
//! and the invariants reduce to the polynomials `f_l`, `g_l` of [`d_f_g`].

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::chowcore::{self, HilbertData, WeightData};
use crate::error::{Error, Result};
use crate::exactalg::combinat::rising_factorial_coeffs;
use crate::exactalg::{big, binomial, factorial, int, Poly, RatFn, Scalar};
use crate::p2lab::{DiagAction, PlanePoint};
use crate::{OracleValue, PolyK, Rat, RatFnK};

/// Largest `m k` the plane oracle will enumerate.
pub const MAX_P2_DEGREE: u64 = 10_000;

/// Hilbert data of the base `(M, L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseSummary {
    n: usize,
    a: Vec<Rat>,
    polystable_certified: bool,
}

impl BaseSummary {
    pub fn new(n: usize, a: Vec<Rat>, polystable_certified: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("base dimension must be >= 2, got {n}")));
        }
        if a.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: a.len(),
            });
        }
        if !a[0].is_positive() {
            return Err(Error::Precondition(format!(
                "leading Hilbert coefficient must be positive, got {}",
                a[0]
            )));
        }
        Ok(BaseSummary {
            n,
            a,
            polystable_certified,
        })
    }

    /// `(P^2, O(1))`: `chi = (k+1)(k+2)/2`.
    pub fn projective_plane() -> Self {
        BaseSummary::new(2, vec![Rat::new(1.into(), 2.into()), Rat::new(3.into(), 2.into()), int(1)], true)
            .expect("valid base")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[Rat] {
        &self.a
    }

    pub fn polystable_certified(&self) -> bool {
        self.polystable_certified
    }

    /// `deg(M, L) = n! a_0`.
    pub fn degree(&self) -> Rat {
        big(factorial(self.n as u32)) * &self.a[0]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlownPoint {
    pub alpha: u64,
    pub phi: Rat,
    pub lambda: i64,
}

impl BlownPoint {
    pub fn new(alpha: u64, phi: Rat, lambda: i64) -> Self {
        BlownPoint { alpha, phi, lambda }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupSpec {
    base: BaseSummary,
    points: Vec<BlownPoint>,
    m: u64,
}

impl BlowupSpec {
    /// Fully validated spec: certified polystable base and `D > 0`.
    pub fn new(base: BaseSummary, points: Vec<BlownPoint>, m: u64) -> Result<Self> {
        if !base.polystable_certified {
            return Err(Error::Precondition(
                "base is not certified asymptotically Chow polystable".into(),
            ));
        }
        let spec = Self::for_identities(base, points, m)?;
        spec.require_positive_d()?;
        Ok(spec)
    }

    /// Structural checks only. Suitable for the `chi~`/`w~` identities, which
    /// hold without `D > 0` or the polystability certificate; the invariant
    /// computations re-check both.
    pub fn for_identities(base: BaseSummary, points: Vec<BlownPoint>, m: u64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("at least one blown-up point is required".into()));
        }
        if m == 0 {
            return Err(Error::Precondition("m must be >= 1".into()));
        }
        if let Some(p) = points.iter().find(|p| p.alpha == 0) {
            return Err(Error::Precondition(format!("alpha must be >= 1: {p:?}")));
        }
        Ok(BlowupSpec { base, points, m })
    }

    pub fn base(&self) -> &BaseSummary {
        &self.base
    }

    pub fn points(&self) -> &[BlownPoint] {
        &self.points
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    /// `D = deg(M, L) - sum (alpha_j/m)^n`.
    pub fn d(&self) -> Rat {
        let n = self.n() as u32;
        let m = int(self.m as i64);
        self.points.iter().fold(self.base.degree(), |acc, p| {
            acc - Scalar::pow(&(big(p.alpha) / &m), n)
        })
    }

    /// `deg(M~, L~) = m^n D`.
    pub fn degree(&self) -> Rat {
        Scalar::pow(&int(self.m as i64), self.n() as u32) * self.d()
    }

    fn require_positive_d(&self) -> Result<Rat> {
        let d = self.d();
        if !d.is_positive() {
            return Err(Error::Degenerate(format!("D = {d} must be positive")));
        }
        Ok(d)
    }

    fn require_invariant_inputs(&self) -> Result<Rat> {
        if !self.base.polystable_certified {
            return Err(Error::Precondition(
                "base is not certified asymptotically Chow polystable".into(),
            ));
        }
        self.require_positive_d()
    }

    fn alphas<T: Scalar>(&self) -> Vec<T> {
        self.points.iter().map(|p| T::from_rat(&big(p.alpha))).collect()
    }

    fn phis(&self) -> Vec<Rat> {
        self.points.iter().map(|p| p.phi.clone()).collect()
    }

    fn lambdas(&self) -> Vec<Rat> {
        self.points.iter().map(|p| int(p.lambda)).collect()
    }
}

// s_h for h in 0..=n, extended by zero outside.
fn stirling_table(n: usize) -> impl Fn(isize) -> Rat {
    let s: Vec<Rat> = rising_factorial_coeffs(n).into_iter().map(big).collect();
    move |h: isize| {
        if h < 0 {
            Rat::zero()
        } else {
            s.get(h as usize).cloned().unwrap_or_else(Rat::zero)
        }
    }
}

/// `[a~_0, .., a~_n]` with `a~_l = a_l m^(n-l) - (s_{n-l}/n!) sum alpha_j^(n-l)`.
///
/// Generic in the ring carrying `m` and the `alpha_j`, so the same code
/// produces numbers and symbolic polynomials.
pub fn tilde_hilbert_coeffs<T: Scalar>(base_a: &[Rat], m: &T, alphas: &[T]) -> Vec<T> {
    let n = base_a.len() - 1;
    let s = stirling_table(n);
    let nf = big(factorial(n as u32));
    (0..=n)
        .map(|l| {
            let e = (n - l) as u32;
            let power_sum = alphas
                .iter()
                .fold(T::zero(), |acc, a| acc + a.pow(e));
            T::from_rat(&base_a[l]) * m.pow(e) - T::from_rat(&(s(e as isize) / &nf)) * power_sum
        })
        .collect()
}

/// `[b~_0, .., b~_{n+1}]` with
/// `b~_l = (s_{n-l}/n!) m sum alpha_j^(n-l) phi_j
///       + ((s_{n-l} - s_{n+1-l})/(n+1)!) sum alpha_j^(n+1-l) lambda_j`.
pub fn tilde_weight_coeffs<T: Scalar>(
    n: usize,
    m: &T,
    alphas: &[T],
    phis: &[Rat],
    lambdas: &[Rat],
) -> Vec<T> {
    let s = stirling_table(n);
    let nf = big(factorial(n as u32));
    let n1f = big(factorial(n as u32 + 1));
    (0..=n + 1)
        .map(|l| {
            let h = n as isize - l as isize;
            let mut phi_sum = T::zero();
            let mut lambda_sum = T::zero();
            for ((a, phi), lam) in alphas.iter().zip(phis).zip(lambdas) {
                if h >= 0 {
                    phi_sum = phi_sum + a.pow(h as u32) * T::from_rat(phi);
                }
                lambda_sum = lambda_sum + a.pow((h + 1) as u32) * T::from_rat(lam);
            }
            let c_phi = T::from_rat(&(s(h) / &nf));
            let c_lambda = T::from_rat(&((s(h) - s(h + 1)) / &n1f));
            c_phi * m.clone() * phi_sum + c_lambda * lambda_sum
        })
        .collect()
}

/// `chi(M~, L~^k)`, degree `n`.
pub fn chi_tilde(spec: &BlowupSpec) -> PolyK {
    let n = spec.n();
    let a = tilde_hilbert_coeffs(&spec.base.a, &int(spec.m as i64), &spec.alphas::<Rat>());
    Poly::new((0..=n).map(|i| a[n - i].clone()).collect())
}

/// `w(M~, L~^k)` under the normalized base linearization; zero constant term.
pub fn w_tilde(spec: &BlowupSpec) -> PolyK {
    let n = spec.n();
    let b = tilde_weight_coeffs(n, &int(spec.m as i64), &spec.alphas::<Rat>(), &spec.phis(), &spec.lambdas());
    Poly::new((0..=n + 1).map(|i| b[n + 1 - i].clone()).collect())
}

/// Weight of the skyscraper quotient `L^{mk} / I_Z^k L^{mk}`, by direct
/// binomial arithmetic:
/// `-sum_j [binom(n+a_j k-1, a_j k-1) mk phi_j + binom(n+a_j k-1, a_j k-2) lambda_j]`.
pub fn quotient_weight(spec: &BlowupSpec, k: u64) -> Rat {
    let n = spec.n() as i64;
    let mk = int((spec.m * k) as i64);
    spec.points.iter().fold(Rat::zero(), |acc, p| {
        let x = (p.alpha * k) as i64;
        let sections = big(binomial(n + x - 1, x - 1));
        let shifted = big(binomial(n + x - 1, x - 2));
        acc - (sections * &mk * &p.phi + shifted * int(p.lambda))
    })
}

pub fn hilbert_data(spec: &BlowupSpec) -> Result<HilbertData> {
    HilbertData::from_poly(spec.n(), &chi_tilde(spec))
}

pub fn weight_data(spec: &BlowupSpec) -> Result<WeightData> {
    WeightData::from_poly(spec.n(), &w_tilde(spec))
}

/// `D` and the polynomials (in `x`)
///
/// ```text
/// f_l(x) = D s_{n-l} x^(n-l) - (n! a_l - s_{n-l} sum (alpha_i/m)^(n-l)) x^n
/// g_l(x) = (D s_{n+1-l} x^(n+1-l) - x f_l(x)) / (n+1)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct DFG {
    pub d: Rat,
    pub f: PolyK,
    pub g: PolyK,
}

pub fn d_f_g(spec: &BlowupSpec, l: usize) -> Result<DFG> {
    let n = spec.n();
    if l == 0 || l > n {
        return Err(Error::Domain(format!("l must be in 1..={n}, got {l}")));
    }
    let d = spec.require_positive_d()?;
    let s = stirling_table(n);
    let m = int(spec.m as i64);
    let e = (n - l) as u32;
    let ratio_sum = spec
        .points
        .iter()
        .fold(Rat::zero(), |acc, p| acc + Scalar::pow(&(big(p.alpha) / &m), e));
    let s_nl = s(e as isize);
    let top = big(factorial(n as u32)) * &spec.base.a[l] - &s_nl * ratio_sum;
    let f = &Poly::monomial(&d * &s_nl, n - l) - &Poly::monomial(top, n);
    let x = PolyK::x();
    let g = (&Poly::monomial(&d * s(e as isize + 1), n + 1 - l) - &(&x * &f))
        .scale(&int(n as i64 + 1).recip());
    Ok(DFG { d, f, g })
}

/// `F_l = (1/(D^2 m^(l-1))) sum_j [f_l(alpha_j/m) phi_j - g_l(alpha_j/m) lambda_j]`,
/// compared exactly against the generic route on `(chi~, w~)` before
/// returning.
pub fn futaki_blowup(spec: &BlowupSpec) -> Result<Vec<Rat>> {
    let d = spec.require_invariant_inputs()?;
    let m = int(spec.m as i64);
    let mut out = Vec::with_capacity(spec.n());
    for l in 1..=spec.n() {
        let fg = d_f_g(spec, l)?;
        let sum = spec.points.iter().fold(Rat::zero(), |acc, p| {
            let x = big(p.alpha) / &m;
            acc + fg.f.eval(&x) * &p.phi - fg.g.eval(&x) * int(p.lambda)
        });
        out.push(sum / (&d * &d * Scalar::pow(&m, l as u32 - 1)));
    }
    let generic = chowcore::futaki_invariants(&hilbert_data(spec)?, &weight_data(spec)?)?;
    if generic != out {
        return Err(Error::InternalMismatch(format!(
            "blowup F_l {out:?} != generic F_l {generic:?}"
        )));
    }
    Ok(out)
}

/// `Chow(M~, L~^k) = [(a_0 m^n - sum alpha_j^n/n!) / chi~(k)] sum F_l k^(n+1-l)`,
/// checked against the generic Chow weight of `(chi~, w~)`.
pub fn chow_blowup(spec: &BlowupSpec) -> Result<RatFnK> {
    let futaki = futaki_blowup(spec)?;
    let n = spec.n();
    let a0 = tilde_hilbert_coeffs(&spec.base.a, &int(spec.m as i64), &spec.alphas::<Rat>())
        .swap_remove(0);
    let mut coeffs = vec![Rat::zero(); n + 1];
    for (i, f) in futaki.iter().enumerate() {
        coeffs[n - i] = &a0 * f;
    }
    let chow = RatFn::new(Poly::new(coeffs), chi_tilde(spec))?;
    let generic = chowcore::chow_weight_fn(&hilbert_data(spec)?, &weight_data(spec)?)?;
    if generic != chow {
        return Err(Error::InternalMismatch(
            "blowup Chow weight disagrees with the generic route".into(),
        ));
    }
    Ok(chow)
}

/// Leading adiabatic term of `F_1` and the zero-cycle weight it is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct Adiabatic {
    /// `(n(n-1)/(2 deg(M, L))) w_CW m^(1-n)`.
    pub leading: Rat,
    /// `w_CW(sum alpha_j^(n-1) p_j, L) = sum alpha_j^(n-1) phi_j` (the
    /// normalized base linearization has `b_0 = 0`).
    pub w_cw: Rat,
}

pub fn adiabatic(spec: &BlowupSpec) -> Result<Adiabatic> {
    spec.require_invariant_inputs()?;
    let n = spec.n() as u32;
    let w_cw = spec.points.iter().fold(Rat::zero(), |acc, p| {
        acc + Scalar::pow(&big(p.alpha), n - 1) * &p.phi
    });
    let leading = int((n * (n - 1)) as i64) / (int(2) * spec.base.degree()) * &w_cw
        / Scalar::pow(&int(spec.m as i64), n - 1);
    Ok(Adiabatic { leading, w_cw })
}

/// `m^n (F_1 - leading)` for each `m`, with base and points held fixed.
/// Bounded as `m` grows, since the remainder is `O(m^-n)`.
pub fn adiabatic_remainders(
    base: &BaseSummary,
    points: &[BlownPoint],
    ms: impl IntoIterator<Item = u64>,
) -> Result<Vec<Rat>> {
    ms.into_iter()
        .map(|m| {
            let spec = BlowupSpec::new(base.clone(), points.to_vec(), m)?;
            let f1 = futaki_blowup(&spec)?.swap_remove(0);
            let lead = adiabatic(&spec)?.leading;
            Ok((f1 - lead) * Scalar::pow(&int(m as i64), spec.n() as u32))
        })
        .collect()
}

/// Monomial count on the projective plane blown up at coordinate points.
///
/// Sections of `L~^k` are the degree-`mk` monomials `x^a` vanishing to order
/// `mk - a_i >= alpha k` at each chosen coordinate point `e_i`; a monomial
/// has weight `-<a, w>` under `diag(t^w0, t^w1, t^w2)`. Exact for every
/// `k >= 1` once `m >= sum alpha_j`.
pub fn oracle_p2(
    action: &DiagAction,
    points: &[(PlanePoint, u64)],
    m: u64,
    k: u64,
) -> Result<OracleValue> {
    if k == 0 || m == 0 {
        return Err(Error::Precondition("oracle needs m, k >= 1".into()));
    }
    let mut orders = [0u64; 3];
    let mut alpha_sum = 0;
    for (p, alpha) in points {
        let i = p.coordinate_index().ok_or_else(|| {
            Error::UnsupportedPoint(format!("{p:?} is not a coordinate point"))
        })?;
        if orders[i] != 0 {
            return Err(Error::Precondition(format!("coordinate point e_{i} listed twice")));
        }
        if *alpha == 0 {
            return Err(Error::Precondition("alpha must be >= 1".into()));
        }
        orders[i] = alpha * k;
        alpha_sum += alpha;
    }
    if m < alpha_sum {
        return Err(Error::Precondition(format!(
            "oracle is exact only for m >= sum alpha (m = {m}, sum = {alpha_sum})"
        )));
    }
    let degree = m.checked_mul(k).filter(|&d| d <= MAX_P2_DEGREE).ok_or_else(|| {
        Error::Resource(format!("m k = {m} * {k} exceeds {MAX_P2_DEGREE}"))
    })?;
    let d = degree as i128;
    let w = action.weights();
    let mut acc = OracleValue { dim: 0, weight: 0 };
    for a0 in 0..=d {
        for a1 in 0..=d - a0 {
            let a = [a0, a1, d - a0 - a1];
            if (0..3).any(|i| orders[i] > 0 && d - a[i] < orders[i] as i128) {
                continue;
            }
            acc.dim += 1;
            acc.weight -= a[0] * w[0] as i128 + a[1] * w[1] as i128 + a[2] * w[2] as i128;
        }
    }
    Ok(acc)
}

/// Whether `(chi~(k), w~(k))` equals an oracle value.
pub fn matches_value(chi: &PolyK, w: &PolyK, k: u64, o: &OracleValue) -> bool {
    let kk = BigInt::from(k);
    chi.eval_integer(&kk) == big(o.dim) && w.eval_integer(&kk) == big(o.weight)
}

//! Blowups of the projective plane at torus-fixed points.
//!
//! Diagonal actions `diag(t^w0, t^w1, t^w2)` with `w0 + w1 + w2 = 0` act on
//! `(P^2, O(1))` with vanishing weight polynomial, so the blowup formulas
//! apply with the data of [`fixed_point_data`]. On top of that this module
//! reconstructs the invariants symbolically in `(m, alpha_1, ..)`, checks
//! ampleness of `L~` on the two standard configurations, and searches for
//! integral classes with `F_1 = 0` and `F_2 != 0` along lines through the
//! triple point `(1, 1, 0, 0, 0)` of `psi_1 = 0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::blowup::{self, BaseSummary, BlownPoint, BlowupSpec};
use crate::chowcore::futaki_numerators;
use crate::error::{Error, Result};
use crate::exactalg::{big, int};
use crate::{MPoly, Rat};

/// Names of the indeterminates of the symbolic invariants.
pub fn symbol_names(points: usize) -> Vec<String> {
    std::iter::once("m".to_string())
        .chain((1..=points).map(|j| format!("a{j}")))
        .collect()
}

/// The triple point of `psi_1 = 0` in `(m, alpha_1, .., alpha_4)`.
pub const TRIPLE_POINT: [i64; 5] = [1, 1, 0, 0, 0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagAction {
    w: [i64; 3],
}

impl DiagAction {
    pub fn new(w: [i64; 3]) -> Result<Self> {
        if w.iter().sum::<i64>() != 0 {
            return Err(Error::Precondition(format!("weights {w:?} must sum to zero")));
        }
        Ok(DiagAction { w })
    }

    pub fn weights(&self) -> [i64; 3] {
        self.w
    }

    /// `diag(t^2, t^-1, t^-1)`, the only action on the four-point blowup.
    pub fn four_point() -> Self {
        DiagAction { w: [2, -1, -1] }
    }

    /// `diag(t, t^-1, 1)` and `diag(1, t, t^-1)`.
    pub fn three_point_generators() -> [Self; 2] {
        [DiagAction { w: [1, -1, 0] }, DiagAction { w: [0, 1, -1] }]
    }
}

/// A point of the plane, remembered only through its coordinate block
/// (the indices where its homogeneous coordinates are nonzero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    block: [bool; 3],
}

impl PlanePoint {
    pub fn coordinate(i: usize) -> Self {
        assert!(i < 3, "coordinate index out of range");
        let mut block = [false; 3];
        block[i] = true;
        PlanePoint { block }
    }

    pub fn on_block(indices: &[usize]) -> Result<Self> {
        let mut block = [false; 3];
        for &i in indices {
            if i >= 3 {
                return Err(Error::Domain(format!("coordinate index {i} out of range")));
            }
            block[i] = true;
        }
        if !block.iter().any(|&b| b) {
            return Err(Error::Domain("a point needs a nonzero coordinate".into()));
        }
        Ok(PlanePoint { block })
    }

    pub fn from_coords(x: [i64; 3]) -> Result<Self> {
        let idx: Vec<usize> = (0..3).filter(|&i| x[i] != 0).collect();
        Self::on_block(&idx)
    }

    pub fn block(&self) -> [bool; 3] {
        self.block
    }

    pub fn coordinate_index(&self) -> Option<usize> {
        let mut it = (0..3).filter(|&i| self.block[i]);
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }
}

/// `(phi, lambda)` at a fixed point: `phi` is the common weight `w_b` of
/// the block, `lambda = sum_{i outside the block} (w_i - w_b)`.
pub fn fixed_point_data(action: &DiagAction, point: &PlanePoint) -> Result<(Rat, i64)> {
    let mut inside = (0..3).filter(|&i| point.block[i]).map(|i| action.w[i]);
    let wb = inside.next().expect("blocks are nonempty");
    if inside.any(|w| w != wb) {
        return Err(Error::NotFixed(format!("{point:?} is not fixed by {:?}", action.w)));
    }
    let lambda = (0..3).filter(|&i| !point.block[i]).map(|i| action.w[i] - wb).sum();
    Ok((int(wb), lambda))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointConfig {
    /// `(1:0:0)`, `(0:1:0)` and two further points on `{x_0 = 0}`.
    FourPointsThreeAligned,
    /// The three coordinate points.
    ThreeGeneral,
}

impl PointConfig {
    pub fn points(&self) -> Vec<PlanePoint> {
        match self {
            PointConfig::FourPointsThreeAligned => vec![
                PlanePoint::coordinate(0),
                PlanePoint::coordinate(1),
                PlanePoint { block: [false, true, true] },
                PlanePoint { block: [false, true, true] },
            ],
            PointConfig::ThreeGeneral => (0..3).map(PlanePoint::coordinate).collect(),
        }
    }
}

/// `(psi_1, psi_2)` over `m, a1, ..`: `F_l = psi_l / deg(M~, L~)^2`.
///
/// Runs the blowup coefficient formulas over the polynomial ring, so the
/// result is `(n!)^2 (a~_0 b~_l - b~_0 a~_l)` without any division.
pub fn psi_reconstruct(config: PointConfig, action: &DiagAction) -> Result<(MPoly, MPoly)> {
    let points = config.points();
    let data = points
        .iter()
        .map(|p| fixed_point_data(action, p))
        .collect::<Result<Vec<_>>>()?;
    let gens = MPoly::generators(&symbol_names(points.len()));
    let (m, alphas) = gens.split_first().expect("m is present");
    let base = BaseSummary::projective_plane();
    let phis: Vec<Rat> = data.iter().map(|(phi, _)| phi.clone()).collect();
    let lambdas: Vec<Rat> = data.iter().map(|(_, l)| int(*l)).collect();
    let a = blowup::tilde_hilbert_coeffs(base.a(), m, alphas);
    let b = blowup::tilde_weight_coeffs(2, m, alphas, &phis, &lambdas);
    if !b[3].is_zero() {
        return Err(Error::InternalMismatch("constant weight coefficient is not zero".into()));
    }
    let mut psi = futaki_numerators(&a, &b).into_iter().map(|x| x.scale(&int(4)));
    let psi1 = psi.next().expect("n = 2");
    let psi2 = psi.next().expect("n = 2");
    Ok((psi1, psi2))
}

/// Convenience wrapper for the four-point configuration.
pub fn psi_four_points() -> (MPoly, MPoly) {
    psi_reconstruct(PointConfig::FourPointsThreeAligned, &DiagAction::four_point())
        .expect("the four-point configuration is fixed by its action")
}

/// Order of vanishing of `p` at `point`; `None` for the zero polynomial.
pub fn vanishing_order(p: &MPoly, point: &[Rat]) -> Result<Option<u32>> {
    if p.is_zero() {
        return Ok(None);
    }
    let nvars = p.vars().len();
    let mut level = vec![p.clone()];
    for order in 0.. {
        for q in &level {
            if !q.eval(point)?.is_zero() {
                return Ok(Some(order));
            }
        }
        let mut next = Vec::with_capacity(level.len() * nvars);
        let mut seen = BTreeSet::new();
        for q in &level {
            for v in 0..nvars {
                let d = q.partial(v)?;
                if !d.is_zero() && seen.insert(format!("{d}")) {
                    next.push(d);
                }
            }
        }
        level = next;
    }
    unreachable!("a nonzero polynomial has finite vanishing order")
}

/// True iff `psi1` vanishes to order exactly three at `(1, 1, 0, 0, 0)`.
pub fn triple_point_check(psi1: &MPoly) -> bool {
    let point: Vec<Rat> = TRIPLE_POINT.iter().map(|&x| int(x)).collect();
    if psi1.vars().len() != point.len() {
        return false;
    }
    matches!(vanishing_order(psi1, &point), Ok(Some(3)))
}

/// Nakai-type ampleness of `L~ = L^m - sum alpha_j E_j`.
///
/// Three general points: `m > 0`, `alpha_i > 0` and
/// `m + alpha_j > alpha_1 + alpha_2 + alpha_3`. Four points with the last
/// three aligned: `alpha_j > 0`, positivity on the line through the aligned
/// points and on every line through two of the points, and `L~^2 > 0`.
pub fn ample_check(config: PointConfig, m: i64, alphas: &[i64]) -> bool {
    let m = m as i128;
    let a: Vec<i128> = alphas.iter().map(|&x| x as i128).collect();
    if m <= 0 || a.iter().any(|&x| x <= 0) {
        return false;
    }
    match config {
        PointConfig::ThreeGeneral => {
            if a.len() != 3 {
                return false;
            }
            let total: i128 = a.iter().sum();
            a.iter().all(|&aj| m + aj > total)
        }
        PointConfig::FourPointsThreeAligned => {
            if a.len() != 4 {
                return false;
            }
            let pairs = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)));
            m > a[1] + a[2] + a[3]
                && pairs.clone().all(|(i, j)| m > a[i] + a[j])
                && m * m > a.iter().map(|x| x * x).sum::<i128>()
        }
    }
}

fn plane_spec(
    config: PointConfig,
    action: &DiagAction,
    m: u64,
    alphas: &[u64],
) -> Result<BlowupSpec> {
    let points = config
        .points()
        .iter()
        .zip(alphas)
        .map(|(p, &alpha)| {
            let (phi, lambda) = fixed_point_data(action, p)?;
            Ok(BlownPoint::new(alpha, phi, lambda))
        })
        .collect::<Result<Vec<_>>>()?;
    BlowupSpec::new(BaseSummary::projective_plane(), points, m)
}

/// `[F_1, F_2]` of the blowup in `config` under `action`, through the
/// cross-checked blowup pipeline.
pub fn plane_futaki(
    config: PointConfig,
    action: &DiagAction,
    m: u64,
    alphas: &[u64],
) -> Result<Vec<Rat>> {
    let expected = config.points().len();
    if alphas.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: alphas.len(),
        });
    }
    blowup::futaki_blowup(&plane_spec(config, action, m, alphas)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LociFlags {
    pub f1_zero: bool,
    pub f2_zero: bool,
}

/// Vanishing of `F_1` and of `F_2` for both generators of the torus acting
/// on the plane blown up at the three coordinate points.
pub fn three_point_loci(m: u64, alphas: [u64; 3]) -> Result<LociFlags> {
    let signed: Vec<i64> = alphas.iter().map(|&a| a as i64).collect();
    if !ample_check(PointConfig::ThreeGeneral, m as i64, &signed) {
        return Err(Error::Precondition(format!(
            "L~ is not ample for m = {m}, alphas = {alphas:?}"
        )));
    }
    let mut flags = LociFlags {
        f1_zero: true,
        f2_zero: true,
    };
    for action in DiagAction::three_point_generators() {
        let f = plane_futaki(PointConfig::ThreeGeneral, &action, m, &alphas)?;
        flags.f1_zero &= f[0].is_zero();
        flags.f2_zero &= f[1].is_zero();
    }
    Ok(flags)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub m: u64,
    pub alphas: Vec<u64>,
    pub psi1_value: Rat,
    pub psi2_value: Rat,
    pub ample: bool,
    pub verified: bool,
}

/// Recomputes everything about `(m, alphas)` on the four-point blowup from
/// scratch: `psi_l`, ampleness, and `F_l` through the blowup pipeline.
/// `verified` holds iff `psi_1 = 0`, `psi_2 != 0`, `L~` is ample and
/// `F_1 = 0`, `F_2 != 0`.
pub fn verify_candidate(m: u64, alphas: &[u64]) -> Result<Candidate> {
    let (psi1, psi2) = psi_four_points();
    let point: Vec<Rat> = std::iter::once(m)
        .chain(alphas.iter().copied())
        .map(big)
        .collect();
    let psi1_value = psi1.eval(&point)?;
    let psi2_value = psi2.eval(&point)?;
    let signed: Vec<i64> = alphas.iter().map(|&a| a as i64).collect();
    let ample = ample_check(PointConfig::FourPointsThreeAligned, m as i64, &signed);
    let mut verified = ample && psi1_value.is_zero() && !psi2_value.is_zero();
    if verified {
        let f = plane_futaki(PointConfig::FourPointsThreeAligned, &DiagAction::four_point(), m, alphas)?;
        verified = f[0].is_zero() && !f[1].is_zero();
    }
    Ok(Candidate {
        m,
        alphas: alphas.to_vec(),
        psi1_value,
        psi2_value,
        ample,
        verified,
    })
}

// psi_1 as integer terms, for fast evaluation at small integer points.
struct IntPoly {
    terms: Vec<(Vec<u32>, i128)>,
}

impl IntPoly {
    fn new(p: &MPoly) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                assert!(c.is_integer(), "integer coefficients expected");
                let c = i128::try_from(c.to_integer()).expect("small coefficients");
                (e.to_vec(), c)
            })
            .collect();
        IntPoly { terms }
    }

    fn eval(&self, x: &[i128]) -> i128 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(*c, |acc, (&k, &xi)| acc * xi.pow(k))
            })
            .sum()
    }
}

// The residual intersection of the line p0 + t v with psi_1 = 0, as a
// primitive integer point with m > 0 (m < 0 is flipped; m = 0 is kept so the
// caller can reject it).
fn residual_point(psi1: &IntPoly, v: &[i128; 5]) -> Option<[BigInt; 5]> {
    let p0: [i128; 5] = TRIPLE_POINT.map(|x| x as i128);
    let c4 = psi1.eval(v);
    if c4 == 0 {
        return None;
    }
    let shifted: Vec<i128> = p0.iter().zip(v).map(|(a, b)| a + b).collect();
    let c3 = psi1.eval(&shifted) - c4;
    // p0 + (-c3/c4) v, scaled by c4
    let mut x: [BigInt; 5] =
        std::array::from_fn(|i| BigInt::from(c4) * p0[i] - BigInt::from(c3) * v[i]);
    let g = x.iter().fold(BigInt::zero(), |g, xi| g.gcd(xi));
    if g.is_zero() {
        return None;
    }
    for xi in x.iter_mut() {
        *xi = &*xi / &g;
    }
    if x[0].is_negative() {
        for xi in x.iter_mut() {
            *xi = -&*xi;
        }
    }
    Some(x)
}

fn as_u64(x: &BigInt) -> Option<u64> {
    u64::try_from(x).ok().filter(|&v| v > 0)
}

/// Integral classes on the four-point blowup with `F_1 = 0` and `F_2 != 0`.
///
/// Every integer direction `v` in `[-grid_bound, grid_bound]^5` spans a line
/// through the triple point; `psi_1` restricted to it is `c_3 t^3 + c_4 t^4`,
/// whose residual root `t = -c_3/c_4` gives a rational point of
/// `psi_1 = 0`. Primitive integer representatives with positive entries,
/// ample `L~` and `psi_2 != 0` are kept, each with multiples `1..=scale_bound`.
/// The result is ordered by the first direction (lexicographic) producing
/// each primitive point, then by scale.
pub fn search_unstable(grid_bound: u32, scale_bound: u32) -> Result<Vec<Candidate>> {
    if grid_bound == 0 || scale_bound == 0 {
        return Err(Error::Precondition("search bounds must be >= 1".into()));
    }
    let (psi1, _) = psi_four_points();
    let psi1 = IntPoly::new(&psi1);
    let n = grid_bound as i128;
    let side = 2 * n + 1;
    let total = side.pow(5);
    let hits: Vec<[BigInt; 5]> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut v = [0i128; 5];
            let mut r = idx;
            for slot in v.iter_mut().rev() {
                *slot = r % side - n;
                r /= side;
            }
            let x = residual_point(&psi1, &v)?;
            let m = as_u64(&x[0])?;
            let alphas: Vec<u64> = x[1..].iter().map(as_u64).collect::<Option<_>>()?;
            let signed: Vec<i64> = alphas.iter().map(|&a| a as i64).collect();
            ample_check(PointConfig::FourPointsThreeAligned, m as i64, &signed).then_some(x)
        })
        .collect();

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in hits {
        if !seen.insert(x.clone()) {
            continue;
        }
        let m = as_u64(&x[0]).expect("filtered");
        let alphas: Vec<u64> = x[1..].iter().map(|a| as_u64(a).expect("filtered")).collect();
        let primitive = verify_candidate(m, &alphas)?;
        if primitive.psi2_value.is_zero() {
            continue;
        }
        if !primitive.verified {
            return Err(Error::InternalMismatch(format!(
                "candidate (m, alphas) = ({m}, {alphas:?}) failed recomputation"
            )));
        }
        for s in 1..=scale_bound as u64 {
            let scaled: Vec<u64> = alphas.iter().map(|a| a * s).collect();
            out.push(verify_candidate(m * s, &scaled)?);
        }
    }
    Ok(out)
}

/// The right-hand sides of the factorized systems for three general points,
/// as integers: `[(F_1 factor, F_2 factor)]` for each generator, each of
/// which vanishes exactly when the corresponding `F_l` does.
pub fn three_point_factors(m: i64, a: [i64; 3]) -> [(i128, i128); 2] {
    let (m, a1, a2, a3) = (m as i128, a[0] as i128, a[1] as i128, a[2] as i128);
    let common = m - a1 - a2 - a3;
    [
        (
            (a1 - a2) * common * (m * m - 2 * a1 * m - 2 * a2 * m + a3 * m + a1 * a1 + a1 * a2 + a2 * a2),
            (a1 - a2) * common * (m - a1 - a2 + a3),
        ),
        (
            (a2 - a3) * common * (m * m - 2 * a3 * m - 2 * a2 * m + a1 * m + a3 * a3 + a3 * a2 + a2 * a2),
            (a2 - a3) * common * (m + a1 - a2 - a3),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Scalar};

    fn vars() -> Vec<MPoly> {
        MPoly::generators(&symbol_names(4))
    }

    fn c(v: i64) -> MPoly {
        MPoly::constant(int(v))
    }

    fn printed_psi() -> (MPoly, MPoly) {
        let g = vars();
        let (m, a) = (&g[0], &g[1..]);
        let p = |e: u32| {
            &(&c(2) * &Scalar::pow(&a[0], e))
                - &(&(&Scalar::pow(&a[1], e) + &Scalar::pow(&a[2], e)) + &Scalar::pow(&a[3], e))
        };
        let asum = &(&(&a[0] + &a[1]) + &a[2]) + &a[3];
        let sq_sum = &(&(&Scalar::pow(&a[0], 2) + &Scalar::pow(&a[1], 2)) + &Scalar::pow(&a[2], 2))
            + &Scalar::pow(&a[3], 2);
        let psi1 = &(&(&p(1) * &(&Scalar::pow(m, 3) - &(&c(3) * &(&Scalar::pow(&a[0], 2) * m))))
            - &(&p(2) * &(&(&c(3) * &Scalar::pow(m, 2)) - &(&c(3) * &(&a[0] * m)))))
            + &(&p(3) * &(&(&c(3) * m) - &asum));
        let psi2 = &(&(&p(1) * &(&Scalar::pow(m, 2) - &sq_sum)) - &(&c(2) * &(&p(2) * m)))
            + &(&c(2) * &p(3));
        (psi1, psi2)
    }

    #[test]
    fn fixed_point_examples() {
        let a = DiagAction::four_point();
        assert_eq!(fixed_point_data(&a, &PlanePoint::coordinate(0)).unwrap(), (int(2), -6));
        let line = PlanePoint::from_coords([0, 3, -5]).unwrap();
        assert_eq!(fixed_point_data(&a, &line).unwrap(), (int(-1), 3));
        let trivial = DiagAction::new([0, 0, 0]).unwrap();
        let generic = PlanePoint::from_coords([1, 2, 3]).unwrap();
        assert_eq!(fixed_point_data(&trivial, &generic).unwrap(), (int(0), 0));
        let b = DiagAction::new([1, -1, 0]).unwrap();
        assert!(matches!(fixed_point_data(&b, &line), Err(Error::NotFixed(_))));
        assert!(DiagAction::new([1, 1, 0]).is_err());
    }

    #[test]
    fn sign_convention_is_the_unique_match() {
        // Of the four sign choices for (phi, lambda) only the adopted one
        // reproduces the printed quartic.
        let (printed, _) = printed_psi();
        let action = DiagAction::four_point();
        let config = PointConfig::FourPointsThreeAligned;
        let mut matches = Vec::new();
        for (sp, sl) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let data: Vec<(Rat, i64)> = config
                .points()
                .iter()
                .map(|p| {
                    let (phi, l) = fixed_point_data(&action, p).unwrap();
                    (phi * int(sp), l * sl)
                })
                .collect();
            let g = vars();
            let phis: Vec<Rat> = data.iter().map(|d| d.0.clone()).collect();
            let lams: Vec<Rat> = data.iter().map(|d| int(d.1)).collect();
            let base = BaseSummary::projective_plane();
            let a = blowup::tilde_hilbert_coeffs(base.a(), &g[0], &g[1..]);
            let b = blowup::tilde_weight_coeffs(2, &g[0], &g[1..], &phis, &lams);
            let psi1 = futaki_numerators(&a, &b)[0].scale(&int(4));
            if psi1 == printed {
                matches.push((sp, sl));
            }
        }
        assert_eq!(matches, vec![(1, 1)]);
    }

    #[test]
    fn psi_matches_printed_polynomials() {
        let (psi1, psi2) = psi_four_points();
        let (e1, e2) = printed_psi();
        assert_eq!(psi1, e1);
        assert_eq!(psi2, e2);
        assert!(psi1.is_homogeneous() && psi1.total_degree() == Some(4));
        assert!(psi2.is_homogeneous() && psi2.total_degree() == Some(3));
    }

    #[test]
    fn psi_examples() {
        let (psi1, _) = psi_four_points();
        let one = [1, 1, 0, 0, 0].map(int);
        assert_eq!(psi1.eval(&one).unwrap(), int(0));
        let restricted = (2..=4).fold(psi1.clone(), |p, v| p.substitute(v, &int(0)).unwrap());
        let g = vars();
        let expected = &(&c(2) * &g[1]) * &Scalar::pow(&(&g[0] - &g[1]), 3);
        assert_eq!(restricted, expected);
        // along the direction (0, 0, 1, 0, 0): t^3 (t - 2)
        for t in -3..=3 {
            let v = psi1.eval(&[int(1), int(1), int(t), int(0), int(0)]).unwrap();
            assert_eq!(v, int(t * t * t * (t - 2)));
        }
        assert_eq!(psi1.eval(&[3, 1, 1, 1, 1].map(int)).unwrap(), int(-5));
    }

    #[test]
    fn three_point_psi_factorizes() {
        for (action, idx) in DiagAction::three_point_generators().iter().zip(0..) {
            let (psi1, psi2) = psi_reconstruct(PointConfig::ThreeGeneral, action).unwrap();
            for (m, a) in [(7, [1, 2, 3]), (9, [4, 1, 2]), (5, [1, 1, 3]), (11, [2, 5, 3])] {
                let x: Vec<Rat> = std::iter::once(m).chain(a).map(int).collect();
                let f = three_point_factors(m, a)[idx];
                assert_eq!(psi1.eval(&x).unwrap(), big(f.0));
                assert_eq!(psi2.eval(&x).unwrap(), big(f.1));
            }
        }
    }

    #[test]
    fn triple_point() {
        let (psi1, _) = psi_four_points();
        assert!(triple_point_check(&psi1));
        let g = vars();
        assert!(!triple_point_check(&Scalar::pow(&g[0], 4)));
        assert!(!triple_point_check(&Scalar::pow(&(&g[0] - &g[1]), 4)));
        let x = [1, 1, 0, 0, 0].map(int);
        assert_eq!(vanishing_order(&Scalar::pow(&(&g[0] - &g[1]), 4), &x).unwrap(), Some(4));
        assert_eq!(vanishing_order(&MPoly::new(&symbol_names(4)), &x).unwrap(), None);
    }

    #[test]
    fn ampleness() {
        let three = PointConfig::ThreeGeneral;
        assert!(ample_check(three, 5, &[2, 2, 2]));
        assert!(!ample_check(three, 2, &[1, 1, 1]));
        assert!(ample_check(three, 3, &[1, 1, 1]));
        assert!(!ample_check(three, 3, &[1, 1]));
        assert!(!ample_check(three, 3, &[0, 1, 1]));
        let four = PointConfig::FourPointsThreeAligned;
        assert!(ample_check(four, 4, &[1, 1, 1, 1]));
        assert!(!ample_check(four, 3, &[1, 1, 1, 1]));
        assert!(!ample_check(four, 5, &[1, 3, 1, 1]));
    }

    #[test]
    fn loci_examples() {
        let t = LociFlags { f1_zero: true, f2_zero: true };
        let f = LociFlags { f1_zero: false, f2_zero: false };
        assert_eq!(three_point_loci(5, [1, 1, 1]).unwrap(), t);
        assert_eq!(three_point_loci(4, [2, 1, 1]).unwrap(), t);
        assert_eq!(three_point_loci(5, [2, 1, 1]).unwrap(), f);
        assert_eq!(three_point_factors(5, [2, 1, 1])[0].0, 7);
        assert!(matches!(three_point_loci(2, [1, 1, 1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn first_invariant_via_psi() {
        let f = plane_futaki(PointConfig::FourPointsThreeAligned, &DiagAction::four_point(), 3, &[1, 1, 1, 1])
            .unwrap();
        assert_eq!(f[0], rat(-1, 5));
    }

    #[test]
    fn search_small() {
        assert!(search_unstable(0, 1).is_err());
        let found = search_unstable(2, 2).unwrap();
        assert!(!found.is_empty());
        for cand in &found {
            assert!(cand.verified && cand.ample);
            assert!(cand.psi1_value.is_zero() && !cand.psi2_value.is_zero());
            assert_eq!(&verify_candidate(cand.m, &cand.alphas).unwrap(), cand);
        }
        assert_eq!(found, search_unstable(2, 2).unwrap());
    }
}

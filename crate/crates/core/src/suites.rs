//! Enumeration matrices for the oracle-equivalence checks.
//!
//! Each check recomputes the closed forms for one case, compares them with
//! the brute-force oracle at every `k` in range, confirms the constant term
//! of the weight polynomial vanishes, and runs the invariant pipelines
//! (which cross-check themselves). Mismatches are collected as messages
//! rather than returned early, so a run reports every failing case.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::blowup::{self, BaseSummary, BlownPoint, BlowupSpec};
use crate::chowcore::{self, HilbertData, WeightData};
use crate::error::{Error, Result};
use crate::exactalg::{eval_integer_form, int};
use crate::p2lab::{fixed_point_data, DiagAction, PlanePoint};
use crate::projbundle::{self, CurveBundleSpec, Summand};
use crate::{OracleValue, PolyK, Rat};

/// What a failed comparison was about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Closed form against the brute-force oracle.
    Oracle,
    /// Closed-form invariants against the generic route.
    Pipeline,
    /// Constant term of the weight polynomial.
    ConstantTerm,
}

/// Totals over a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub cases: usize,
    /// Oracle comparisons, one per case and `k`.
    pub oracle_checks: usize,
    /// Cases whose invariant pipelines were compared.
    pub pipeline_checks: usize,
    /// Cases where every pipeline reported a degenerate leading term.
    pub degenerate: usize,
    pub failures: Vec<(Check, String)>,
}

impl Tally {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, check: Check) -> impl Iterator<Item = &str> {
        self.failures
            .iter()
            .filter(move |(c, _)| *c == check)
            .map(|(_, m)| m.as_str())
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.oracle_checks += other.oracle_checks;
        self.pipeline_checks += other.pipeline_checks;
        self.degenerate += other.degenerate;
        self.failures.extend(other.failures);
        self
    }

    fn fail(&mut self, check: Check, msg: String) {
        self.failures.push((check, msg));
    }
}

/// Bounds of the projective-bundle matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjbundleMatrix {
    pub genera: Vec<i64>,
    pub max_summands: usize,
    pub ranks: Vec<u32>,
    pub degrees: Vec<i64>,
    pub weights: Vec<i64>,
    pub twists: Vec<u32>,
    pub b_degrees: Vec<i64>,
    pub b_weight: i64,
    pub max_k: u64,
}

impl Default for ProjbundleMatrix {
    fn default() -> Self {
        ProjbundleMatrix {
            genera: vec![2, 3],
            max_summands: 3,
            ranks: vec![1, 2],
            degrees: (-3..=3).collect(),
            weights: (-2..=2).collect(),
            twists: vec![1, 2],
            b_degrees: (-2..=3).collect(),
            b_weight: 1,
            max_k: 6,
        }
    }
}

impl ProjbundleMatrix {
    fn summand_types(&self) -> Vec<Summand> {
        let mut out = Vec::new();
        for &rank in &self.ranks {
            for &degree in &self.degrees {
                for &weight in &self.weights {
                    out.push(Summand::new(rank, degree, weight, true));
                }
            }
        }
        out
    }

    /// Summand lists up to reordering (multisets of summand types) with
    /// total rank at least 2. Both the closed forms and the oracle are
    /// symmetric in the summands.
    pub fn summand_sets(&self) -> Vec<Vec<Summand>> {
        let types = self.summand_types();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(
            types: &[Summand],
            start: usize,
            left: usize,
            current: &mut Vec<Summand>,
            out: &mut Vec<Vec<Summand>>,
        ) {
            if !current.is_empty() && current.iter().map(|s| s.rank).sum::<u32>() >= 2 {
                out.push(current.clone());
            }
            if left == 0 {
                return;
            }
            for i in start..types.len() {
                current.push(types[i].clone());
                rec(types, i, left - 1, current, out);
                current.pop();
            }
        }
        rec(&types, 0, self.max_summands, &mut current, &mut out);
        out
    }

    /// All specs sharing one summand list.
    pub fn specs_for(&self, summands: &[Summand]) -> Vec<CurveBundleSpec> {
        let mut out = Vec::new();
        for &g in &self.genera {
            for &r in &self.twists {
                for &bd in &self.b_degrees {
                    out.push(
                        CurveBundleSpec::new(g, summands.to_vec(), bd, self.b_weight, r)
                            .expect("matrix specs are valid"),
                    );
                }
            }
        }
        out
    }

    /// Runs [`check_projbundle`] on every spec built from `sets`.
    pub fn run(&self, sets: &[Vec<Summand>]) -> Tally {
        sets.par_iter()
            .map(|summands| {
                self.specs_for(summands)
                    .iter()
                    .fold(Tally::default(), |t, spec| t.merge(check_projbundle(spec, self.max_k)))
            })
            .reduce(Tally::default, Tally::merge)
    }
}

fn pipelines_agree(
    label: &dyn std::fmt::Debug,
    closed: Result<Vec<Rat>>,
    generic: Result<Vec<Rat>>,
    tally: &mut Tally,
) {
    match (closed, generic) {
        (Ok(a), Ok(b)) if a == b => tally.pipeline_checks += 1,
        (Err(Error::Degenerate(_)), Err(Error::Degenerate(_))) => tally.degenerate += 1,
        (a, b) => tally.fail(Check::Pipeline, format!("{label:?}: pipelines disagree: {a:?} vs {b:?}")),
    }
}

// chi and w over their common denominators, evaluated without reductions.
struct IntegerForms {
    chi: (Vec<BigInt>, BigInt),
    w: (Vec<BigInt>, BigInt),
}

impl IntegerForms {
    fn new(chi: &PolyK, w: &PolyK) -> Self {
        IntegerForms {
            chi: chi.integer_form(),
            w: w.integer_form(),
        }
    }

    fn matches(&self, k: u64, o: &OracleValue) -> bool {
        let k = BigInt::from(k);
        eval_integer_form(&self.chi.0, &k) == &self.chi.1 * o.dim
            && eval_integer_form(&self.w.0, &k) == &self.w.1 * o.weight
    }
}

/// Oracle equivalence for `k = 1..=max_k`, vanishing constant weight term,
/// and agreement of the closed-form and generic `F_l`.
pub fn check_projbundle(spec: &CurveBundleSpec, max_k: u64) -> Tally {
    let mut t = Tally {
        cases: 1,
        ..Tally::default()
    };
    let chi = projbundle::euler_char_poly(spec);
    let w = projbundle::weight_poly(spec);
    if !w.coeff(0).is_zero() {
        t.fail(Check::ConstantTerm, format!("{spec:?}: weight polynomial has constant term {}", w.coeff(0)));
    }
    let forms = IntegerForms::new(&chi, &w);
    for k in 1..=max_k {
        match projbundle::oracle(spec, k) {
            Ok(o) if forms.matches(k, &o) => t.oracle_checks += 1,
            Ok(o) => t.fail(Check::Oracle, format!("{spec:?}: oracle mismatch at k = {k}: {o:?}")),
            Err(e) => t.fail(Check::Oracle, format!("{spec:?}: oracle error at k = {k}: {e}")),
        }
    }
    pipelines_agree(
        spec,
        projbundle::higher_futaki_closed_form(spec),
        HilbertData::from_poly(spec.n(), &chi)
            .and_then(|h| chowcore::futaki_invariants(&h, &WeightData::from_poly(spec.n(), &w)?)),
        &mut t,
    );
    t
}

/// One blowup case: an action, blown-up coordinate points with their
/// multiplicities, and `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCase {
    pub action: DiagAction,
    pub points: Vec<(PlanePoint, u64)>,
    pub m: u64,
}

impl PlaneCase {
    /// The blowup spec with `(phi, lambda)` taken from the action. Only the
    /// structural checks are applied, so `D <= 0` is allowed here.
    pub fn spec(&self) -> Result<BlowupSpec> {
        let points = self
            .points
            .iter()
            .map(|(p, alpha)| {
                let (phi, lambda) = fixed_point_data(&self.action, p)?;
                Ok(BlownPoint::new(*alpha, phi, lambda))
            })
            .collect::<Result<Vec<_>>>()?;
        BlowupSpec::for_identities(BaseSummary::projective_plane(), points, self.m)
    }
}

/// Bounds of the blowup matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupMatrix {
    pub weight_bound: i64,
    pub max_alpha: u64,
    pub max_m: u64,
    pub max_k: u64,
}

impl Default for BlowupMatrix {
    fn default() -> Self {
        BlowupMatrix {
            weight_bound: 3,
            max_alpha: 3,
            max_m: 5,
            max_k: 8,
        }
    }
}

impl BlowupMatrix {
    pub fn actions(&self) -> Vec<DiagAction> {
        let b = self.weight_bound;
        let mut out = Vec::new();
        for w0 in -b..=b {
            for w1 in -b..=b {
                let w2 = -w0 - w1;
                if w2.abs() <= b {
                    out.push(DiagAction::new([w0, w1, w2]).expect("trace zero"));
                }
            }
        }
        out
    }

    /// Every action, nonempty set of coordinate points, multiplicities
    /// `1..=max_alpha`, and `sum alpha <= m <= max_m`.
    pub fn cases(&self) -> Vec<PlaneCase> {
        let mut out = Vec::new();
        for action in self.actions() {
            for mask in 1u8..8 {
                let idx: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
                let mut alphas = vec![1u64; idx.len()];
                loop {
                    let total: u64 = alphas.iter().sum();
                    for m in total.max(1)..=self.max_m {
                        out.push(PlaneCase {
                            action,
                            points: idx
                                .iter()
                                .zip(&alphas)
                                .map(|(&i, &a)| (PlanePoint::coordinate(i), a))
                                .collect(),
                            m,
                        });
                    }
                    // odometer over alphas
                    let mut pos = 0;
                    while pos < alphas.len() && alphas[pos] == self.max_alpha {
                        alphas[pos] = 1;
                        pos += 1;
                    }
                    if pos == alphas.len() {
                        break;
                    }
                    alphas[pos] += 1;
                }
            }
        }
        out
    }

    pub fn run(&self, cases: &[PlaneCase]) -> Tally {
        cases
            .par_iter()
            .map(|c| check_blowup(c, self.max_k))
            .reduce(Tally::default, Tally::merge)
    }
}

/// Oracle equivalence for `k = 1..=max_k`, `w~ = -quotient weight`,
/// vanishing constant weight term, and (when `D > 0`) the blowup formula
/// for `F_l` and the Chow weight against the generic route.
pub fn check_blowup(case: &PlaneCase, max_k: u64) -> Tally {
    let mut t = Tally {
        cases: 1,
        ..Tally::default()
    };
    let spec = match case.spec() {
        Ok(s) => s,
        Err(e) => {
            t.fail(Check::Oracle, format!("{case:?}: {e}"));
            return t;
        }
    };
    let chi = blowup::chi_tilde(&spec);
    let w = blowup::w_tilde(&spec);
    if !w.coeff(0).is_zero() {
        t.fail(Check::ConstantTerm, format!("{case:?}: weight polynomial has constant term {}", w.coeff(0)));
    }
    let forms = IntegerForms::new(&chi, &w);
    for k in 1..=max_k {
        if w.eval_integer(&k.into()) != -blowup::quotient_weight(&spec, k) {
            t.fail(Check::Oracle, format!("{case:?}: quotient weight mismatch at k = {k}"));
        }
        match blowup::oracle_p2(&case.action, &case.points, case.m, k) {
            Ok(o) if forms.matches(k, &o) => t.oracle_checks += 1,
            Ok(o) => t.fail(Check::Oracle, format!("{case:?}: oracle mismatch at k = {k}: {o:?}")),
            Err(e) => t.fail(Check::Oracle, format!("{case:?}: oracle error at k = {k}: {e}")),
        }
    }
    if spec.d() > int(0) {
        let checked = BlowupSpec::new(spec.base().clone(), spec.points().to_vec(), spec.m())
            .and_then(|s| Ok((blowup::futaki_blowup(&s)?, blowup::chow_blowup(&s)?)));
        match checked {
            Ok((f, chow)) => {
                if f.iter().all(|x| x.is_zero()) != chow.is_zero() {
                    t.fail(Check::Pipeline, format!("{case:?}: Chow weight and F_l disagree on vanishing"));
                }
                t.pipeline_checks += 1;
            }
            Err(e) => t.fail(Check::Pipeline, format!("{case:?}: {e}")),
        }
    } else {
        match BlowupSpec::new(spec.base().clone(), spec.points().to_vec(), spec.m()) {
            Err(Error::Degenerate(_)) => t.degenerate += 1,
            other => t.fail(Check::Pipeline, format!("{case:?}: expected a degenerate spec, got {other:?}")),
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_sizes() {
        let pb = ProjbundleMatrix::default();
        // 70 summand types; singletons need rank 2
        assert_eq!(pb.summand_sets().len(), 35 + 70 * 71 / 2 + 70 * 71 * 72 / 6);
        let bl = BlowupMatrix::default();
        assert_eq!(bl.actions().len(), 37);
        let cases = bl.cases();
        assert!(cases.iter().all(|c| c.points.iter().map(|p| p.1).sum::<u64>() <= c.m));
    }

    #[test]
    fn small_runs_pass() {
        let pb = ProjbundleMatrix {
            max_summands: 2,
            degrees: vec![-1, 2],
            weights: vec![0, 1],
            b_degrees: vec![0, 2],
            max_k: 3,
            ..ProjbundleMatrix::default()
        };
        let t = pb.run(&pb.summand_sets());
        assert!(t.passed(), "{:?}", t.failures);
        assert!(t.degenerate > 0 && t.pipeline_checks > 0);

        let bl = BlowupMatrix {
            weight_bound: 1,
            max_m: 3,
            max_k: 3,
            ..BlowupMatrix::default()
        };
        let t = bl.run(&bl.cases());
        assert!(t.passed(), "{:?}", t.failures);
        assert!(t.degenerate > 0 && t.pipeline_checks > 0);
    }
}

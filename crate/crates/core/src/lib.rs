//! Exact Chow weights and higher Futaki invariants of polarized manifolds.
//!
//! The crate computes, in exact rational arithmetic, the normalized Chow
//! weight `Chow(V, A^k)` and the invariants `F_1, .., F_n` of a
//! one-parameter group acting on a polarized manifold, starting from its
//! Hilbert and weight polynomials ([`chowcore`]). Two families get closed
//! forms, each checked against an independent brute-force enumeration:
//!
//! * projectivized bundles over curves of genus `g >= 2` ([`projbundle`]),
//! * blowups at fixed points of an asymptotically Chow polystable base
//!   ([`blowup`]), with the projective plane worked out in [`p2lab`].
//!
//! [`suites`] holds the enumeration matrices used by the oracle checks.

pub mod blowup;
pub mod chowcore;
mod error;
pub mod exactalg;
pub mod p2lab;
pub mod projbundle;
pub mod suites;

pub use error::{Error, Result};
pub use exactalg::{Field, Rat, Scalar};

/// Polynomial in the tensor power `k`.
pub type PolyK = exactalg::Poly<Rat>;
/// Rational function in the tensor power `k`.
pub type RatFnK = exactalg::RatFn<Rat>;
/// Multivariate polynomial over the rationals.
pub type MPoly = exactalg::MultiPoly<Rat>;

/// Dimension and total weight of a space of sections, as counted by an
/// enumeration oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleValue {
    pub dim: i128,
    pub weight: i128,
}

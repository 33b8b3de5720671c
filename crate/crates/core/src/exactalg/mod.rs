//! Exact rational arithmetic and the polynomial algebra the invariant
//! formulas are written in.
//!
//! Everything here is generic over a [`Scalar`]: the invariants themselves
//! are always computed over [`Rat`], but the same polynomial code runs over
//! `f64` for approximate reporting and over [`MultiPoly`] when a formula has
//! to be carried out symbolically.

pub mod combinat;
mod mpoly;
mod poly;
mod ratfn;
mod scalar;

pub use combinat::{binom_poly_in_k, cm_constants, stirling_coeffs};
pub use mpoly::MultiPoly;
pub use poly::{eval_integer_form, Poly};
pub use ratfn::RatFn;
pub use scalar::{
    big, binomial, binomial_i128, factorial, format_rat, int, parse_rat, rat, try_rat, Field,
    Rat, Scalar,
};

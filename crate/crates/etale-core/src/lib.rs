//! Exact computational algebra around coordinate rings of affine A^1-bundles
//! over P^1.
//!
//! The crate provides, all over arbitrary-precision rationals:
//!
//! * sparse bivariate Laurent polynomials with weighted gradings, formal
//!   derivatives, substitution and regularity predicates ([`poly`]);
//! * the subalgebras `C[t_0, ..., t_m]` of `C[x, y]` cut out by a chart
//!   change `x' = 1/x`, with exact membership, rewriting in generators,
//!   the negative-degree factorization of the canonical index-3 algebra,
//!   and regularizing linear substitutions ([`wright`]);
//! * integer intersection arithmetic on Hirzebruch surfaces and their
//!   ample-section complements ([`surface`]);
//! * bounded exhaustive searches for constant-Jacobian pairs and exact
//!   integrality certificates ([`search`], [`certify`]).
//!
//! There is no floating point anywhere; every equality the crate reports is
//! an exact identity of rational numbers. All values are immutable after
//! construction and every operation is a pure function, so everything here
//! is safe to share across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certify;
pub mod linalg;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod search;
pub mod surface;
pub mod unipoly;
pub mod wright;

pub use multipoly::{MultiPoly, TMono};
pub use poly::{
    jacobian_determinant, Exp, LaurentPoly, LinearMap, PolyError, TotalDegree, Var, WeightVector,
};
pub use rational::Rational;
pub use unipoly::UniPoly;

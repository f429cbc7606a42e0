//! Exact arithmetic: rationals, sparse multivariate and dense univariate
//! polynomials, matrices with exact determinants, and the polynomial text
//! syntax shared with the command line front end.

pub mod intpoly;
pub mod matrix;
pub mod monomial;
pub mod mpoly;
pub mod parse;
pub mod rational;
pub mod upoly;

pub use matrix::{QMatrix, RingElement};
pub use monomial::{Degree, Monomial};
pub use mpoly::MPoly;
pub use rational::Rational;
pub use upoly::UPoly;

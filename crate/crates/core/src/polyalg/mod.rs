//! Exact scalar arithmetic over the rationals.
//!
//! [`Poly`] is a dense univariate polynomial in the indeterminate `s` with
//! [`Rational`] coefficients; [`RatFunc`] is a reduced quotient of two such
//! polynomials with a monic denominator. Both keep a canonical form at all
//! times, so `==` is structural equality.

mod poly;
mod ratfunc;
mod rational;

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{format_rational, parse_rational, Rational};

//! Exact rational arithmetic and polynomial algebra: univariate polynomials
//! over rationals or parameter polynomials, composition, exact division,
//! Sylvester resultants and discriminants, gcd and squarefree parts.

mod coeff;
mod gcd;
pub mod intpoly;
mod parampoly;
mod parse;
mod rational;
mod resultant;
mod unipoly;

pub use coeff::Coeff;
pub use gcd::{gcd, gcd_squarefree, primitive, squarefree, squarefree_decomposition};
pub use parampoly::{Monomial, ParamPoly};
pub use rational::Rational;
pub use resultant::{determinant, discriminant, resultant, sylvester_matrix};
pub use unipoly::{ArithKind, UniPoly};

/// Parse a polynomial expression in a single main variable with rational
/// coefficients, e.g. `x^3 - 1`.
pub fn rat_poly(src: &str, var: &str) -> crate::Result<UniPoly<Rational>> {
    src.parse::<ParamPoly>()?.to_rational_univariate(var)
}

/// Parse an expression and view it as a polynomial in `var` whose
/// coefficients are polynomials in the remaining names.
pub fn param_poly(src: &str, var: &str) -> crate::Result<UniPoly<ParamPoly>> {
    Ok(src.parse::<ParamPoly>()?.to_univariate(var))
}

//! Exact multivariate and univariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;
mod univariate;

pub use monomial::{binomial, count_below, default_names, monomials_of_degree, Monomial};
pub use parse::{parse, parse_variable_list};
pub use polynomial::{twisted_derivative, Polynomial};
pub use univariate::{rational_roots, UPoly};

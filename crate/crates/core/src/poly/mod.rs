//! Exact arithmetic over prime fields: monomials, orders, polynomials.

mod field;
mod monomial;
pub(crate) mod parse;
mod polynomial;

pub use field::{is_prime, PrimeField};
pub use monomial::{count_monomials, monomial_compare, monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};
pub use polynomial::{PolyRing, Polynomial};

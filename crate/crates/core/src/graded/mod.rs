//! Free (ℕ, ℤ₂)-bigraded commutative algebras over ℚ.
//!
//! A [`Signature`] fixes the generators and their canonical order; a
//! [`Monomial`] is a sorted exponent list in that order, and an [`Element`] is
//! a canonical exact-rational combination of monomials. Reordering factors
//! follows the Koszul rule: generators of bidegree `(m, p)` and `(n, q)`
//! commute up to `(-1)^(m·n + p·q)`.

mod bidegree;
pub(crate) mod element;
mod json;
mod monomial;
pub(crate) mod signature;

pub use bidegree::{Bidegree, Parity};
pub use element::{linear_combine, Element};
pub use json::{format_q, parse_q, TermJson};
pub use monomial::{Factor, Monomial};
pub use signature::{make_signature, same_signature, GenId, GeneratorDecl, Signature};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficients.
pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

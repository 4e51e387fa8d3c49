//! Exact multivariate Laurent polynomials and their fraction field over the variables
//! q, E, z, s, A, t.

mod fraction;
mod gcd;
mod laurent;
mod monomial;
mod text;

pub use fraction::{canonical_eq, rebase, LaurentFraction, Rebase};
pub use laurent::{rat, LaurentPoly};
pub use monomial::{Monomial, Var, NVARS};
pub use text::{parse_fraction, parse_poly};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("odd exponent {1} of {0} cannot be rebased")]
    OddExponent(Var, i32),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `v^e` as a fraction; shorthand used throughout the invariant code.
pub fn mono(v: Var, e: i32) -> LaurentFraction {
    LaurentFraction::var(v, e)
}

pub fn q_plus_qinv() -> LaurentPoly {
    LaurentPoly::var(Var::Q, 1) + LaurentPoly::var(Var::Q, -1)
}

pub fn q_minus_qinv() -> LaurentPoly {
    LaurentPoly::var(Var::Q, 1) - LaurentPoly::var(Var::Q, -1)
}

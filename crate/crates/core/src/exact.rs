//! Exact scalar arithmetic: arbitrary-precision rationals and cyclotomic
//! field elements. Every character value and multiplicity in this crate is
//! computed over these types; nothing is ever rounded.

mod cyclotomic;
mod poly;
mod rootsum;

pub use cyclotomic::Cyclotomic;
pub(crate) use rootsum::RootSum;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (enforced by the underlying representation).
pub type Rational = num_rational::BigRational;

/// Shorthand for small integer rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parse a rational literal of the form `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| Error::RationalLiteral(text.to_string()))
}

/// Render a rational as `p` or `p/q`, matching [`parse_rational`].
pub fn format_rational(q: &Rational) -> String {
    use num_traits::One;
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

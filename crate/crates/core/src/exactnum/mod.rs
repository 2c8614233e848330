//! Exact arithmetic: rational polynomials, real algebraic numbers and
//! rigorous rational enclosures of transcendental quantities.

mod algebraic;
mod enclosure;
mod parse;
mod poly;

pub use algebraic::{isolate_roots, AlgebraicNumber};
pub use enclosure::{decimal_ceil, decimal_floor, ln_rational, Enclosure, DEFAULT_BITS};
pub use parse::{parse_base, parse_rational};
pub use poly::{IntPolynomial, RatPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

pub(crate) fn pow10(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), digits as usize)
}

/// Largest multiple of `2^-bits` that is `<= x`.
pub fn dyadic_floor(x: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let n = (x * Rational::from_integer(scale.clone())).floor().to_integer();
    Rational::new(n, scale)
}

/// Smallest multiple of `2^-bits` that is `>= x`.
pub fn dyadic_ceil(x: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let n = (x * Rational::from_integer(scale.clone())).ceil().to_integer();
    Rational::new(n, scale)
}

/// Sign of `p` at the algebraic number `q`.
pub fn sign_at(p: &IntPolynomial, q: &AlgebraicNumber) -> std::cmp::Ordering {
    q.sign_of(&p.to_rat())
}

/// Copy of `q` whose isolating interval has width at most `width`.
pub fn refine(q: &AlgebraicNumber, width: &Rational) -> AlgebraicNumber {
    q.refined(width)
}

pub fn compare(a: &AlgebraicNumber, b: &AlgebraicNumber) -> std::cmp::Ordering {
    a.compare(b)
}

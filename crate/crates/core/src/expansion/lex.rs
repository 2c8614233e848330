use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{PeriodicSeq, Sequence};
use crate::error::{Error, Result};
use crate::exactnum::{AlgebraicNumber, Enclosure, RatPoly, Rational};

/// Lexicographic comparison of two digit sequences.
///
/// Two eventually periodic sequences are compared exactly. Otherwise the
/// first `depth` digits are inspected and `None` means they agree there.
pub fn lex_compare(a: &Sequence, b: &Sequence, depth: usize) -> Option<Ordering> {
    if let (Some(pa), Some(pb)) = (a.as_periodic(), b.as_periodic()) {
        return Some(pa.lex_cmp(&pb));
    }
    for i in 0..depth {
        match a.digit(i).cmp(&b.digit(i)) {
            Ordering::Equal => continue,
            o => return Some(o),
        }
    }
    match (a.as_periodic(), b.as_periodic()) {
        (Some(pa), Some(pb)) => Some(pa.lex_cmp(&pb)),
        _ => None,
    }
}

/// Exact value of `sum c_i q^-i` as a ratio of polynomials in `q`.
#[derive(Clone, Debug)]
pub struct PiValue {
    q: AlgebraicNumber,
    num: RatPoly,
    den: RatPoly,
}

impl PiValue {
    /// Sign of `value - r`.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.q.sign_of(&self.num.sub(&self.den.scale(r)))
    }

    pub fn cmp_value(&self, other: &PiValue) -> Ordering {
        assert!(self.q == other.q, "values in different bases");
        self.q.sign_of(&self.num.mul(&other.den).sub(&other.num.mul(&self.den)))
    }

    pub fn enclosure(&self, bits: u32) -> Enclosure {
        let q = self.q.refined_bits(bits).enclosure();
        let n = self.num.eval_enclosure(&q);
        let d = self.den.eval_enclosure(&q);
        n.checked_div(&d).expect("denominator is positive for q > 1")
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(64).midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

fn int_const(n: i64) -> RatPoly {
    RatPoly::constant(Rational::from_integer(BigInt::from(n)))
}

/// Horner value `sum d_i x^(len - i)` for `i = 1..len`.
fn digits_poly(digits: &[u8]) -> RatPoly {
    digits.iter().fold(RatPoly::zero(), |acc, &d| acc.shift_up().add(&int_const(d as i64)))
}

/// `pi_q(c)` for an eventually periodic `c`. Rejects `q <= 1`.
pub fn eval_pi(q: &AlgebraicNumber, c: &PeriodicSeq) -> Result<PiValue> {
    if q.cmp_rational(&Rational::one()) != Ordering::Greater {
        return Err(Error::BaseOutOfRange(format!("q = {q} must exceed 1")));
    }
    let l = c.preperiod().len();
    let x_l = RatPoly::monomial(Rational::one(), l);
    let pre = digits_poly(c.preperiod());
    let (num, den) = if c.period().is_empty() {
        (pre, x_l)
    } else {
        let p = c.period().len();
        let cyc = RatPoly::monomial(Rational::one(), p).sub(&int_const(1));
        let num = pre.mul(&cyc).add(&digits_poly(c.period()));
        (num, x_l.mul(&cyc))
    };
    Ok(PiValue { q: q.clone(), num, den })
}

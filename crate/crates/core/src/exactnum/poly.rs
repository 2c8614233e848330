use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Enclosure, Rational};

/// Integer polynomial, coefficients lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.to_rat().eval(x)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Polynomial with rational coefficients, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the value at `x`.
    pub fn sign_at_rational(&self, x: &Rational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        // b^d p(a/b) with integer coefficients, evaluated without fractions
        let p = self.to_int_primitive();
        let (a, b) = (x.numer(), x.denom());
        let c = p.coeffs();
        let mut acc = c[d].clone();
        let mut b_pow = BigInt::one();
        for i in (0..d).rev() {
            b_pow *= b;
            acc = acc * a + &c[i] * &b_pow;
        }
        acc.cmp(&BigInt::zero())
    }

    /// Interval Horner evaluation; the result contains `p(x)` for every `x`
    /// in `x_range`.
    pub fn eval_enclosure(&self, x_range: &Enclosure) -> Enclosure {
        let mut acc = Enclosure::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x_range).add_scalar(c);
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        RatPoly::new(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::new(coeffs)
    }

    /// Multiply by `x`.
    pub fn shift_up(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] / lead;
            if !c.is_zero() {
                let shift = top - dd;
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &c * d;
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        if self.degree() < divisor.degree() {
            return self.clone();
        }
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => RatPoly::zero(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_scaled();
        }
        a.monic()
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Same roots, with coefficients scaled to a primitive integer vector
    /// with positive leading coefficient; keeps gcd chains small.
    fn primitive_scaled(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let int = self.to_int_primitive();
        int.to_rat()
    }

    /// Multiply by a positive rational so that coefficients become coprime
    /// integers. The sign of every value is preserved.
    pub fn to_int_primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        IntPolynomial::new(ints.into_iter().map(|c| c / &g).collect())
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps signs intact
            chain.push(r.neg().primitive_scaled());
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_half_open(chain: &[RatPoly], a: &Rational, b: &Rational) -> usize {
        let va = sign_variations(chain, a);
        let vb = sign_variations(chain, b);
        va.saturating_sub(vb)
    }
}

fn sign_variations(chain: &[RatPoly], x: &Rational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at_rational(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RatPoly {
        IntPolynomial::from_i64s(c).to_rat()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = rp(&[-1, 0, 3, 2]);
        let b = rp(&[1, 1]);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&rem), a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn gcd_of_products() {
        // (x-1)(x-2) and (x-2)(x+3)
        let a = rp(&[2, -3, 1]);
        let b = rp(&[-6, 1, 1]);
        assert_eq!(a.gcd(&b), rp(&[-2, 1]));
        assert_eq!(rp(&[1, 1]).gcd(&rp(&[-1, 1])), rp(&[1]));
    }

    #[test]
    fn squarefree_strips_repeated_factors() {
        // (x-1)^2 (x+1)
        let p = rp(&[1, -1, -1, 1]);
        assert_eq!(p.squarefree(), rp(&[-1, 0, 1]));
    }

    #[test]
    fn sturm_counts_golden_roots() {
        let p = rp(&[-1, -1, 1]);
        let chain = p.sturm_chain();
        assert_eq!(RatPoly::count_roots_half_open(&chain, &r(-10, 1), &r(10, 1)), 2);
        assert_eq!(RatPoly::count_roots_half_open(&chain, &r(1, 1), &r(2, 1)), 1);
        assert_eq!(RatPoly::count_roots_half_open(&chain, &r(2, 1), &r(3, 1)), 0);
    }

    #[test]
    fn primitive_scaling_keeps_sign() {
        let p = RatPoly::new(vec![r(-1, 2), r(1, 3)]);
        let q = p.to_int_primitive();
        assert_eq!(q, IntPolynomial::from_i64s(&[-3, 2]));
    }

    #[test]
    fn interval_eval_contains_values() {
        let p = rp(&[-1, -1, 1]);
        let e = p.eval_enclosure(&Enclosure::new(r(3, 2), r(2, 1)));
        for k in 0..=10 {
            let x = r(3, 2) + r(k, 20);
            let v = p.eval(&x);
            assert!(e.lo() <= &v && &v <= e.hi());
        }
    }
}

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{decimal_floor, Enclosure, IntPolynomial, RatPoly, Rational};
use crate::error::{Error, Result};

/// A real algebraic number: the unique root of `defining` inside `[lo, hi]`.
///
/// `defining` is squarefree with coprime integer coefficients and a positive
/// leading coefficient. Either `lo == hi` (the root is that rational) or the
/// polynomial changes sign strictly between the endpoints.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    defining: IntPolynomial,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicNumber {
    pub fn from_rational(r: Rational) -> Self {
        let defining = IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
        Self { defining, lo: r.clone(), hi: r }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The unique root of `poly` in the closed interval `[lo, hi]`.
    pub fn new(poly: &IntPolynomial, lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!("isolating interval [{lo}, {hi}] is reversed")));
        }
        if poly.degree().unwrap_or(0) == 0 {
            return Err(Error::Invalid("defining polynomial must be non-constant".into()));
        }
        let roots = isolate_roots(&poly.to_rat(), &lo, &hi);
        match roots.len() {
            1 => Ok(roots.into_iter().next().unwrap()),
            n => Err(Error::Invalid(format!(
                "polynomial {poly} has {n} roots in [{lo}, {hi}], expected exactly one"
            ))),
        }
    }

    /// The golden ratio, root of `x^2 - x - 1`.
    pub fn golden() -> Self {
        Self::new(&IntPolynomial::from_i64s(&[-1, -1, 1]), Rational::one(), Rational::from_integer(2.into()))
            .expect("golden ratio isolates")
    }

    /// The tribonacci constant, root of `x^3 - x^2 - x - 1`.
    pub fn tribonacci() -> Self {
        Self::new(
            &IntPolynomial::from_i64s(&[-1, -1, -1, 1]),
            Rational::one(),
            Rational::from_integer(2.into()),
        )
        .expect("tribonacci constant isolates")
    }

    /// The root of `poly` in `(lo, hi)` assuming the caller already knows the
    /// interval isolates it and the polynomial is squarefree.
    pub(crate) fn from_isolated(poly: &RatPoly, lo: Rational, hi: Rational) -> Self {
        let defining = poly.to_int_primitive();
        let defining = if defining.coeffs().last().is_some_and(|c| c.is_negative()) {
            IntPolynomial::new(defining.coeffs().iter().map(|c| -c).collect())
        } else {
            defining
        };
        Self { defining, lo, hi }
    }

    pub fn defining(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn enclosure(&self) -> Enclosure {
        Enclosure::new(self.lo.clone(), self.hi.clone())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Copy whose isolating interval is at most `width` wide.
    pub fn refined(&self, width: &Rational) -> Self {
        let mut out = self.clone();
        out.refine_in_place(width);
        out
    }

    /// Copy whose isolating interval is at most `2^-bits` wide.
    pub fn refined_bits(&self, bits: u32) -> Self {
        self.refined(&Rational::new(BigInt::one(), super::pow2(bits)))
    }

    fn refine_in_place(&mut self, width: &Rational) {
        if self.lo == self.hi {
            return;
        }
        let p = self.defining.to_rat();
        let s_lo = p.sign_at_rational(&self.lo);
        while &(&self.hi - &self.lo) > width {
            self.bisect(&p, s_lo);
            if self.lo == self.hi {
                return;
            }
        }
    }

    fn bisect(&mut self, p: &RatPoly, s_lo: Ordering) {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        match p.sign_at_rational(&mid) {
            Ordering::Equal => {
                self.lo = mid.clone();
                self.hi = mid;
            }
            s if s == s_lo => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Sign of `q` evaluated at this number.
    pub fn sign_of(&self, q: &RatPoly) -> Ordering {
        if let Some(r) = self.as_rational() {
            return q.sign_at_rational(r);
        }
        if q.is_zero() {
            return Ordering::Equal;
        }
        let mut cur = self.clone();
        let p = cur.defining.to_rat();
        let s_lo = p.sign_at_rational(&cur.lo);
        if let Some(s) = decide_sign(q, &cur.enclosure()) {
            return s;
        }
        let g = q.gcd(&p);
        if g.degree().unwrap_or(0) > 0 {
            let chain = g.sturm_chain();
            if RatPoly::count_roots_half_open(&chain, &cur.lo, &cur.hi) > 0 {
                return Ordering::Equal;
            }
        }
        loop {
            cur.bisect(&p, s_lo);
            if let Some(r) = cur.as_rational() {
                return q.sign_at_rational(r);
            }
            if let Some(s) = decide_sign(q, &cur.enclosure()) {
                return s;
            }
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(x) = self.as_rational() {
            return x.cmp(r);
        }
        if r <= &self.lo {
            return Ordering::Greater;
        }
        if r >= &self.hi {
            return Ordering::Less;
        }
        let linear = RatPoly::new(vec![-r.clone(), Rational::one()]);
        self.sign_of(&linear)
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn compare(&self, other: &AlgebraicNumber) -> Ordering {
        if let Some(r) = other.as_rational() {
            return self.cmp_rational(r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rational(r).reverse();
        }
        if self.hi < other.lo {
            return Ordering::Less;
        }
        if other.hi < self.lo {
            return Ordering::Greater;
        }
        let pa = self.defining.to_rat();
        let pb = other.defining.to_rat();
        let g = pa.gcd(&pb);
        if g.degree().unwrap_or(0) > 0 {
            let lo = (&self.lo).max(&other.lo).clone();
            let hi = (&self.hi).min(&other.hi).clone();
            let chain = g.sturm_chain();
            if g.sign_at_rational(&lo) == Ordering::Equal
                || RatPoly::count_roots_half_open(&chain, &lo, &hi) > 0
            {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let sa = pa.sign_at_rational(&a.lo);
        let sb = pb.sign_at_rational(&b.lo);
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if let (Some(_), _) | (_, Some(_)) = (a.as_rational(), b.as_rational()) {
                return a.compare(&b);
            }
            if a.hi.clone() - &a.lo >= b.hi.clone() - &b.lo {
                a.bisect(&pa, sa);
            } else {
                b.bisect(&pb, sb);
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.refined_bits(60);
        r.enclosure().midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal string truncated to `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        let bits = (digits as f64 * 3.33) as u32 + 8;
        let r = self.refined_bits(bits);
        decimal_floor(&r.lo, digits)
    }
}

fn decide_sign(q: &RatPoly, x: &Enclosure) -> Option<Ordering> {
    let e = q.eval_enclosure(x);
    if e.lo().is_positive() {
        Some(Ordering::Greater)
    } else if e.hi().is_negative() {
        Some(Ordering::Less)
    } else {
        None
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{}~root{}", self.to_decimal(12), self.defining),
        }
    }
}

/// All distinct real roots of `p` in the closed interval `[lo, hi]`, ascending.
pub fn isolate_roots(p: &RatPoly, lo: &Rational, hi: &Rational) -> Vec<AlgebraicNumber> {
    if p.degree().unwrap_or(0) == 0 || lo > hi {
        return Vec::new();
    }
    let sqf = p.squarefree();
    let chain = sqf.sturm_chain();
    let mut out = Vec::new();
    if sqf.sign_at_rational(lo) == Ordering::Equal {
        out.push(AlgebraicNumber::from_rational(lo.clone()));
    }
    if lo < hi {
        isolate_open(&sqf, &chain, lo.clone(), hi.clone(), &mut out);
        if sqf.sign_at_rational(hi) == Ordering::Equal {
            out.push(AlgebraicNumber::from_rational(hi.clone()));
        }
    }
    out
}

/// Roots in the open interval `(a, b)`, appended in ascending order.
fn isolate_open(p: &RatPoly, chain: &[RatPoly], a: Rational, b: Rational, out: &mut Vec<AlgebraicNumber>) {
    let sb = p.sign_at_rational(&b);
    let mut n = RatPoly::count_roots_half_open(chain, &a, &b);
    if sb == Ordering::Equal {
        n -= 1;
    }
    if n == 0 {
        return;
    }
    let sa = p.sign_at_rational(&a);
    if n == 1 && sa != Ordering::Equal && sb != Ordering::Equal && sa != sb {
        out.push(AlgebraicNumber::from_isolated(p, a, b));
        return;
    }
    let mid = (&a + &b) / Rational::from_integer(2.into());
    isolate_open(p, chain, a, mid.clone(), out);
    if p.sign_at_rational(&mid) == Ordering::Equal {
        out.push(AlgebraicNumber::from_rational(mid.clone()));
    }
    isolate_open(p, chain, mid, b, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn golden_value() {
        let g = AlgebraicNumber::golden();
        assert!((g.to_f64() - 1.618_033_988_749_895).abs() < 1e-14);
        assert_eq!(g.to_decimal(6), "1.618033");
    }

    #[test]
    fn compare_golden_tribonacci_and_rationals() {
        let g = AlgebraicNumber::golden();
        let t = AlgebraicNumber::tribonacci();
        assert!(g < t);
        assert_eq!(g.cmp_rational(&rat(1618, 1000)), Ordering::Greater);
        assert_eq!(g.cmp_rational(&rat(1619, 1000)), Ordering::Less);
        assert!(AlgebraicNumber::from_rational(rat(2, 1)) > t);
    }

    #[test]
    fn equality_across_defining_polynomials() {
        // (x^2 - x - 1)(x - 3) also has the golden ratio as a root
        let p = IntPolynomial::from_i64s(&[3, 2, -4, 1]);
        let alt = AlgebraicNumber::new(&p, rat(3, 2), rat(17, 10)).unwrap();
        assert_eq!(alt, AlgebraicNumber::golden());
    }

    #[test]
    fn sign_of_vanishing_polynomial_is_zero() {
        let g = AlgebraicNumber::golden();
        // x^3 - 2x - 1 = (x + 1)(x^2 - x - 1)
        let q = IntPolynomial::from_i64s(&[-1, -2, 0, 1]).to_rat();
        assert_eq!(g.sign_of(&q), Ordering::Equal);
        let q = IntPolynomial::from_i64s(&[-2, 0, 1]).to_rat();
        assert_eq!(g.sign_of(&q), Ordering::Greater);
    }

    #[test]
    fn isolate_handles_rational_and_endpoint_roots() {
        // (x - 1)(x - 3/2)(x - 2)(x^2 - 2)
        let p = RatPoly::new(vec![rat(-3, 2), rat(1, 1)])
            .mul(&IntPolynomial::from_i64s(&[-2, 0, 1]).to_rat())
            .mul(&IntPolynomial::from_i64s(&[-1, 1]).to_rat())
            .mul(&IntPolynomial::from_i64s(&[-2, 1]).to_rat())
            .mul(&IntPolynomial::from_i64s(&[-2, 1]).to_rat());
        let roots = isolate_roots(&p, &rat(1, 1), &rat(2, 1));
        let approx: Vec<f64> = roots.iter().map(AlgebraicNumber::to_f64).collect();
        assert_eq!(roots.len(), 4);
        let expected = [1.0, std::f64::consts::SQRT_2, 1.5, 2.0];
        for (a, e) in approx.iter().zip(expected) {
            assert!((a - e).abs() < 1e-12, "{approx:?}");
        }
    }

    #[test]
    fn new_rejects_non_isolating_interval() {
        let p = IntPolynomial::from_i64s(&[-1, -1, 1]);
        assert!(AlgebraicNumber::new(&p, rat(-2, 1), rat(2, 1)).is_err());
        assert!(AlgebraicNumber::new(&p, rat(2, 1), rat(3, 1)).is_err());
    }
}

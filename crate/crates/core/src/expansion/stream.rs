use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Alphabet, DepthConfig, PeriodicSeq, Sequence, Word};
use crate::error::{Error, Result};
use crate::exactnum::{AlgebraicNumber, RatPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Greedy,
    QuasiGreedy,
}

/// Digit recursion for an expansion of one. The remainder is kept as a
/// polynomial in `q` reduced modulo the defining polynomial of `q`.
#[derive(Debug)]
struct Engine {
    q: AlgebraicNumber,
    modulus: RatPoly,
    alphabet: Alphabet,
    rule: Rule,
    remainder: RatPoly,
    digits: Vec<u8>,
    seen: HashMap<RatPoly, usize>,
    cycle: Option<(usize, usize)>,
    finite_at: Option<usize>,
    fraction: Option<FractionState>,
}

/// Remainder `n / b^i` for a non-integer rational base `a / b`. With `a`, `b`
/// coprime, `n` stays coprime to `b`, so the orbit never repeats or ends.
#[derive(Debug)]
struct FractionState {
    a: BigInt,
    b: BigInt,
    n: BigInt,
    b_pow: BigInt,
}

impl Engine {
    fn new(q: &AlgebraicNumber, alphabet: Alphabet, rule: Rule) -> Self {
        let q = q.refined_bits(96);
        let modulus = q.defining().to_rat();
        let remainder = RatPoly::constant(Rational::from_integer(1.into()));
        let mut seen = HashMap::new();
        seen.insert(remainder.clone(), 0);
        let fraction = q.as_rational().filter(|r| !r.is_integer()).map(|r| FractionState {
            a: r.numer().clone(),
            b: r.denom().clone(),
            n: BigInt::from(1),
            b_pow: BigInt::from(1),
        });
        Self {
            fraction,
            q,
            modulus,
            alphabet,
            rule,
            remainder,
            digits: Vec::new(),
            seen,
            cycle: None,
            finite_at: None,
        }
    }

    fn is_zero_at_q(&self, p: &RatPoly) -> bool {
        match p.degree() {
            None => true,
            Some(0) => false,
            _ => self.q.sign_of(p) == Ordering::Equal,
        }
    }

    fn step(&mut self) {
        let n = self.digits.len();
        if self.finite_at.is_some() {
            self.digits.push(0);
            return;
        }
        if let Some((pre, per)) = self.cycle {
            let d = self.digits[pre + (n - pre) % per];
            self.digits.push(d);
            return;
        }
        if let Some(f) = &mut self.fraction {
            f.b_pow *= &f.b;
            let t = &f.a * &f.n;
            let d = (&t / &f.b_pow).to_u8().unwrap_or(u8::MAX).min(self.alphabet.max_digit());
            f.n = t - &f.b_pow * BigInt::from(d);
            self.digits.push(d);
            return;
        }
        let t = self.remainder.shift_up().rem(&self.modulus);
        let d = self.choose_digit(&t);
        let r = t.sub(&RatPoly::constant(Rational::from_integer(d.into())));
        self.digits.push(d);
        let len = self.digits.len();
        if self.rule == Rule::Greedy && self.is_zero_at_q(&r) {
            self.finite_at = Some(len);
            self.remainder = RatPoly::zero();
            return;
        }
        if let Some(&j) = self.seen.get(&r) {
            self.cycle = Some((j, len - j));
        } else {
            self.seen.insert(r.clone(), len);
        }
        self.remainder = r;
    }

    /// Largest admissible digit for `t = q * r`: greedy needs `t - d >= 0`,
    /// quasi-greedy needs `t - d > 0`.
    fn choose_digit(&self, t: &RatPoly) -> u8 {
        let e = t.eval_enclosure(&self.q.enclosure());
        let top = e.hi().floor().to_integer();
        let mut d = top.to_i64().unwrap_or(i64::MAX).clamp(0, self.alphabet.max_digit() as i64);
        loop {
            let dr = Rational::from_integer(BigInt::from(d));
            let sign = if e.lo() > &dr {
                Ordering::Greater
            } else if e.hi() < &dr {
                Ordering::Less
            } else {
                self.q.sign_of(&t.sub(&RatPoly::constant(dr)))
            };
            let ok = match self.rule {
                Rule::Greedy => sign != Ordering::Less,
                Rule::QuasiGreedy => sign == Ordering::Greater,
            };
            if ok || d == 0 {
                return d as u8;
            }
            d -= 1;
        }
    }

    fn ensure(&mut self, n: usize) {
        while self.digits.len() < n {
            self.step();
        }
    }
}

/// A lazily computed digit sequence with memoized digits. Clones share the
/// same cache; shifted and reflected views are cheap.
#[derive(Clone)]
pub struct DigitStream {
    inner: Arc<Mutex<Engine>>,
    alphabet: Alphabet,
    offset: usize,
    reflected: bool,
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: String = self.prefix(16).iter().map(|d| d.to_string()).collect();
        write!(f, "DigitStream({head}...)")
    }
}

impl DigitStream {
    fn from_engine(engine: Engine) -> Self {
        let alphabet = engine.alphabet;
        Self { inner: Arc::new(Mutex::new(engine)), alphabet, offset: 0, reflected: false }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn map(&self, d: u8) -> u8 {
        if self.reflected {
            self.alphabet.reflect_digit(d)
        } else {
            d
        }
    }

    /// Digit at 0-based position `i` of this view.
    pub fn digit(&self, i: usize) -> u8 {
        let mut e = self.inner.lock().expect("digit stream poisoned");
        let j = self.offset + i;
        e.ensure(j + 1);
        self.map(e.digits[j])
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        let mut e = self.inner.lock().expect("digit stream poisoned");
        e.ensure(self.offset + n);
        e.digits[self.offset..self.offset + n].iter().map(|&d| self.map(d)).collect()
    }

    pub fn shift(&self, k: usize) -> DigitStream {
        Self { offset: self.offset + k, ..self.clone() }
    }

    pub fn reflect(&self) -> DigitStream {
        Self { reflected: !self.reflected, ..self.clone() }
    }

    /// Generate digits of the underlying expansion up to position `n`.
    pub fn explore(&self, n: usize) {
        self.inner.lock().expect("digit stream poisoned").ensure(n);
    }

    /// Number of digits of the underlying expansion after which the greedy
    /// remainder vanished, if that has been observed.
    pub fn finite_at(&self) -> Option<usize> {
        self.inner.lock().expect("digit stream poisoned").finite_at
    }

    /// Exact periodic form of this view, once finiteness or a repeated
    /// remainder has been observed.
    pub fn periodic_form(&self) -> Option<PeriodicSeq> {
        let e = self.inner.lock().expect("digit stream poisoned");
        let base = if let Some(m) = e.finite_at {
            PeriodicSeq::canonical(self.alphabet, e.digits[..m].to_vec(), Vec::new())
        } else if let Some((pre, per)) = e.cycle {
            PeriodicSeq::canonical(self.alphabet, e.digits[..pre].to_vec(), e.digits[pre..pre + per].to_vec())
        } else {
            return None;
        };
        drop(e);
        let shifted = base.shift(self.offset);
        Some(if self.reflected { shifted.reflect() } else { shifted })
    }
}

/// `Ok` iff `1 < q <= M + 1`.
pub fn check_base(q: &AlgebraicNumber, alphabet: Alphabet) -> Result<()> {
    if q.cmp_rational(&Rational::from_integer(1.into())) != Ordering::Greater {
        return Err(Error::BaseOutOfRange(format!("q = {q} must exceed 1")));
    }
    let top = Rational::from_integer(BigInt::from(alphabet.size()));
    if q.cmp_rational(&top) == Ordering::Greater {
        return Err(Error::BaseOutOfRange(format!(
            "q = {q} exceeds M + 1 = {}; one has no expansion",
            alphabet.size()
        )));
    }
    Ok(())
}

/// Lazily generated greedy expansion `beta(q)` of one.
pub fn greedy_stream(q: &AlgebraicNumber, alphabet: Alphabet) -> Result<DigitStream> {
    check_base(q, alphabet)?;
    Ok(DigitStream::from_engine(Engine::new(q, alphabet, Rule::Greedy)))
}

/// First `depth` digits of `beta(q)`.
pub fn greedy_expansion(q: &AlgebraicNumber, alphabet: Alphabet, depth: usize) -> Result<Word> {
    let s = greedy_stream(q, alphabet)?;
    Word::new(alphabet, s.prefix(depth))
}

/// `beta(q)` as an exact periodic sequence when finiteness or periodicity
/// shows up within `cfg.digit_depth` digits, otherwise as a stream.
pub fn beta_sequence(q: &AlgebraicNumber, alphabet: Alphabet, cfg: &DepthConfig) -> Result<Sequence> {
    let s = greedy_stream(q, alphabet)?;
    s.explore(cfg.digit_depth);
    Ok(match s.periodic_form() {
        Some(p) => Sequence::Periodic(p),
        None => Sequence::Stream(s),
    })
}

/// Quasi-greedy expansion `alpha(q)` of one.
///
/// A finite greedy expansion `b_1 ... b_m 0^inf` yields the periodic
/// sequence `(b_1 ... b_{m-1} (b_m - 1))^inf`; a greedy expansion with a
/// detected period is returned as is; otherwise a quasi-greedy stream.
pub fn quasi_greedy_expansion(q: &AlgebraicNumber, alphabet: Alphabet, cfg: &DepthConfig) -> Result<Sequence> {
    let greedy = greedy_stream(q, alphabet)?;
    greedy.explore(cfg.digit_depth);
    if let Some(m) = greedy.finite_at() {
        let mut period = greedy.prefix(m);
        period[m - 1] -= 1;
        return Ok(Sequence::Periodic(PeriodicSeq::canonical(alphabet, Vec::new(), period)));
    }
    if let Some(p) = greedy.periodic_form() {
        return Ok(Sequence::Periodic(p));
    }
    let quasi = DigitStream::from_engine(Engine::new(q, alphabet, Rule::QuasiGreedy));
    quasi.explore(cfg.digit_depth);
    Ok(match quasi.periodic_form() {
        Some(p) => Sequence::Periodic(p),
        None => Sequence::Stream(quasi),
    })
}

impl Engine {
    #[cfg(test)]
    fn remainder_is_positive(&self) -> bool {
        self.remainder.is_zero() || self.q.sign_of(&self.remainder) == Ordering::Greater
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_base, rat};

    fn base(s: &str) -> AlgebraicNumber {
        parse_base(s).unwrap()
    }

    fn m(k: u8) -> Alphabet {
        Alphabet::new(k).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let g = greedy_expansion(&AlgebraicNumber::golden(), m(1), 5).unwrap();
        assert_eq!(g.digits(), &[1, 1, 0, 0, 0]);
        assert_eq!(greedy_expansion(&base("2"), m(2), 4).unwrap().digits(), &[2, 0, 0, 0]);
        assert_eq!(greedy_expansion(&base("2"), m(1), 4).unwrap().digits(), &[1, 1, 1, 1]);
    }

    #[test]
    fn quasi_greedy_examples() {
        let cfg = DepthConfig::default();
        let a = quasi_greedy_expansion(&AlgebraicNumber::golden(), m(1), &cfg).unwrap();
        assert_eq!(a.as_periodic().unwrap().to_string(), "(10)");
        let a = quasi_greedy_expansion(&base("2"), m(1), &cfg).unwrap();
        assert_eq!(a.as_periodic().unwrap().to_string(), "(1)");
        let a = quasi_greedy_expansion(&base("2"), m(2), &cfg).unwrap();
        assert_eq!(a.as_periodic().unwrap().to_string(), "(1)");
        let a = quasi_greedy_expansion(&AlgebraicNumber::tribonacci(), m(1), &cfg).unwrap();
        assert_eq!(a.as_periodic().unwrap().to_string(), "(110)");
    }

    #[test]
    fn rejects_out_of_range_bases() {
        assert!(matches!(greedy_stream(&base("0.9"), m(1)), Err(Error::BaseOutOfRange(_))));
        assert!(matches!(greedy_stream(&base("1"), m(1)), Err(Error::BaseOutOfRange(_))));
        assert!(matches!(greedy_stream(&base("2.01"), m(1)), Err(Error::BaseOutOfRange(_))));
        assert!(greedy_stream(&base("3"), m(2)).is_ok());
    }

    #[test]
    fn rational_base_matches_float_recursion() {
        let q = rat(19, 10);
        let digits = greedy_expansion(&AlgebraicNumber::from_rational(q), m(1), 30).unwrap();
        // exact rational oracle
        let mut r = Rational::from_integer(1.into());
        let mut expected = Vec::new();
        for _ in 0..30 {
            let t = &r * rat(19, 10);
            let d = if t >= rat(1, 1) { 1 } else { 0 };
            r = t - rat(d, 1);
            expected.push(d as u8);
        }
        assert_eq!(digits.digits(), expected.as_slice());
    }

    #[test]
    fn quasi_remainders_stay_positive() {
        let mut e = Engine::new(&base("1.8"), m(1), Rule::QuasiGreedy);
        for _ in 0..40 {
            e.step();
            assert!(e.remainder_is_positive());
        }
        assert!(!e.digits.ends_with(&[0; 8]));
    }

    #[test]
    fn shifted_reflected_views_share_cache() {
        let s = greedy_stream(&base("1.7"), m(1)).unwrap();
        let head = s.prefix(20);
        let view = s.shift(3).reflect();
        for i in 0..10 {
            assert_eq!(view.digit(i), 1 - head[i + 3]);
        }
    }

    #[test]
    fn is_zero_helper_handles_zero_polynomial() {
        let e = Engine::new(&base("1.5"), m(1), Rule::Greedy);
        assert!(e.is_zero_at_q(&RatPoly::zero()));
        assert!(!e.is_zero_at_q(&RatPoly::constant(rat(1, 3))));
    }

    #[test]
    fn fractional_base_matches_exact_recursion() {
        // oracle: plain rational recursion r -> q r - floor(q r)
        let q = rat(17, 10);
        let w = greedy_expansion(&AlgebraicNumber::from_rational(q.clone()), m(1), 60).unwrap();
        let mut r = rat(1, 1);
        for &d in w.digits() {
            let t = &q * &r;
            let expected = t.floor().to_integer().to_u8().unwrap().min(1);
            assert_eq!(d, expected);
            r = t - rat(expected as i64, 1);
        }
    }
}

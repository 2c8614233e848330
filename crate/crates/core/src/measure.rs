//! Greedy-prefix parameter intervals, measure bounds for zero blocks in
//! greedy expansions and the zero-run experiment.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{decimal_floor, isolate_roots, AlgebraicNumber, Enclosure, RatPoly, Rational, DEFAULT_BITS};
use crate::expansion::{greedy_expansion, is_greedy_admissible, Alphabet, Word};

/// For a greedy prefix `eta` of length `n`: `q1` where `eta 0^inf` is the
/// greedy expansion of 1, `q3` where `eta 0^(t-1) 1` is, and `q2` where
/// `eta M^inf` sums to 1. Bases in `[q1, q3)` have `t` zeros after `eta`.
#[derive(Clone, Debug)]
pub struct IntervalTriple {
    pub prefix: Word,
    pub t: usize,
    pub q1: AlgebraicNumber,
    pub q3: AlgebraicNumber,
    pub q2: AlgebraicNumber,
    /// `q1 = 1`, the left end of the parameter range.
    pub boundary: bool,
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `x^len - sum eta_i x^(len-i)`.
fn prefix_poly(eta: &[u8], len: usize) -> RatPoly {
    let mut coeffs = vec![Rational::zero(); len + 1];
    coeffs[len] = Rational::one();
    for (i, &d) in eta.iter().enumerate() {
        coeffs[len - 1 - i] -= int(d as u64);
    }
    RatPoly::new(coeffs)
}

fn largest_root(p: &RatPoly, alphabet: Alphabet) -> AlgebraicNumber {
    isolate_roots(p, &Rational::one(), &int(alphabet.size() as u64))
        .into_iter()
        .last()
        .expect("a root in [1, M+1]")
}

pub fn interval_triple(prefix: &Word, t: usize) -> Result<IntervalTriple> {
    if !is_greedy_admissible(prefix) {
        return Err(Error::NotAdmissible(prefix.to_string()));
    }
    if t == 0 {
        return Err(Error::Invalid("t must be positive".into()));
    }
    let alphabet = prefix.alphabet();
    let eta = prefix.digits();
    let n = eta.len();
    let p1 = prefix_poly(eta, n);
    let mut p3 = prefix_poly(eta, n + t);
    p3 = p3.sub(&RatPoly::constant(Rational::one()));
    let x_minus_1 = RatPoly::new(vec![-Rational::one(), Rational::one()]);
    let p2 = p1.mul(&x_minus_1).sub(&RatPoly::constant(int(alphabet.max_digit() as u64)));
    let q1 = largest_root(&p1, alphabet);
    let q3 = largest_root(&p3, alphabet);
    let q2 = largest_root(&p2, alphabet);
    let boundary = q1.cmp_rational(&Rational::one()) == Ordering::Equal;
    Ok(IntervalTriple { prefix: prefix.clone(), t, q1, q3, q2, boundary })
}

/// Both sides of the relative-length bound
/// `(q3 - q1) / (q2 - q1) >= (q1 - 1)^3 / (M^2 q2^(t+2))`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioCheck {
    pub ratio: Enclosure,
    pub bound: Enclosure,
    pub holds: bool,
}

pub fn check_ratio_bound(tr: &IntervalTriple) -> Result<RatioCheck> {
    if tr.boundary {
        return Err(Error::DegenerateBoundary);
    }
    let e = |q: &AlgebraicNumber| q.refined_bits(DEFAULT_BITS).enclosure();
    let (q1, q2, q3) = (e(&tr.q1), e(&tr.q2), e(&tr.q3));
    let ratio = q3
        .sub(&q1)
        .checked_div(&q2.sub(&q1))
        .ok_or_else(|| Error::Invalid("q2 and q1 not separated".into()))?;
    let m = int(tr.prefix.alphabet().max_digit() as u64);
    let shifted = q1.add_scalar(&-Rational::one());
    let cube = shifted.mul(&shifted).mul(&shifted);
    let mut den = Enclosure::point(&m * &m);
    for _ in 0..tr.t + 2 {
        den = den.mul(&q2);
    }
    let bound = cube.checked_div(&den).expect("q2 > 1");
    let holds = ratio.lo() >= bound.hi();
    Ok(RatioCheck { ratio, bound, holds })
}

fn check_range(alphabet: Alphabet, p: &Rational, r: &Rational) -> Result<()> {
    let top = int(alphabet.size() as u64);
    if !(p > &Rational::one() && p < r && r <= &top) {
        return Err(Error::RangeError(format!("need 1 < p < r <= {top}, got p = {p}, r = {r}")));
    }
    Ok(())
}

/// `(p-1)^3 / (M^2 r^(t+2)) (r - p)`, a lower bound for the Lebesgue
/// measure of the bases in `[p, r)` whose greedy digits `n+1..n+t` vanish.
pub fn measure_lower_bound(alphabet: Alphabet, p: &Rational, r: &Rational, t: usize) -> Result<Enclosure> {
    check_range(alphabet, p, r)?;
    let m = int(alphabet.max_digit() as u64);
    let pm1 = p - Rational::one();
    let mut den = &m * &m;
    for _ in 0..t + 2 {
        den *= r;
    }
    Ok(Enclosure::point(&pm1 * &pm1 * &pm1 / den * (r - p)))
}

/// Monte Carlo estimate of the same measure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub hits: usize,
    pub samples: usize,
    /// `hits / samples * (r - p)`.
    pub measure: f64,
    /// Binomial standard error of `measure`.
    pub std_err: f64,
}

impl MeasureEstimate {
    /// One-sided comparison with a lower bound at `sigmas` standard errors.
    pub fn consistent_with(&self, bound: &Enclosure, sigmas: f64) -> bool {
        self.measure + sigmas * self.std_err >= bound.lo_f64()
    }
}

/// Sample `q = p + (r - p) u / 2^64` uniformly and count the bases with
/// `beta_(n+1) = ... = beta_(n+t) = 0`.
pub fn estimate_zero_block_measure(
    alphabet: Alphabet,
    p: &Rational,
    r: &Rational,
    n: usize,
    t: usize,
    samples: usize,
    seed: u64,
) -> Result<MeasureEstimate> {
    check_range(alphabet, p, r)?;
    let width = r - p;
    let qs: Vec<Rational> = sample_units(samples, seed).into_iter().map(|u| p + &width * u).collect();
    let hits = qs
        .par_iter()
        .map(|q| {
            let w = greedy_expansion(&AlgebraicNumber::from_rational(q.clone()), alphabet, n + t)?;
            Ok(w.digits()[n..].iter().all(|&d| d == 0))
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    let frac = hits as f64 / samples as f64;
    let w = width_f64(&width);
    Ok(MeasureEstimate {
        hits,
        samples,
        measure: frac * w,
        std_err: (frac * (1.0 - frac) / samples as f64).sqrt() * w,
    })
}

fn width_f64(r: &Rational) -> f64 {
    Enclosure::point(r.clone()).lo_f64()
}

/// `samples` uniform values `k / 2^64` with `k` in `[0, 2^64)`.
fn sample_units(samples: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = BigInt::from(BigUint::one() << 64u32);
    (0..samples).map(|_| Rational::new(BigInt::from(rng.gen::<u64>()), den.clone())).collect()
}

/// Prefix of a sequence `n_k` with `n_k > log_s(n_1 + ... + n_k)`, each
/// term chosen as small as possible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivergentSchedule {
    pub s: Rational,
    pub terms: Vec<u64>,
    /// Running sums of `s^(-n_k)`.
    pub reciprocal_sums: Vec<f64>,
}

impl DivergentSchedule {
    pub fn total(&self) -> u64 {
        self.terms.iter().sum()
    }
}

pub fn divergent_schedule(s: &Rational, count: usize) -> Result<DivergentSchedule> {
    if s <= &Rational::one() {
        return Err(Error::RangeError(format!("s = {s} must exceed 1")));
    }
    let s_f = width_f64(s);
    let mut terms = Vec::with_capacity(count);
    let mut sums = Vec::with_capacity(count);
    let mut total: u64 = 0;
    let mut acc = 0.0;
    // n_k grows like log S_k, so s^n is recomputed from a small cache
    let mut powers = vec![Rational::one()];
    let mut n: u64 = 1;
    for _ in 0..count {
        // n_k never decreases: S grows, so the smallest valid n cannot drop
        loop {
            while powers.len() <= n as usize {
                let next = powers.last().unwrap() * s;
                powers.push(next);
            }
            if powers[n as usize] > int(total + n) {
                break;
            }
            n += 1;
        }
        total += n;
        acc += s_f.powi(-(n as i32));
        terms.push(n);
        sums.push(acc);
    }
    Ok(DivergentSchedule { s: s.clone(), terms, reciprocal_sums: sums })
}

/// Outcome of the zero-run experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZeroRunReport {
    pub r: Rational,
    pub samples: usize,
    pub depth: usize,
    pub seed: u64,
    /// Sampled bases, in sampling order.
    pub bases: Vec<Rational>,
    /// Largest `m <= depth` such that `beta_1..beta_m` ends with more than
    /// `log_r m` zeros, per sample.
    pub deepest: Vec<Option<usize>>,
    pub fraction: f64,
}

impl ZeroRunReport {
    pub fn to_csv(&self, digits: u32) -> String {
        let mut out = String::from("q,deepest_m\n");
        for (q, m) in self.bases.iter().zip(&self.deepest) {
            let m = m.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{m}\n", decimal_floor(q, digits)));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.r.to_string(),
            "samples": self.samples,
            "depth": self.depth,
            "seed": self.seed,
            "successes": self.deepest.iter().filter(|m| m.is_some()).count(),
            "fraction": self.fraction,
        })
    }
}

/// Largest `m <= digits.len()` whose prefix ends with `z` zeros where
/// `r^z > m`.
pub fn deepest_qualifying(digits: &[u8], r: &Rational) -> Option<usize> {
    let mut r_pow = vec![Rational::one()];
    let mut best = None;
    let mut run = 0usize;
    for (i, &d) in digits.iter().enumerate() {
        run = if d == 0 { run + 1 } else { 0 };
        while r_pow.len() <= run {
            let next = r_pow.last().unwrap() * r;
            r_pow.push(next);
        }
        let m = i + 1;
        if run > 0 && r_pow[run] > int(m as u64) {
            best = Some(m);
        }
    }
    best
}

/// Samples `q = 1 + (r - 1)(k + 1) / 2^64` and looks for long zero runs in
/// the first `depth` greedy digits. Deterministic for a given seed.
pub fn zero_run_experiment(
    alphabet: Alphabet,
    r: &Rational,
    samples: usize,
    depth: usize,
    seed: u64,
) -> Result<ZeroRunReport> {
    if !(r > &Rational::one() && r <= &int(alphabet.size() as u64)) {
        return Err(Error::RangeError(format!("r = {r} must lie in (1, {}]", alphabet.size())));
    }
    if samples == 0 || depth == 0 {
        return Err(Error::Invalid("samples and depth must be positive".into()));
    }
    let step = (r - Rational::one()) / Rational::from_integer(BigInt::from(BigUint::one() << 64u32));
    let bases: Vec<Rational> = sample_units(samples, seed)
        .into_iter()
        .map(|u| {
            let k_plus_1 = u * Rational::from_integer(BigInt::from(BigUint::one() << 64u32)) + Rational::one();
            Rational::one() + &step * k_plus_1
        })
        .collect();
    let deepest = bases
        .par_iter()
        .map(|q| {
            let w = greedy_expansion(&AlgebraicNumber::from_rational(q.clone()), alphabet, depth)?;
            Ok(deepest_qualifying(w.digits(), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let fraction = deepest.iter().filter(|m| m.is_some()).count() as f64 / samples as f64;
    Ok(ZeroRunReport { r: r.clone(), samples, depth, seed, bases, deepest, fraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn word(m: u8, s: &str) -> Word {
        Word::parse(Alphabet::new(m).unwrap(), s).unwrap()
    }

    #[test]
    fn golden_tribonacci_two() {
        let tr = interval_triple(&word(1, "11"), 1).unwrap();
        assert_eq!(tr.q1, AlgebraicNumber::golden());
        assert_eq!(tr.q3, AlgebraicNumber::tribonacci());
        assert_eq!(tr.q2, AlgebraicNumber::from_integer(2));
        assert!(!tr.boundary);
    }

    #[test]
    fn triple_m2() {
        let tr = interval_triple(&word(2, "2"), 2).unwrap();
        assert_eq!(tr.q1, AlgebraicNumber::from_integer(2));
        assert_eq!(tr.q2, AlgebraicNumber::from_integer(3));
        // 2/x + 1/x^3 = 1
        let f = |x: f64| 2.0 / x + x.powi(-3) - 1.0;
        assert!(f(tr.q3.to_f64()).abs() < 1e-12);
        assert!((tr.q3.to_f64() - 2.2056).abs() < 1e-4);
    }

    #[test]
    fn degenerate_prefix() {
        let tr = interval_triple(&word(1, "1"), 1).unwrap();
        assert!(tr.boundary);
        assert!(matches!(check_ratio_bound(&tr), Err(Error::DegenerateBoundary)));
        assert!(matches!(interval_triple(&word(1, "1011"), 1), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn ratio_bound_examples() {
        let c = check_ratio_bound(&interval_triple(&word(1, "11"), 1).unwrap()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let trib = AlgebraicNumber::tribonacci().to_f64();
        assert!((c.ratio.lo_f64() - (trib - phi) / (2.0 - phi)).abs() < 1e-12);
        assert!((c.bound.lo_f64() - (phi - 1.0).powi(3) / 8.0).abs() < 1e-12);
        assert!(c.holds);
        let c5 = check_ratio_bound(&interval_triple(&word(1, "11"), 5).unwrap()).unwrap();
        assert!((c5.bound.lo_f64() * 16.0 - c.bound.lo_f64()).abs() < 1e-12);
        assert!(c5.holds);
        assert!(check_ratio_bound(&interval_triple(&word(2, "2"), 1).unwrap()).unwrap().holds);
    }

    #[test]
    fn measure_bound_examples() {
        let b = measure_lower_bound(Alphabet::binary(), &rat(9, 5), &rat(2, 1), 2).unwrap();
        assert_eq!(b, Enclosure::point(rat(64, 10000)));
        let b5 = measure_lower_bound(Alphabet::binary(), &rat(9, 5), &rat(2, 1), 5).unwrap();
        assert!(b5.hi() < b.lo());
        assert!(measure_lower_bound(Alphabet::binary(), &rat(2, 1), &rat(9, 5), 2).is_err());
        assert!(measure_lower_bound(Alphabet::binary(), &rat(1, 1), &rat(2, 1), 2).is_err());
    }

    #[test]
    fn empirical_measure_exceeds_bound() {
        let (p, r) = (rat(9, 5), rat(2, 1));
        let bound = measure_lower_bound(Alphabet::binary(), &p, &r, 2).unwrap();
        let est = estimate_zero_block_measure(Alphabet::binary(), &p, &r, 6, 2, 400, 7).unwrap();
        assert!(est.consistent_with(&bound, 3.0), "{est:?}");
    }

    #[test]
    fn schedule_examples() {
        let s2 = divergent_schedule(&rat(2, 1), 9).unwrap();
        assert_eq!(s2.terms, vec![1, 2, 3, 4, 4, 5, 5, 5, 6]);
        let s4 = divergent_schedule(&rat(4, 1), 5).unwrap();
        assert_eq!(s4.terms, vec![1, 1, 1, 2, 2]);
        let mut total = 0;
        for &n in &divergent_schedule(&rat(2, 1), 500).unwrap().terms {
            total += n;
            assert!(2f64.powi(n as i32) > total as f64);
        }
        assert!(divergent_schedule(&rat(1, 1), 3).is_err());
    }

    #[test]
    fn qualifying_prefixes() {
        let two = rat(2, 1);
        assert_eq!(deepest_qualifying(&[1], &two), None);
        assert_eq!(deepest_qualifying(&[1, 0, 0], &two), Some(3));
        assert_eq!(deepest_qualifying(&[1, 0, 0, 1, 1], &two), Some(3));
        assert_eq!(deepest_qualifying(&[1, 0, 1, 0], &two), None);
    }

    #[test]
    fn zero_runs_depth_one_and_determinism() {
        let r = rat(2, 1);
        let one = zero_run_experiment(Alphabet::binary(), &r, 50, 1, 3).unwrap();
        assert_eq!(one.fraction, 0.0);
        let a = zero_run_experiment(Alphabet::binary(), &r, 50, 40, 3).unwrap();
        let b = zero_run_experiment(Alphabet::binary(), &r, 50, 40, 3).unwrap();
        assert_eq!(a.deepest, b.deepest);
        assert_eq!(a.to_csv(20), b.to_csv(20));
        assert!(a.bases.iter().all(|q| q > &rat(1, 1) && q <= &r));
    }
}

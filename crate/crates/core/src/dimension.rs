//! Enclosures of the dimension function `D(q)`, the Komornik-Loreti
//! constant, parameter sweeps and related quantities.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{default_schedule, refine_entropy, sandwich, EntropyBounds};
use crate::error::{Error, Result};
use crate::exactnum::{
    decimal_ceil, decimal_floor, dyadic_ceil, dyadic_floor, ln_rational, AlgebraicNumber,
    Enclosure, RatPoly, Rational, DEFAULT_BITS,
};
use crate::expansion::{
    greedy_stream, in_univoque_u, quasi_greedy_expansion, Alphabet, DepthConfig, Membership, Sequence,
};
use crate::sft::Mode;

/// How a dimension enclosure was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionMethod {
    /// `q >= M + 1`: `ln(M+1) / ln q`.
    ClosedForm,
    /// `q` below the Komornik-Loreti constant: `D(q) = 0`.
    ZeroBelowKl,
    /// Entropy sandwich divided by `ln q`.
    Sandwich,
}

impl fmt::Display for DimensionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionMethod::ClosedForm => "closed_form",
            DimensionMethod::ZeroBelowKl => "zero_below_kl",
            DimensionMethod::Sandwich => "sandwich",
        })
    }
}

/// Certified enclosure of `D(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub enclosure: Enclosure,
    pub method: DimensionMethod,
    /// Window size of the subshifts used (0 when not applicable).
    pub depth: usize,
    /// Separation condition checked for both closed families at `depth`.
    pub certified: bool,
    /// Whether the requested tolerance was reached.
    pub tolerance_met: bool,
    /// Entropy bounds behind a sandwich estimate.
    pub entropy: Option<EntropyBounds>,
}

impl DimensionEstimate {
    pub fn lo_decimal(&self, digits: u32) -> String {
        self.enclosure.lo_decimal(digits)
    }

    pub fn hi_decimal(&self, digits: u32) -> String {
        self.enclosure.hi_decimal(digits)
    }

    pub fn width_f64(&self) -> f64 {
        self.enclosure.width_f64()
    }

    pub fn to_json(&self, digits: u32) -> serde_json::Value {
        serde_json::json!({
            "D_lo": self.lo_decimal(digits),
            "D_hi": self.hi_decimal(digits),
            "depth": self.depth,
            "method": self.method.to_string(),
            "certified": self.certified,
            "tolerance_met": self.tolerance_met,
        })
    }
}

/// Options for [`dimension`].
#[derive(Clone, Debug)]
pub struct DimensionOptions {
    /// Target width of the enclosure of `D(q)`.
    pub tol: Rational,
    /// Largest window size tried by the sandwich.
    pub max_depth: usize,
    pub depth: DepthConfig,
}

impl Default for DimensionOptions {
    fn default() -> Self {
        Self { tol: Rational::new(1.into(), 100.into()), max_depth: 4096, depth: DepthConfig::default() }
    }
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Prefix of `alpha(q')` for the Komornik-Loreti constant `q'`: start from
/// `floor(M/2) + 1` and repeatedly append the reflection of the current
/// word with its last digit increased by one.
pub fn kl_reference_word(alphabet: Alphabet, len: usize) -> Vec<u8> {
    let m = alphabet.max_digit();
    let mut w = vec![m / 2 + 1];
    while w.len() < len {
        let mut tail: Vec<u8> = w.iter().map(|&d| m - d).collect();
        *tail.last_mut().unwrap() += 1;
        w.extend(tail);
    }
    w.truncate(len);
    w
}

/// Whether `q` lies strictly below the Komornik-Loreti constant, decided
/// by comparing `beta(q)` with the reference word.
pub fn below_kl(q: &AlgebraicNumber, alphabet: Alphabet, cfg: &DepthConfig) -> Result<bool> {
    let beta = greedy_stream(q, alphabet)?;
    let reference = kl_reference_word(alphabet, cfg.compare_depth);
    for (i, &r) in reference.iter().enumerate() {
        match beta.digit(i).cmp(&r) {
            Ordering::Less => return Ok(true),
            Ordering::Greater => return Ok(false),
            Ordering::Equal => {}
        }
    }
    Err(Error::UndecidedAtDepth { depth: cfg.compare_depth })
}

/// Enclosure of the Komornik-Loreti constant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KlConstant {
    pub max_digit: u8,
    pub enclosure: Enclosure,
    /// Number of shift conditions verified at the upper endpoint.
    pub certificate_depth: usize,
    pub lower_membership: Membership,
    pub upper_membership: Membership,
}

/// Bisection for the smallest univoque base using the monotone predicate
/// [`below_kl`], down to interval width `width`.
pub fn kl_constant(alphabet: Alphabet, width: &Rational, cfg: &DepthConfig) -> Result<KlConstant> {
    if width <= &Rational::zero() {
        return Err(Error::Invalid("width must be positive".into()));
    }
    let mut lo = Rational::one();
    let mut hi = int(alphabet.size() as u64);
    let two = int(2);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if below_kl(&AlgebraicNumber::from_rational(mid.clone()), alphabet, cfg)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let upper = AlgebraicNumber::from_rational(hi.clone());
    let lower_membership = if lo.is_one() {
        Membership::RefutedAt(0)
    } else {
        in_univoque_u(&AlgebraicNumber::from_rational(lo.clone()), alphabet, cfg.compare_depth, cfg)?
    };
    let (upper_membership, certificate_depth) =
        match in_univoque_u(&upper, alphabet, cfg.compare_depth, cfg)? {
            Membership::RefutedAt(k) => (Membership::VerifiedTo(k - 1), k - 1),
            m @ Membership::VerifiedTo(n) => (m, n),
            Membership::Proved => (Membership::Proved, usize::MAX),
        };
    if certificate_depth == 0 {
        return Err(Error::CertificateDepthExceeded { depth: 0 });
    }
    Ok(KlConstant {
        max_digit: alphabet.max_digit(),
        enclosure: Enclosure::new(lo, hi),
        certificate_depth,
        lower_membership,
        upper_membership,
    })
}

/// Independent enclosure of the Komornik-Loreti constant from the first
/// `len` digits `w` of its expansion: the constant lies between the roots
/// of `pi_x(w 0^inf) = 1` and `pi_x(w M^inf) = 1` in `(1, M+1]`.
pub fn kl_from_reference_word(alphabet: Alphabet, len: usize) -> Enclosure {
    let w = kl_reference_word(alphabet, len);
    let m = alphabet.max_digit() as u64;
    // x^len - sum w_i x^(len-i)
    let mut coeffs = vec![Rational::zero(); len + 1];
    coeffs[len] = Rational::one();
    for (i, &d) in w.iter().enumerate() {
        coeffs[len - 1 - i] -= int(d as u64);
    }
    let p_zero_tail = RatPoly::new(coeffs);
    // tail M^inf adds M / (x^len (x - 1)): multiply through by (x - 1)
    let x_minus_1 = RatPoly::new(vec![-Rational::one(), Rational::one()]);
    let p_max_tail = p_zero_tail.mul(&x_minus_1).sub(&RatPoly::constant(int(m)));
    // each polynomial is x^len (1 - pi_x(..)) up to a positive factor, so it
    // has a single sign change on (1, M+1]
    let root = |p: &RatPoly| {
        let mut lo = Rational::one();
        let mut hi = int(alphabet.size() as u64 + 1);
        let two = int(2);
        for _ in 0..DEFAULT_BITS {
            let mid = (&lo + &hi) / &two;
            if p.sign_at_rational(&mid) == Ordering::Greater {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Enclosure::new(lo, hi)
    };
    let a = root(&p_zero_tail);
    let b = root(&p_max_tail);
    Enclosure::new(a.lo().clone(), b.hi().clone())
}

/// Enclosure of `ln q` for an algebraic `q > 0`.
pub fn ln_algebraic(q: &AlgebraicNumber, bits: u32) -> Enclosure {
    match q.as_rational() {
        Some(r) => ln_rational(r, bits),
        None => q.refined_bits(bits + 8).enclosure().ln(bits),
    }
}

/// `ln(M+1) / ln q`, exact when `q` and `M + 1` are powers of a common integer.
fn closed_form(q: &AlgebraicNumber, alphabet: Alphabet) -> Enclosure {
    let size = alphabet.size() as u64;
    if let Some(r) = q.as_rational().filter(|r| r.is_integer()) {
        if let Some(k) = r.to_integer().to_u64() {
            if let Some(ratio) = log_ratio(size, k) {
                return Enclosure::point(ratio);
            }
        }
    }
    let num = ln_rational(&int(size), DEFAULT_BITS);
    let den = ln_algebraic(q, DEFAULT_BITS);
    num.checked_div(&den).expect("ln q > 0").clamp(&Rational::zero(), &Rational::one())
}

/// `log a / log b` as an exact rational when `a = c^s` and `b = c^t`.
fn log_ratio(a: u64, b: u64) -> Option<Rational> {
    let root = |x: u64| -> (u64, u32) {
        for e in (2..=63u32).rev() {
            let c = (x as f64).powf(1.0 / e as f64).round() as u64;
            for c in c.saturating_sub(1)..=c + 1 {
                if c >= 2 && c.checked_pow(e) == Some(x) {
                    return (c, e);
                }
            }
        }
        (x, 1)
    };
    let (ca, ea) = root(a);
    let (cb, eb) = root(b);
    (ca == cb).then(|| Rational::new(BigInt::from(ea), BigInt::from(eb)))
}

/// `N` = first index with digit `< M` in the relevant expansion, then
/// check `q^(n-N) (q - 1) > M` exactly.
pub fn certify_separation_family(
    q: &AlgebraicNumber,
    alphabet: Alphabet,
    n: usize,
    family: Mode,
    cfg: &DepthConfig,
) -> Result<bool> {
    let seq: Sequence = match family {
        Mode::ClosedW => Sequence::Stream(greedy_stream(q, alphabet)?),
        _ => quasi_greedy_expansion(q, alphabet, cfg)?,
    };
    let m = alphabet.max_digit();
    let big_n = (0..cfg.digit_depth)
        .find(|&i| seq.digit(i) < m)
        .map(|i| i + 1)
        .ok_or(Error::DepthExceeded { depth: cfg.digit_depth })?;
    let x_minus_1 = RatPoly::new(vec![-Rational::one(), Rational::one()]);
    let mm = RatPoly::constant(int(m as u64));
    let p = if n >= big_n {
        RatPoly::monomial(Rational::one(), n - big_n).mul(&x_minus_1).sub(&mm)
    } else {
        x_minus_1.sub(&RatPoly::monomial(int(m as u64), big_n - n))
    };
    Ok(q.sign_of(&p) == Ordering::Greater)
}

/// Separation check for the quasi-greedy families.
pub fn certify_separation(q: &AlgebraicNumber, alphabet: Alphabet, n: usize, cfg: &DepthConfig) -> Result<bool> {
    certify_separation_family(q, alphabet, n, Mode::ClosedV, cfg)
}

fn certified_both(q: &AlgebraicNumber, alphabet: Alphabet, n: usize, cfg: &DepthConfig) -> bool {
    let ok = |mode| certify_separation_family(q, alphabet, n, mode, cfg).unwrap_or(false);
    ok(Mode::ClosedV) && ok(Mode::ClosedW)
}

fn sandwich_estimate(
    q: &AlgebraicNumber,
    alphabet: Alphabet,
    h: EntropyBounds,
    tol: &Rational,
    cfg: &DepthConfig,
) -> DimensionEstimate {
    let ln_q = ln_algebraic(q, DEFAULT_BITS);
    let lo = &h.lower / ln_q.hi();
    let hi = &h.upper / ln_q.lo();
    let enclosure = Enclosure::new(dyadic_floor(&lo, 96), dyadic_ceil(&hi, 96).max(dyadic_floor(&lo, 96)))
        .clamp(&Rational::zero(), &Rational::one());
    DimensionEstimate {
        tolerance_met: &enclosure.width() <= tol,
        certified: certified_both(q, alphabet, h.depth, cfg),
        depth: h.depth,
        method: DimensionMethod::Sandwich,
        enclosure,
        entropy: Some(h),
    }
}

/// Certified enclosure of `D(q)`.
///
/// Returns [`Error::AmbiguousRegion`] with a conservative estimate when `q`
/// cannot be placed relative to the Komornik-Loreti constant.
pub fn dimension(q: &AlgebraicNumber, alphabet: Alphabet, opts: &DimensionOptions) -> Result<DimensionEstimate> {
    let cfg = &opts.depth;
    if q.cmp_rational(&Rational::one()) != Ordering::Greater {
        return Err(Error::BaseOutOfRange(format!("q = {q} must exceed 1")));
    }
    if q.cmp_rational(&int(alphabet.size() as u64)) != Ordering::Less {
        return Ok(DimensionEstimate {
            enclosure: closed_form(q, alphabet),
            method: DimensionMethod::ClosedForm,
            depth: 0,
            certified: true,
            tolerance_met: true,
            entropy: None,
        });
    }
    match below_kl(q, alphabet, cfg) {
        Ok(true) => {
            return Ok(DimensionEstimate {
                enclosure: Enclosure::point(Rational::zero()),
                method: DimensionMethod::ZeroBelowKl,
                depth: 0,
                certified: true,
                tolerance_met: true,
                entropy: None,
            })
        }
        Ok(false) => {}
        Err(Error::UndecidedAtDepth { .. }) => {
            let n = opts.max_depth.min(64);
            let (_, upper) = sandwich(q, alphabet, n, cfg)?;
            let h = EntropyBounds {
                lower: Rational::zero(),
                upper: upper.hi().clone(),
                depth: n,
                source: crate::entropy::EntropySource::Sandwich,
            };
            let mut est = sandwich_estimate(q, alphabet, h, &opts.tol, cfg);
            est.tolerance_met = false;
            return Err(Error::AmbiguousRegion { conservative: Box::new(est) });
        }
        Err(e) => return Err(e),
    }
    let ln_q = ln_algebraic(q, DEFAULT_BITS);
    // a gap of tol * ln q in entropy gives roughly tol in dimension
    let h_tol = &opts.tol * ln_q.lo() * Rational::new(9.into(), 10.into());
    let schedule = default_schedule(opts.max_depth);
    let h = match refine_entropy(q, alphabet, &h_tol, &schedule, cfg) {
        Ok(h) => h,
        Err(Error::ToleranceNotReached { best }) => *best,
        Err(e) => return Err(e),
    };
    Ok(sandwich_estimate(q, alphabet, h, &opts.tol, cfg))
}

/// One grid point of a sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub q: Rational,
    pub result: std::result::Result<DimensionEstimate, String>,
}

pub const SWEEP_CSV_HEADER: &str = "q,D_lo,D_hi,depth,method,certified";

/// `D(q)` at every grid point, evaluated in parallel, in grid order.
pub fn staircase_sweep(alphabet: Alphabet, grid: &[Rational], opts: &DimensionOptions) -> Vec<SweepRow> {
    grid.par_iter()
        .map(|q| SweepRow {
            q: q.clone(),
            result: dimension(&AlgebraicNumber::from_rational(q.clone()), alphabet, opts).map_err(|e| e.to_string()),
        })
        .collect()
}

/// Decimal form of a grid point, exact when it terminates within `digits`.
pub fn format_grid_point(q: &Rational, digits: u32) -> String {
    decimal_floor(q, digits)
}

impl SweepRow {
    /// CSV line in the column order of [`SWEEP_CSV_HEADER`]. Failed points
    /// have empty numeric fields and method `error`.
    pub fn to_csv(&self, digits: u32) -> String {
        let q = format_grid_point(&self.q, digits);
        match &self.result {
            Ok(e) => format!(
                "{q},{},{},{},{},{}",
                e.lo_decimal(digits),
                e.hi_decimal(digits),
                e.depth,
                e.method,
                e.certified
            ),
            Err(_) => format!("{q},,,,error,false"),
        }
    }

    pub fn to_json(&self, digits: u32) -> serde_json::Value {
        let q = format_grid_point(&self.q, digits);
        match &self.result {
            Ok(e) => {
                let mut v = e.to_json(digits);
                v["q"] = serde_json::Value::String(q);
                v
            }
            Err(msg) => serde_json::json!({ "q": q, "method": "error", "error": msg }),
        }
    }
}

/// `-h / (q ln^2 q)`, the slope of `h / ln q` where `h` is locally constant.
pub fn plateau_derivative(q: &AlgebraicNumber, h: &Enclosure) -> Enclosure {
    let ln_q = ln_algebraic(q, DEFAULT_BITS);
    let qe = q.refined_bits(DEFAULT_BITS).enclosure();
    let den = qe.mul(&ln_q).mul(&ln_q);
    h.neg().checked_div(&den).expect("q > 1")
}

/// Lower bound `sigma(N)` for the dimension of the univoque bases.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaBound {
    pub n: usize,
    /// `ln((M+1)^N - 2) / (N ln(M+1))`.
    pub sigma: Enclosure,
    /// Exact value when `(M+1)^N - 2` is a power of `M + 1`.
    pub exact: Option<Rational>,
    /// `(q' - 1)^2 / (M (M+1)^(2N))` with `q'` the Komornik-Loreti constant.
    pub separation_constant: Enclosure,
}

pub fn sigma_lower_bound(alphabet: Alphabet, n: usize) -> Result<SigmaBound> {
    let base = BigUint::from(alphabet.size());
    let total: BigUint = Pow::pow(&base, n);
    if n < 2 || total <= BigUint::from(3u32) {
        return Err(Error::Invalid("sigma needs N >= 2 and (M+1)^N > 3".into()));
    }
    let k = &total - 2u32;
    let mut exact = None;
    let mut p = BigUint::one();
    for j in 0..n {
        if p == k {
            exact = Some(Rational::new(BigInt::from(j), BigInt::from(n)));
        }
        p *= &base;
    }
    let sigma = match &exact {
        Some(r) => Enclosure::point(r.clone()),
        None => {
            let num = ln_rational(&Rational::from_integer(BigInt::from(k)), DEFAULT_BITS);
            let den = ln_rational(&int(alphabet.size() as u64), DEFAULT_BITS).mul(&Enclosure::point(int(n as u64)));
            num.checked_div(&den).expect("positive")
        }
    };
    let kl = kl_from_reference_word(alphabet, 64);
    let shifted = kl.add_scalar(&-Rational::one());
    let denom = int(alphabet.max_digit() as u64) * Rational::from_integer(BigInt::from(Pow::pow(&base, 2 * n)));
    let separation_constant = shifted.mul(&shifted).checked_div(&Enclosure::point(denom)).expect("positive");
    Ok(SigmaBound { n, sigma, exact, separation_constant })
}

/// `((M+1)^N - 2)^(n-2)`, the number of length-`nN` prefixes of the
/// block-structured subset used for the lower bound.
pub fn hat_u_block_count(alphabet: Alphabet, big_n: usize, n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Invalid("block count needs n >= 2".into()));
    }
    let base = BigUint::from(alphabet.size());
    let per_block: BigUint = Pow::pow(&base, big_n) - 2u32;
    Ok(Pow::pow(&per_block, n - 2))
}

impl fmt::Display for DimensionEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_lo={},D_hi={},method={}", decimal_floor(self.enclosure.lo(), 12), decimal_ceil(self.enclosure.hi(), 12), self.method)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_base, rat};

    fn thue_morse(i: usize) -> u8 {
        (i.count_ones() % 2) as u8
    }

    #[test]
    fn reference_word_is_shifted_thue_morse() {
        let w = kl_reference_word(Alphabet::binary(), 256);
        for (i, &d) in w.iter().enumerate() {
            assert_eq!(d, thue_morse(i + 1));
        }
    }

    #[test]
    fn reference_word_general_alphabet() {
        // even M = 2m: m + t_i - t_{i-1}; odd M = 2m + 1: m + t_i
        for m in 1..=6u8 {
            let w = kl_reference_word(Alphabet::new(m).unwrap(), 128);
            for (i, &d) in w.iter().enumerate() {
                let i = i + 1;
                let expected = if m % 2 == 0 {
                    (m / 2) as i32 + thue_morse(i) as i32 - thue_morse(i - 1) as i32
                } else {
                    (m / 2 + thue_morse(i)) as i32
                };
                assert_eq!(d as i32, expected, "M={m} i={i}");
            }
        }
    }

    #[test]
    fn kl_binary() {
        let cfg = DepthConfig::default();
        let kl = kl_constant(Alphabet::binary(), &rat(1, 1_000_000), &cfg).unwrap();
        assert!(kl.enclosure.lo() >= &rat(178723, 100000) && kl.enclosure.hi() <= &rat(178724, 100000));
        assert!(kl.enclosure.width() <= rat(1, 1_000_000));
        assert!(!kl.lower_membership.holds());
        assert!(kl.certificate_depth >= 1);
        let reference = kl_from_reference_word(Alphabet::binary(), 64);
        assert!(reference.width_f64() < 1e-15);
        assert!(kl.enclosure.intersect(&reference).is_some());
        assert!(AlgebraicNumber::golden().cmp_rational(kl.enclosure.lo()) == Ordering::Less);
    }

    #[test]
    fn closed_forms() {
        let opts = DimensionOptions::default();
        let d4 = dimension(&parse_base("4").unwrap(), Alphabet::binary(), &opts).unwrap();
        assert_eq!(d4.enclosure, Enclosure::point(rat(1, 2)));
        let d8 = dimension(&parse_base("8").unwrap(), Alphabet::binary(), &opts).unwrap();
        assert_eq!(d8.enclosure, Enclosure::point(rat(1, 3)));
        let d3 = dimension(&parse_base("3").unwrap(), Alphabet::binary(), &opts).unwrap();
        let expected = 2f64.ln() / 3f64.ln();
        assert!(d3.enclosure.lo_f64() <= expected && expected <= d3.enclosure.hi_f64());
        assert!(d3.width_f64() < 1e-30);
        assert_eq!(log_ratio(9, 27), Some(rat(2, 3)));
        assert_eq!(log_ratio(2, 6), None);
    }

    #[test]
    fn zero_region() {
        let opts = DimensionOptions::default();
        let d = dimension(&parse_base("1.5").unwrap(), Alphabet::binary(), &opts).unwrap();
        assert_eq!(d.method, DimensionMethod::ZeroBelowKl);
        assert_eq!(d.enclosure, Enclosure::point(rat(0, 1)));
        assert!(dimension(&parse_base("1").unwrap(), Alphabet::binary(), &opts).is_err());
    }

    #[test]
    fn separation_examples() {
        let cfg = DepthConfig::default();
        let t = AlgebraicNumber::tribonacci();
        assert!(certify_separation(&t, Alphabet::binary(), 8, &cfg).unwrap());
        assert!(matches!(
            certify_separation(&parse_base("2").unwrap(), Alphabet::binary(), 8, &cfg),
            Err(Error::DepthExceeded { .. })
        ));
        assert!(certify_separation(&parse_base("2").unwrap(), Alphabet::new(2).unwrap(), 4, &cfg).unwrap());
    }

    #[test]
    fn plateau_derivative_examples() {
        let four = parse_base("4").unwrap();
        let d = plateau_derivative(&four, &ln_rational(&rat(2, 1), 128));
        assert!((d.lo_f64() + 0.090_168).abs() < 1e-5, "{d}");
        let zero = plateau_derivative(&four, &Enclosure::point(rat(0, 1)));
        assert_eq!(zero, Enclosure::point(rat(0, 1)));
        let e = parse_base("2.718281828459045").unwrap();
        let d = plateau_derivative(&e, &Enclosure::point(rat(1, 1)));
        assert!((d.lo_f64() + (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn sigma_values() {
        let s2 = sigma_lower_bound(Alphabet::binary(), 2).unwrap();
        assert_eq!(s2.exact, Some(rat(1, 2)));
        let s10 = sigma_lower_bound(Alphabet::binary(), 10).unwrap();
        let oracle = 1022f64.ln() / (10.0 * 2f64.ln());
        assert!(s10.sigma.lo_f64() <= oracle + 1e-15 && oracle - 1e-15 <= s10.sigma.hi_f64());
        assert!(s10.sigma.width_f64() < 1e-30);
        let mut last = s2.sigma.hi().clone();
        for n in 3..=20 {
            let s = sigma_lower_bound(Alphabet::binary(), n).unwrap();
            assert!(s.sigma.lo() > &last);
            last = s.sigma.hi().clone();
        }
        assert!(sigma_lower_bound(Alphabet::binary(), 1).is_err());
        assert!(s2.separation_constant.lo_f64() > 0.0);
    }

    #[test]
    fn block_counts() {
        assert_eq!(hat_u_block_count(Alphabet::binary(), 2, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(hat_u_block_count(Alphabet::binary(), 2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(hat_u_block_count(Alphabet::new(2).unwrap(), 2, 4).unwrap(), BigUint::from(49u32));
    }

    #[test]
    fn sweep_rows_are_ordered() {
        let grid = vec![rat(4, 1), rat(8, 1), rat(16, 1), rat(11, 10), rat(3, 2)];
        let rows = staircase_sweep(Alphabet::binary(), &grid, &DimensionOptions::default());
        let csv: Vec<String> = rows.iter().map(|r| r.to_csv(6)).collect();
        assert_eq!(
            csv,
            vec![
                "4,0.5,0.5,0,closed_form,true",
                "8,0.333333,0.333334,0,closed_form,true",
                "16,0.25,0.25,0,closed_form,true",
                "1.1,0,0,0,zero_below_kl,true",
                "1.5,0,0,0,zero_below_kl,true",
            ]
        );
    }
}

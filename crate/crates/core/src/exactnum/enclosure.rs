use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{dyadic_ceil, dyadic_floor, pow10, Rational};

/// Default working precision, in bits, for transcendental enclosures.
pub const DEFAULT_BITS: u32 = 128;

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::point(Rational::from_integer(BigInt::from(n)))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn add_scalar(&self, c: &Rational) -> Enclosure {
        Enclosure { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    /// `None` when the divisor straddles or touches zero.
    pub fn checked_div(&self, other: &Enclosure) -> Option<Enclosure> {
        if other.lo.is_positive() || other.hi.is_negative() {
            let inv = Enclosure { lo: other.hi.recip(), hi: other.lo.recip() };
            Some(self.mul(&inv))
        } else {
            None
        }
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Enclosure { lo, hi })
    }

    pub fn clamp(&self, floor: &Rational, ceil: &Rational) -> Enclosure {
        let lo = self.lo.clone().max(floor.clone()).min(ceil.clone());
        let hi = self.hi.clone().min(ceil.clone()).max(lo.clone());
        Enclosure { lo, hi }
    }

    /// Round endpoints outward onto the grid `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Enclosure {
        Enclosure { lo: dyadic_floor(&self.lo, bits), hi: dyadic_ceil(&self.hi, bits) }
    }

    /// Natural logarithm. Panics unless the enclosure is strictly positive.
    pub fn ln(&self, bits: u32) -> Enclosure {
        assert!(self.is_positive(), "logarithm of a non-positive enclosure");
        let lo = ln_rational(&self.lo, bits).lo;
        let hi = ln_rational(&self.hi, bits).hi;
        Enclosure { lo, hi }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap_or(f64::INFINITY)
    }

    /// Lower endpoint rounded down to `digits` decimals.
    pub fn lo_decimal(&self, digits: u32) -> String {
        decimal_floor(&self.lo, digits)
    }

    /// Upper endpoint rounded up to `digits` decimals.
    pub fn hi_decimal(&self, digits: u32) -> String {
        decimal_ceil(&self.hi, digits)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_decimal(12), self.hi_decimal(12))
    }
}

/// Decimal string of `floor(x * 10^digits) / 10^digits`, trailing zeros removed.
pub fn decimal_floor(x: &Rational, digits: u32) -> String {
    let scaled = (x * Rational::from_integer(pow10(digits))).floor().to_integer();
    format_scaled(scaled, digits)
}

pub fn decimal_ceil(x: &Rational, digits: u32) -> String {
    let scaled = (x * Rational::from_integer(pow10(digits))).ceil().to_integer();
    format_scaled(scaled, digits)
}

fn format_scaled(scaled: BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (int, frac) = padded.split_at(padded.len() - d);
    let frac = frac.trim_end_matches('0');
    let body = if frac.is_empty() { int.to_string() } else { format!("{int}.{frac}") };
    if neg && body.chars().any(|c| c != '0' && c != '.') {
        format!("-{body}")
    } else {
        body
    }
}

/// Rigorous enclosure of `ln x` for rational `x > 0`, of width roughly `2^-bits`.
pub fn ln_rational(x: &Rational, bits: u32) -> Enclosure {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    if x.is_one() {
        return Enclosure::point(Rational::zero());
    }
    let two = Rational::from_integer(BigInt::from(2));
    let k0 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut k = k0;
    let mut y = x / pow2_signed(k);
    let upper = Rational::new(4.into(), 3.into());
    let lower = Rational::new(2.into(), 3.into());
    while y > upper {
        y /= &two;
        k += 1;
    }
    while y < lower {
        y *= &two;
        k -= 1;
    }
    let work = bits + 16;
    let y_range = Enclosure::new(dyadic_floor(&y, work + 4), dyadic_ceil(&y, work + 4));
    let ln_y = Enclosure {
        lo: ln_near_one(&y_range.lo, work).lo,
        hi: ln_near_one(&y_range.hi, work).hi,
    };
    let kk = Rational::from_integer(BigInt::from(k));
    let ln2 = ln2_enclosure(work);
    let scaled = Enclosure::point(kk).mul(&ln2);
    ln_y.add(&scaled).round_outward(bits + 8)
}

fn pow2_signed(k: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << k.unsigned_abs());
    if k >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `ln y = 2 atanh((y-1)/(y+1))` for `y` near one.
fn ln_near_one(y: &Rational, bits: u32) -> Enclosure {
    let one = Rational::one();
    let z = (y - &one) / (y + &one);
    atanh_doubled(&z, bits)
}

/// Enclosure of `2 atanh(z)` for `|z| < 1`.
fn atanh_doubled(z: &Rational, bits: u32) -> Enclosure {
    let one = Rational::one();
    let z2 = z * z;
    let eps = pow2_signed(-(bits as i64) - 4);
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let mut j: u64 = 0;
    loop {
        let denom = Rational::from_integer(BigInt::from(2 * j + 1));
        sum += &power / &denom;
        power = dyadic_trim(&(&power * &z2), bits + 32);
        j += 1;
        // remaining terms are bounded by |z|^(2j+1) / ((2j+1)(1 - z^2))
        let tail = power.abs() / (Rational::from_integer(BigInt::from(2 * j + 1)) * (&one - &z2));
        // power was truncated; add the truncation slack
        let tail = tail + pow2_signed(-(bits as i64) - 30);
        if tail < eps {
            let two = Rational::from_integer(BigInt::from(2));
            let s = dyadic_trim(&sum, bits + 32);
            let slack = pow2_signed(-(bits as i64) - 30) * Rational::from_integer(BigInt::from(j + 1));
            let lo = (&s - &tail - &slack) * &two;
            let hi = (&s + &tail + &slack) * &two;
            return Enclosure { lo, hi }.round_outward(bits + 4);
        }
    }
}

/// Truncate toward zero on the grid `2^-bits`.
fn dyadic_trim(x: &Rational, bits: u32) -> Rational {
    if x.is_negative() {
        dyadic_ceil(x, bits)
    } else {
        dyadic_floor(x, bits)
    }
}

fn ln2_enclosure(bits: u32) -> Enclosure {
    static CACHE: OnceLock<Enclosure> = OnceLock::new();
    const CACHED_BITS: u32 = 320;
    if bits <= CACHED_BITS {
        CACHE
            .get_or_init(|| atanh_doubled(&Rational::new(1.into(), 3.into()), CACHED_BITS))
            .clone()
    } else {
        atanh_doubled(&Rational::new(1.into(), 3.into()), bits)
    }
}

//! Digit sequences over `{0, ..., M}`: greedy and quasi-greedy expansions
//! of one, lexicographic order, uniqueness and univoque-base tests.

mod lex;
mod stream;
mod unique;

pub use lex::{eval_pi, lex_compare, PiValue};
pub use stream::{
    beta_sequence, check_base, greedy_expansion, greedy_stream, quasi_greedy_expansion, DigitStream,
};
pub use unique::{
    in_u_closure, in_univoque_u, is_greedy_admissible, is_unique_expansion, satisfies_univoque_conditions,
};

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Digit alphabet `{0, ..., M}` with `M >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    max_digit: u8,
}

impl Alphabet {
    pub fn new(max_digit: u8) -> Result<Self> {
        if max_digit == 0 {
            return Err(Error::Invalid("alphabet needs M >= 1".into()));
        }
        Ok(Self { max_digit })
    }

    pub fn binary() -> Self {
        Self { max_digit: 1 }
    }

    /// The largest digit `M`.
    pub fn max_digit(self) -> u8 {
        self.max_digit
    }

    /// Number of symbols, `M + 1`.
    pub fn size(self) -> u32 {
        self.max_digit as u32 + 1
    }

    pub fn contains(self, d: u8) -> bool {
        d <= self.max_digit
    }

    pub fn reflect_digit(self, d: u8) -> u8 {
        self.max_digit - d
    }

    fn check(self, digits: &[u8]) -> Result<()> {
        match digits.iter().find(|&&d| d > self.max_digit) {
            Some(d) => Err(Error::Invalid(format!("digit {d} outside alphabet 0..={}", self.max_digit))),
            None => Ok(()),
        }
    }

    fn separator(self) -> &'static str {
        if self.max_digit <= 9 {
            ""
        } else {
            ","
        }
    }
}

/// Depth caps for lazily generated digit sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthConfig {
    /// How many digits of an expansion are generated while looking for
    /// finiteness or periodicity.
    pub digit_depth: usize,
    /// How many digits a lexicographic comparison may inspect before it is
    /// declared undecided.
    pub compare_depth: usize,
}

impl Default for DepthConfig {
    fn default() -> Self {
        Self { digit_depth: 256, compare_depth: 512 }
    }
}

/// Outcome of a membership test that may only be checkable to finite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    /// All conditions hold, decided exactly.
    Proved,
    /// No violation among the first `n` shift conditions.
    VerifiedTo(usize),
    /// The shift condition with index `k` fails.
    RefutedAt(usize),
}

impl Membership {
    pub fn holds(self) -> bool {
        !matches!(self, Membership::RefutedAt(_))
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Proved => write!(f, "proved"),
            Membership::VerifiedTo(n) => write!(f, "verified_to({n})"),
            Membership::RefutedAt(k) => write!(f, "refuted_at({k})"),
        }
    }
}

/// A finite block of digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    digits: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(alphabet: Alphabet, digits: Vec<u8>) -> Result<Self> {
        alphabet.check(&digits)?;
        Ok(Self { digits, alphabet })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn reflect(&self) -> Word {
        let digits = self.digits.iter().map(|&d| self.alphabet.reflect_digit(d)).collect();
        Word { digits, alphabet: self.alphabet }
    }

    /// Parse a digit string such as `11010` (or `1,10,3` when `M > 9`).
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Self> {
        Self::new(alphabet, parse_digits(alphabet, s)?)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(self.alphabet, &self.digits))
    }
}

/// An eventually periodic sequence `u v v v ...` in canonical form.
///
/// The period is primitive and the preperiod is as short as possible. A
/// sequence ending in `0^inf` is stored with an empty period and no
/// trailing zeros in the preperiod.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicSeq {
    preperiod: Vec<u8>,
    period: Vec<u8>,
    alphabet: Alphabet,
}

impl PeriodicSeq {
    pub fn new(alphabet: Alphabet, preperiod: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        alphabet.check(&preperiod)?;
        alphabet.check(&period)?;
        Ok(Self::canonical(alphabet, preperiod, period))
    }

    /// Finite word followed by `0^inf`.
    pub fn finite(alphabet: Alphabet, digits: Vec<u8>) -> Result<Self> {
        Self::new(alphabet, digits, Vec::new())
    }

    /// Purely periodic `v^inf`.
    pub fn purely_periodic(alphabet: Alphabet, period: Vec<u8>) -> Result<Self> {
        Self::new(alphabet, Vec::new(), period)
    }

    pub(crate) fn canonical(alphabet: Alphabet, mut pre: Vec<u8>, mut period: Vec<u8>) -> Self {
        if period.iter().all(|&d| d == 0) {
            period.clear();
            while pre.last() == Some(&0) {
                pre.pop();
            }
            return Self { preperiod: pre, period, alphabet };
        }
        let n = period.len();
        if let Some(p) = (1..=n).find(|&p| n.is_multiple_of(p) && period.chunks(p).all(|c| c == &period[..p])) {
            period.truncate(p);
        }
        while let (Some(&a), Some(&b)) = (pre.last(), period.last()) {
            if a != b {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        Self { preperiod: pre, period, alphabet }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    /// Empty iff the sequence ends in `0^inf`.
    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_eventually_zero(&self) -> bool {
        self.period.is_empty()
    }

    /// Period length, counting the implicit `0` period as length one.
    pub(crate) fn cycle_len(&self) -> usize {
        self.period.len().max(1)
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> u8 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// Drop the first `k` digits.
    pub fn shift(&self, k: usize) -> PeriodicSeq {
        let l = self.preperiod.len();
        if k <= l {
            return Self::canonical(self.alphabet, self.preperiod[k..].to_vec(), self.period.clone());
        }
        let mut period = self.period.clone();
        if !period.is_empty() {
            let r = (k - l) % period.len();
            period.rotate_left(r);
        }
        Self::canonical(self.alphabet, Vec::new(), period)
    }

    pub fn reflect(&self) -> PeriodicSeq {
        let m = self.alphabet;
        let pre = self.preperiod.iter().map(|&d| m.reflect_digit(d)).collect();
        let period = if self.period.is_empty() { vec![m.max_digit] } else {
            self.period.iter().map(|&d| m.reflect_digit(d)).collect()
        };
        Self::canonical(m, pre, period)
    }

    /// Exact lexicographic comparison.
    pub fn lex_cmp(&self, other: &PeriodicSeq) -> Ordering {
        let n = self.preperiod.len().max(other.preperiod.len()) + self.cycle_len().lcm(&other.cycle_len());
        (0..n)
            .map(|i| self.digit(i).cmp(&other.digit(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Parse `110(10)`, optionally with a trailing `^inf`. Without
    /// parentheses the digits are followed by `0^inf`.
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_suffix("^inf").unwrap_or(s);
        match s.split_once('(') {
            None => Self::finite(alphabet, parse_digits(alphabet, s)?),
            Some((pre, rest)) => {
                let period = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
                let period = parse_digits(alphabet, period)?;
                if period.is_empty() {
                    return Err(Error::Parse("empty period".into()));
                }
                Self::new(alphabet, parse_digits(alphabet, pre.trim_end_matches(','))?, period)
            }
        }
    }

    /// Text form with an explicit `^inf` marker, e.g. `(10)^inf`.
    pub fn to_inf_notation(&self) -> String {
        format!("{self}^inf")
    }
}

impl fmt::Display for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.alphabet;
        let period = if self.period.is_empty() { vec![0] } else { self.period.clone() };
        let sep = if self.preperiod.is_empty() { "" } else { m.separator() };
        write!(
            f,
            "{}{sep}({})",
            format_digits(m, &self.preperiod),
            format_digits(m, &period)
        )
    }
}

fn format_digits(alphabet: Alphabet, digits: &[u8]) -> String {
    digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(alphabet.separator())
}

fn parse_digits(alphabet: Alphabet, s: &str) -> Result<Vec<u8>> {
    let bad = || Error::Parse(format!("invalid digit string {s:?}"));
    let digits: Vec<u8> = if s.is_empty() {
        Vec::new()
    } else if alphabet.max_digit > 9 || s.contains(',') {
        s.split(',').map(|t| t.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<_>>()?
    };
    alphabet.check(&digits)?;
    Ok(digits)
}

/// A digit sequence: exact eventually periodic, or lazily generated.
#[derive(Clone, Debug)]
pub enum Sequence {
    Periodic(PeriodicSeq),
    Stream(DigitStream),
}

impl Sequence {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            Sequence::Periodic(p) => p.alphabet(),
            Sequence::Stream(s) => s.alphabet(),
        }
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> u8 {
        match self {
            Sequence::Periodic(p) => p.digit(i),
            Sequence::Stream(s) => s.digit(i),
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        match self {
            Sequence::Periodic(p) => p.prefix(n),
            Sequence::Stream(s) => s.prefix(n),
        }
    }

    pub fn shift(&self, k: usize) -> Sequence {
        match self {
            Sequence::Periodic(p) => Sequence::Periodic(p.shift(k)),
            Sequence::Stream(s) => Sequence::Stream(s.shift(k)),
        }
    }

    pub fn reflect(&self) -> Sequence {
        match self {
            Sequence::Periodic(p) => Sequence::Periodic(p.reflect()),
            Sequence::Stream(s) => Sequence::Stream(s.reflect()),
        }
    }

    /// The exact periodic form, if known without further digit generation.
    pub fn as_periodic(&self) -> Option<PeriodicSeq> {
        match self {
            Sequence::Periodic(p) => Some(p.clone()),
            Sequence::Stream(s) => s.periodic_form(),
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.as_periodic().is_some()
    }
}

impl From<PeriodicSeq> for Sequence {
    fn from(p: PeriodicSeq) -> Self {
        Sequence::Periodic(p)
    }
}

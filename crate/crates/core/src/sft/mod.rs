//! Window-`n` subshifts of finite type bounded by prefixes of the
//! quasi-greedy or greedy expansion, their edge graphs and block counts.

mod build;
mod count;
mod graph;

pub use build::{build_graph_automaton, build_graph_naive};
pub use count::{brute_force_blocks, count_blocks, enumerate_blocks};
pub use graph::EdgeGraph;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::AlgebraicNumber;
use crate::expansion::{
    greedy_stream, quasi_greedy_expansion, Alphabet, DepthConfig, Word,
};

/// Default limit on explicitly enumerated words or vertices.
pub const DEFAULT_CAP: u128 = 1 << 24;

/// Which window inequalities define the subshift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `reflect(a) < w < a` with `a` the quasi-greedy prefix.
    StrictU,
    /// `reflect(a) <= w <= a` with `a` the quasi-greedy prefix.
    ClosedV,
    /// `reflect(b) <= w <= b` with `b` the greedy prefix.
    ClosedW,
}

impl Mode {
    pub fn is_strict(self) -> bool {
        self == Mode::StrictU
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::StrictU => "strict_U",
            Mode::ClosedV => "closed_V",
            Mode::ClosedW => "closed_W",
        })
    }
}

/// A subshift given by a window length and a bounding word: a sequence
/// belongs to it iff every length-`window` block `w` lies between
/// `reflect(bound)` and `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForbiddenSpec {
    window: usize,
    mode: Mode,
    bound: Vec<u8>,
    alphabet: Alphabet,
}

impl ForbiddenSpec {
    pub fn new(alphabet: Alphabet, mode: Mode, bound: Vec<u8>) -> Result<Self> {
        if bound.is_empty() {
            return Err(Error::Invalid("window must be at least 1".into()));
        }
        let bound = Word::new(alphabet, bound)?.digits().to_vec();
        Ok(Self { window: bound.len(), mode, bound, alphabet })
    }

    /// Every word allowed: the closed bound `M^n`.
    pub fn full_shift(alphabet: Alphabet, n: usize) -> Self {
        Self { window: n, mode: Mode::ClosedV, bound: vec![alphabet.max_digit(); n], alphabet }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn bound(&self) -> &[u8] {
        &self.bound
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Whether a length-`window` block satisfies the window inequalities.
    pub fn allows(&self, w: &[u8]) -> bool {
        debug_assert_eq!(w.len(), self.window);
        let m = self.alphabet.max_digit();
        let upper = w.cmp(self.bound.as_slice());
        let lower = w.iter().zip(&self.bound).map(|(&d, &b)| d.cmp(&(m - b))).find(|o| o.is_ne());
        let lower = lower.unwrap_or(Ordering::Equal);
        if self.mode.is_strict() {
            upper == Ordering::Less && lower == Ordering::Greater
        } else {
            upper != Ordering::Greater && lower != Ordering::Less
        }
    }

    /// Whether every length-`window` block of `w` is allowed.
    pub fn allows_all_windows(&self, w: &[u8]) -> bool {
        w.len() < self.window || w.windows(self.window).all(|x| self.allows(x))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

/// The window-`n` subshift for base `q` in the given mode.
pub fn build_spec(
    q: &AlgebraicNumber,
    alphabet: Alphabet,
    n: usize,
    mode: Mode,
    cfg: &DepthConfig,
) -> Result<ForbiddenSpec> {
    let bound = match mode {
        Mode::StrictU | Mode::ClosedV => quasi_greedy_expansion(q, alphabet, cfg)?.prefix(n),
        Mode::ClosedW => greedy_stream(q, alphabet)?.prefix(n),
    };
    ForbiddenSpec::new(alphabet, mode, bound)
}

/// Whether the subshift of `a` is contained in that of `b`.
pub fn sft_includes(a: &ForbiddenSpec, b: &ForbiddenSpec, cap: u128) -> Result<bool> {
    if a.alphabet != b.alphabet {
        return Err(Error::Invalid("specs over different alphabets".into()));
    }
    let n = a.window.max(b.window);
    let g = build_graph_automaton(a);
    let words = enumerate_blocks(&g, n, cap)?;
    Ok(words.iter().all(|w| b.allows_all_windows(w)))
}

/// Smallest `n <= cap` with `alpha_1..alpha_n(p) > beta_1..beta_n(q)`.
pub fn find_separating_depth(
    q: &AlgebraicNumber,
    p: &AlgebraicNumber,
    alphabet: Alphabet,
    cap: usize,
    cfg: &DepthConfig,
) -> Result<usize> {
    if q >= p {
        return Err(Error::Invalid("separating depth needs q < p".into()));
    }
    let beta = greedy_stream(q, alphabet)?;
    let alpha = quasi_greedy_expansion(p, alphabet, cfg)?;
    for i in 0..cap {
        match alpha.digit(i).cmp(&beta.digit(i)) {
            Ordering::Equal => continue,
            Ordering::Greater => return Ok(i + 1),
            Ordering::Less => {
                return Err(Error::Invalid(format!("beta(q) exceeds alpha(p) at digit {}", i + 1)))
            }
        }
    }
    Err(Error::NotFound { cap })
}

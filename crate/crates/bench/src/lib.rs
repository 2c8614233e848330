//! Benchmark fixtures shared by the criterion targets.

use univoque::exactnum::rat;
use univoque::{AlgebraicNumber, Alphabet, DepthConfig, ForbiddenSpec, Mode};

/// Bases used across benchmarks: a Parry number, a generic rational and
/// a base close to the top of the binary range.
pub fn bases() -> Vec<(&'static str, AlgebraicNumber)> {
    vec![
        ("tribonacci", AlgebraicNumber::tribonacci()),
        ("1.9", AlgebraicNumber::from_rational(rat(19, 10))),
        ("1.99", AlgebraicNumber::from_rational(rat(199, 100))),
    ]
}

pub fn spec(q: &AlgebraicNumber, n: usize, mode: Mode) -> ForbiddenSpec {
    univoque::sft::build_spec(q, Alphabet::binary(), n, mode, &DepthConfig::default()).expect("valid base")
}

//! Certified bounds on the Hausdorff dimension `D(q)` of the univoque set
//! `U_q` of numbers with a unique expansion in base `q` over `{0, ..., M}`.
//!
//! The pipeline runs bottom-up:
//!
//! - [`exactnum`]: rationals, integer polynomials, real algebraic numbers
//!   with isolating intervals and exact sign determination.
//! - [`expansion`]: greedy / quasi-greedy expansions of 1, lexicographic
//!   machinery, uniqueness and univoque-base tests.
//! - [`sft`]: the window-`n` subshifts of finite type approximating the
//!   symbolic univoque set, as labeled edge graphs.
//! - [`entropy`]: Perron-root enclosures and the entropy sandwich.
//! - [`dimension`]: `D(q)` enclosures, the Komornik-Loreti constant, sweeps.
//! - [`measure`]: greedy-prefix interval triples and zero-run experiments.

pub mod dimension;
pub mod entropy;
pub mod error;
pub mod exactnum;
pub mod expansion;
pub mod measure;
pub mod sft;

pub use dimension::{DimensionEstimate, DimensionMethod, DimensionOptions, KlConstant, SigmaBound};
pub use entropy::{EntropyBounds, EntropySource, PerronBounds};
pub use error::{Error, Result};
pub use exactnum::{AlgebraicNumber, Enclosure, IntPolynomial, RatPoly, Rational};
pub use expansion::{Alphabet, DepthConfig, Membership, PeriodicSeq, Sequence, Word};
pub use measure::{DivergentSchedule, IntervalTriple, ZeroRunReport};
pub use sft::{EdgeGraph, ForbiddenSpec, Mode};

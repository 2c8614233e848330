use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use univoque::dimension::{dimension, sigma_lower_bound, DimensionOptions};
use univoque::entropy::entropy_of;
use univoque::exactnum::{compare, isolate_roots, rat, refine, sign_at};
use univoque::expansion::{greedy_stream, is_unique_expansion, quasi_greedy_expansion};
use univoque::measure::{divergent_schedule, interval_triple, zero_run_experiment};
use univoque::sft::{build_graph_automaton, build_graph_naive, build_spec, count_blocks, sft_includes};
use univoque::{
    AlgebraicNumber, Alphabet, DepthConfig, ForbiddenSpec, IntPolynomial, Mode, PeriodicSeq, RatPoly, Rational, Word,
};

fn cfg() -> DepthConfig {
    DepthConfig::default()
}

/// Rational base in `(1, M+1]` on a grid of `1/1000`.
fn base(m: u8, k: u32) -> Rational {
    let span = 1000 * m as i64;
    rat(1000 + 1 + (k as i64 % span), 1000)
}

fn linear_product(roots: &[Rational]) -> RatPoly {
    roots.iter().fold(RatPoly::constant(Rational::one()), |p, a| {
        p.mul(&RatPoly::new(vec![-a.clone(), Rational::one()]))
    })
}

/// Exact value of `w 0^inf` or `w M^inf` in base `q`.
fn finite_value(q: &Rational, w: &[u8], tail: u8) -> Rational {
    let mut x = Rational::zero();
    let mut s = Rational::one();
    for &d in w {
        s /= q;
        x += &s * Rational::from_integer(d.into());
    }
    x + s * Rational::from_integer(tail.into()) / (q - Rational::one())
}

fn periodic_value(q: &Rational, c: &PeriodicSeq) -> Rational {
    let pre = finite_value(q, c.preperiod(), 0);
    if c.period().is_empty() {
        return pre;
    }
    let scale = q.pow(-(c.preperiod().len() as i32));
    let cycle = finite_value(q, c.period(), 0);
    pre + scale * cycle / (Rational::one() - q.pow(-(c.period().len() as i32)))
}

/// Uniqueness via the two digit-branching conditions at every tail.
fn unique_by_tails(q: &Rational, c: &PeriodicSeq) -> bool {
    let m = Rational::from_integer(c.alphabet().max_digit().into());
    let top = &m / (q - Rational::one()) - Rational::one();
    let horizon = c.preperiod().len() + c.period().len().max(1);
    (1..=horizon).all(|n| {
        let d = c.digit(n - 1);
        let tail = periodic_value(q, &c.shift(n));
        (d == c.alphabet().max_digit() || tail < Rational::one()) && (d == 0 || tail > top)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn isolate_recovers_distinct_rational_roots(nums in prop::collection::btree_set(-40i64..40, 1..6)) {
        let roots: Vec<Rational> = nums.iter().map(|&n| rat(n, 7)).collect();
        let found = isolate_roots(&linear_product(&roots), &rat(-10, 1), &rat(10, 1));
        prop_assert_eq!(found.len(), roots.len());
        for (f, r) in found.iter().zip(&roots) {
            prop_assert_eq!(f, &AlgebraicNumber::from_rational(r.clone()));
        }
    }

    #[test]
    fn sign_vanishes_exactly_on_shared_factors(c in -20i64..20, with_factor in any::<bool>()) {
        let sqrt2 = isolate_roots(&RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]), &rat(0, 1), &rat(2, 1))
            .pop()
            .unwrap();
        let linear = IntPolynomial::from_i64s(&[-c, 1]);
        let p = if with_factor { IntPolynomial::from_i64s(&[2 * c, -2, -c, 1]) } else { linear };
        let s = sign_at(&p, &sqrt2);
        if with_factor {
            prop_assert_eq!(s, Ordering::Equal);
        } else {
            let f = 2f64.sqrt() - c as f64;
            prop_assert_eq!(s, f.partial_cmp(&0.0).unwrap());
        }
    }

    #[test]
    fn refinement_keeps_the_root(a in 2i64..50, bits in 4u32..80) {
        let p = RatPoly::new(vec![rat(-a, 1), rat(0, 1), rat(1, 1)]);
        let r = isolate_roots(&p, &rat(0, 1), &rat(a, 1)).pop().unwrap();
        let width = Rational::new(1.into(), BigUint::from(2u32).pow(bits).into());
        let fine = refine(&r, &width);
        let e = fine.enclosure();
        prop_assert!(e.width() <= width);
        let lo = p.sign_at_rational(e.lo());
        let hi = p.sign_at_rational(e.hi());
        prop_assert!(lo != Ordering::Greater && hi != Ordering::Less);
        prop_assert_eq!(compare(&fine, &r), Ordering::Equal);
    }

    #[test]
    fn compare_matches_floating_point(a in 2i64..200, b in 2i64..200) {
        let root = |n: i64| {
            isolate_roots(&RatPoly::new(vec![rat(-n, 1), rat(0, 1), rat(1, 1)]), &rat(0, 1), &rat(n, 1)).pop().unwrap()
        };
        let (x, y) = (root(a), root(b));
        prop_assert_eq!(compare(&x, &y), a.cmp(&b));
        prop_assert_eq!(compare(&y, &x), b.cmp(&a));
    }

    #[test]
    fn greedy_prefix_brackets_one(m in 1u8..4, k in 0u32..100_000, n in 1usize..30) {
        let q = base(m, k);
        let a = Alphabet::new(m).unwrap();
        let beta = greedy_stream(&AlgebraicNumber::from_rational(q.clone()), a).unwrap().prefix(n);
        prop_assert!(finite_value(&q, &beta, 0) <= Rational::one());
        prop_assert!(finite_value(&q, &beta, m) >= Rational::one());
    }

    #[test]
    fn quasi_greedy_is_infinite_and_below_greedy(m in 1u8..3, k in 0u32..100_000) {
        let q = AlgebraicNumber::from_rational(base(m, k));
        let a = Alphabet::new(m).unwrap();
        let alpha = quasi_greedy_expansion(&q, a, &cfg()).unwrap();
        let beta = greedy_stream(&q, a).unwrap();
        if let Some(p) = alpha.as_periodic() {
            prop_assert!(!p.is_eventually_zero());
        }
        let (ap, bp) = (alpha.prefix(64), beta.prefix(64));
        prop_assert!(ap <= bp);
        if beta.finite_at().is_none() {
            prop_assert_eq!(ap, bp);
        }
    }

    #[test]
    fn expansions_increase_with_the_base(k1 in 0u32..1000, k2 in 0u32..1000) {
        prop_assume!(k1 != k2);
        let a = Alphabet::binary();
        let (q, p) = (base(1, k1.min(k2)), base(1, k1.max(k2)));
        let bq = greedy_stream(&AlgebraicNumber::from_rational(q), a).unwrap().prefix(64);
        let bp = greedy_stream(&AlgebraicNumber::from_rational(p), a).unwrap().prefix(64);
        prop_assert!(bq < bp);
    }

    #[test]
    fn uniqueness_matches_tail_conditions_ternary(
        pre in prop::collection::vec(0u8..3, 0..4),
        per in prop::collection::vec(0u8..3, 1..4),
        k in 0u32..2000,
    ) {
        let a = Alphabet::new(2).unwrap();
        let q = base(2, k);
        let c = PeriodicSeq::new(a, pre, per).unwrap();
        let fast = is_unique_expansion(&AlgebraicNumber::from_rational(q.clone()), a, &c, &cfg()).unwrap();
        prop_assert_eq!(fast, unique_by_tails(&q, &c));
        let mirrored = is_unique_expansion(&AlgebraicNumber::from_rational(q), a, &c.reflect(), &cfg()).unwrap();
        prop_assert_eq!(fast, mirrored);
    }

    #[test]
    fn window_families_are_nested(k in 0u32..1000, n in 2usize..10) {
        let a = Alphabet::binary();
        let q = AlgebraicNumber::from_rational(base(1, k));
        let spec = |mode, n| build_spec(&q, a, n, mode, &cfg()).unwrap();
        let cap = 1 << 20;
        prop_assert!(sft_includes(&spec(Mode::StrictU, n), &spec(Mode::StrictU, n + 1), cap).unwrap());
        prop_assert!(sft_includes(&spec(Mode::ClosedV, n + 1), &spec(Mode::ClosedV, n), cap).unwrap());
        prop_assert!(sft_includes(&spec(Mode::ClosedW, n + 1), &spec(Mode::ClosedW, n), cap).unwrap());
    }

    #[test]
    fn builders_agree(bound in prop::collection::vec(0u8..3, 1..5), mode in 0usize..3) {
        let mode = [Mode::StrictU, Mode::ClosedV, Mode::ClosedW][mode];
        let spec = ForbiddenSpec::new(Alphabet::new(2).unwrap(), mode, bound).unwrap();
        let naive = build_graph_naive(&spec).unwrap();
        let auto = build_graph_automaton(&spec);
        for k in 0..=10 {
            prop_assert_eq!(count_blocks(&naive, k), count_blocks(&auto, k));
        }
    }

    #[test]
    fn entropy_sits_below_block_growth(bound in prop::collection::vec(0u8..2, 1..7), mode in 0usize..3) {
        let mode = [Mode::StrictU, Mode::ClosedV, Mode::ClosedW][mode];
        let spec = ForbiddenSpec::new(Alphabet::binary(), mode, bound).unwrap();
        let h = entropy_of(&spec);
        let naive = build_graph_naive(&spec).unwrap();
        let vertices = naive.vertex_count().max(1) as f64;
        for k in 1..=20usize {
            let count = count_blocks(&naive, k).to_f64().unwrap();
            if count == 0.0 {
                prop_assert_eq!(h.hi_f64(), 0.0);
                break;
            }
            let est = count.ln() / k as f64;
            prop_assert!(est >= h.lo_f64() - 1e-9);
            prop_assert!(est <= h.hi_f64() + 2.0 * vertices.ln() / k as f64 + 1e-9);
        }
    }

    #[test]
    fn dimension_decreases_beyond_the_top_base(m in 1u8..4, a in 0u32..1000, b in 0u32..1000) {
        prop_assume!(a != b);
        let alphabet = Alphabet::new(m).unwrap();
        let q = |k: u32| AlgebraicNumber::from_rational(rat((m as i64 + 1) * 100 + k as i64 + 1, 100));
        let (lo, hi) = (a.min(b), a.max(b));
        let opts = DimensionOptions::default();
        let d1 = dimension(&q(lo), alphabet, &opts).unwrap();
        let d2 = dimension(&q(hi), alphabet, &opts).unwrap();
        prop_assert!(d1.enclosure.width() < rat(1, 1_000_000_000_000));
        prop_assert!(d2.enclosure.hi() < d1.enclosure.lo());
    }

    #[test]
    fn interval_triples_are_ordered(digits in prop::collection::vec(0u8..3, 1..7), t in 1usize..5) {
        let word = Word::new(Alphabet::new(2).unwrap(), digits).unwrap();
        prop_assume!(univoque::expansion::is_greedy_admissible(&word));
        let tr = interval_triple(&word, t).unwrap();
        prop_assume!(!tr.boundary && word.digits().iter().any(|&d| d < 2));
        prop_assert!(tr.q1 < tr.q3 && tr.q3 < tr.q2);
    }
}

#[test]
fn full_shift_entropy_is_log_alphabet() {
    for m in 1..=4u8 {
        let a = Alphabet::new(m).unwrap();
        let h = entropy_of(&ForbiddenSpec::full_shift(a, 3));
        let exact = ((m + 1) as f64).ln();
        assert!(h.lo_f64() <= exact && exact <= h.hi_f64());
    }
}

#[test]
fn sigma_approaches_one() {
    for eps in [0.1f64, 0.01] {
        let n = ((2.0 / (1.0 - eps)).log2() / eps).ceil() as usize;
        let s = sigma_lower_bound(Alphabet::binary(), n).unwrap();
        assert!(s.sigma.lo_f64() > 1.0 - eps, "N={n}");
    }
}

#[test]
fn schedule_sums_are_balanced() {
    let s = divergent_schedule(&rat(2, 1), 100_000).unwrap();
    let mut total = 0u64;
    for (k, &n) in s.terms.iter().enumerate() {
        total += n;
        assert!((total as f64) <= ((k + 1) as f64) * n as f64);
    }
    assert!(s.reciprocal_sums.windows(2).all(|w| w[1] > w[0]));
    assert!(*s.reciprocal_sums.last().unwrap() > 1.7);
}

#[test]
fn zero_run_success_grows_with_depth() {
    let r = rat(2, 1);
    let shallow = zero_run_experiment(Alphabet::binary(), &r, 100, 30, 11).unwrap();
    let deep = zero_run_experiment(Alphabet::binary(), &r, 100, 120, 11).unwrap();
    assert_eq!(shallow.bases, deep.bases);
    for (s, d) in shallow.deepest.iter().zip(&deep.deepest) {
        if s.is_some() {
            assert!(d >= s);
        }
    }
    assert!(deep.fraction >= shallow.fraction);
}

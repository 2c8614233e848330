use std::cmp::Ordering;

use num_bigint::BigInt;

use super::{
    beta_sequence, check_base, lex_compare, quasi_greedy_expansion, Alphabet, DepthConfig, Membership,
    PeriodicSeq, Sequence, Word,
};
use crate::error::{Error, Result};
use crate::exactnum::{AlgebraicNumber, Rational};

fn decided(a: &Sequence, b: &Sequence, depth: usize) -> Result<Ordering> {
    lex_compare(a, b, depth).ok_or(Error::UndecidedAtDepth { depth })
}

/// Whether `pi_q(c)` has `c` as its only expansion.
///
/// For `q > M + 1` every sequence is the unique expansion of its value. For
/// `1 < q <= M + 1` the shift conditions against `alpha(q)` are checked for
/// every shift of `c` up to one preperiod plus two periods, which covers the
/// whole shift orbit.
pub fn is_unique_expansion(
    q: &AlgebraicNumber,
    alphabet: Alphabet,
    c: &PeriodicSeq,
    cfg: &DepthConfig,
) -> Result<bool> {
    if q.cmp_rational(&Rational::from_integer(1.into())) != Ordering::Greater {
        return Err(Error::BaseOutOfRange(format!("q = {q} must exceed 1")));
    }
    if q.cmp_rational(&Rational::from_integer(BigInt::from(alphabet.size()))) == Ordering::Greater {
        return Ok(true);
    }
    let alpha = quasi_greedy_expansion(q, alphabet, cfg)?;
    let m = alphabet.max_digit();
    let horizon = c.preperiod().len() + 2 * c.cycle_len();
    let (mut all_max, mut all_zero) = (true, true);
    for k in 1..=horizon {
        let d = c.digit(k - 1);
        all_max &= d == m;
        all_zero &= d == 0;
        let tail = c.shift(k);
        if !all_max && decided(&Sequence::Periodic(tail.clone()), &alpha, cfg.compare_depth)? != Ordering::Less {
            return Ok(false);
        }
        if !all_zero && decided(&Sequence::Periodic(tail.reflect()), &alpha, cfg.compare_depth)? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check `reflect(c) < shift^k(c) < c` for `k >= 1`, where the right-hand
/// inequality is only required when `c_1 ... c_k` is not `M^k`.
///
/// Eventually periodic `c` is decided exactly. A stream is checked for
/// `k = 1..=n`.
pub fn satisfies_univoque_conditions(c: &Sequence, n: usize, cfg: &DepthConfig) -> Result<Membership> {
    let m = c.alphabet().max_digit();
    let (horizon, exact) = match c.as_periodic() {
        Some(p) => (p.preperiod().len() + 2 * p.cycle_len(), true),
        None => (n, false),
    };
    let c = match c.as_periodic() {
        Some(p) => Sequence::Periodic(p),
        None => c.clone(),
    };
    let mirror = c.reflect();
    let mut all_max = true;
    for k in 1..=horizon {
        all_max &= c.digit(k - 1) == m;
        let tail = c.shift(k);
        if decided(&mirror, &tail, cfg.compare_depth)? != Ordering::Less {
            return Ok(Membership::RefutedAt(k));
        }
        if !all_max && decided(&tail, &c, cfg.compare_depth)? != Ordering::Less {
            return Ok(Membership::RefutedAt(k));
        }
    }
    Ok(if exact { Membership::Proved } else { Membership::VerifiedTo(n) })
}

/// Whether `1` has a unique expansion in base `q`, tested on `beta(q)`.
pub fn in_univoque_u(q: &AlgebraicNumber, alphabet: Alphabet, n: usize, cfg: &DepthConfig) -> Result<Membership> {
    check_base(q, alphabet)?;
    let beta = beta_sequence(q, alphabet, cfg)?;
    satisfies_univoque_conditions(&beta, n, cfg)
}

/// Whether `q` lies in the closure of the univoque bases:
/// `reflect(alpha) < shift^k(alpha) <= alpha` for all `k >= 0`.
pub fn in_u_closure(q: &AlgebraicNumber, alphabet: Alphabet, n: usize, cfg: &DepthConfig) -> Result<Membership> {
    check_base(q, alphabet)?;
    let alpha = quasi_greedy_expansion(q, alphabet, cfg)?;
    let (horizon, exact) = match alpha.as_periodic() {
        Some(p) => (p.preperiod().len() + p.cycle_len(), true),
        None => (n, false),
    };
    let mirror = alpha.reflect();
    for k in 0..=horizon {
        let tail = alpha.shift(k);
        if decided(&mirror, &tail, cfg.compare_depth)? != Ordering::Less {
            return Ok(Membership::RefutedAt(k));
        }
        if decided(&tail, &alpha, cfg.compare_depth)? == Ordering::Greater {
            return Ok(Membership::RefutedAt(k));
        }
    }
    Ok(if exact { Membership::Proved } else { Membership::VerifiedTo(n) })
}

/// Finite Parry condition: `w_1 >= 1` and every proper suffix is at most
/// the prefix of the same length.
pub fn is_greedy_admissible(w: &Word) -> bool {
    let d = w.digits();
    if d.first().is_none_or(|&x| x == 0) {
        return false;
    }
    (1..d.len()).all(|k| d[k..] <= d[..d.len() - k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_base;

    fn seq(m: u8, s: &str) -> PeriodicSeq {
        PeriodicSeq::parse(Alphabet::new(m).unwrap(), s).unwrap()
    }

    fn cfg() -> DepthConfig {
        DepthConfig::default()
    }

    #[test]
    fn uniqueness_examples() {
        let g = AlgebraicNumber::golden();
        assert!(!is_unique_expansion(&g, Alphabet::binary(), &seq(1, "1"), &cfg()).unwrap());
        let two = parse_base("2").unwrap();
        assert!(is_unique_expansion(&two, Alphabet::binary(), &seq(1, "(10)"), &cfg()).unwrap());
        assert!(is_unique_expansion(&g, Alphabet::binary(), &seq(1, ""), &cfg()).unwrap());
        let three = parse_base("3").unwrap();
        assert!(is_unique_expansion(&three, Alphabet::binary(), &seq(1, "1"), &cfg()).unwrap());
    }

    #[test]
    fn admissibility_examples() {
        let w = |m: u8, s: &str| Word::parse(Alphabet::new(m).unwrap(), s).unwrap();
        assert!(is_greedy_admissible(&w(1, "11010")));
        assert!(!is_greedy_admissible(&w(1, "1011")));
        assert!(is_greedy_admissible(&w(2, "22222")));
        assert!(!is_greedy_admissible(&w(1, "01")));
    }

    #[test]
    fn univoque_membership_examples() {
        let two = parse_base("2").unwrap();
        assert!(in_univoque_u(&two, Alphabet::binary(), 64, &cfg()).unwrap().holds());
        let g = AlgebraicNumber::golden();
        assert_eq!(in_univoque_u(&g, Alphabet::binary(), 64, &cfg()).unwrap(), Membership::RefutedAt(2));
    }

    #[test]
    fn closure_examples() {
        let g = AlgebraicNumber::golden();
        assert_eq!(in_u_closure(&g, Alphabet::binary(), 64, &cfg()).unwrap(), Membership::RefutedAt(1));
        let two = parse_base("2").unwrap();
        assert_eq!(in_u_closure(&two, Alphabet::binary(), 64, &cfg()).unwrap(), Membership::Proved);
        let t = AlgebraicNumber::tribonacci();
        assert_eq!(in_u_closure(&t, Alphabet::binary(), 64, &cfg()).unwrap(), Membership::Proved);
    }
}

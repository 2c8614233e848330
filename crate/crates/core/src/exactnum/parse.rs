use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{pow10, AlgebraicNumber, IntPolynomial, Rational};
use crate::error::{Error, Result};

/// Parse an exact rational: `3`, `-1.25`, `7/4`, `1e-6`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((mantissa, exp)) = s.split_once(['e', 'E']) {
        let exp: i32 = exp.parse().map_err(|_| bad())?;
        if mantissa.contains('/') || exp.unsigned_abs() > 10_000 {
            return Err(bad());
        }
        let scale = Rational::from_integer(pow10(exp.unsigned_abs()));
        let m = parse_rational(mantissa)?;
        return Ok(if exp >= 0 { m * scale } else { m / scale });
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n = BigInt::from_str(&digits).map_err(|_| bad())?;
    let r = Rational::new(n, pow10(frac.len() as u32));
    Ok(if neg { -r } else { r })
}

/// Parse a base: a rational, `golden`, `tribonacci`, or
/// `poly:[c0,c1,...];interval:[lo,hi]` with coefficients lowest degree first.
pub fn parse_base(s: &str) -> Result<AlgebraicNumber> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "golden" | "phi" => return Ok(AlgebraicNumber::golden()),
        "tribonacci" => return Ok(AlgebraicNumber::tribonacci()),
        _ => {}
    }
    if let Some(rest) = t.strip_prefix("poly:") {
        let (poly, interval) = rest
            .split_once(";interval:")
            .ok_or_else(|| Error::Parse(format!("expected ';interval:[lo,hi]' in {t:?}")))?;
        let coeffs = parse_list(poly)?
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Parse(format!("non-integer coefficient {c}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let bounds = parse_list(interval)?;
        if bounds.len() != 2 {
            return Err(Error::Parse("interval needs exactly two endpoints".into()));
        }
        let poly = IntPolynomial::new(coeffs);
        return AlgebraicNumber::new(&poly, bounds[0].clone(), bounds[1].clone());
    }
    parse_rational(t).map(AlgebraicNumber::from_rational)
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {s:?}")))?;
    inner.split(',').map(parse_rational).collect()
}

impl FromStr for AlgebraicNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_base(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1.9").unwrap(), rat(19, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7/4").unwrap(), rat(7, 4));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1e3").unwrap(), rat(1000, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(parse_rational("1e-6").unwrap(), Rational::new(1.into(), 1_000_000.into()));
        assert_eq!(parse_rational("2.5E2").unwrap(), crate::exactnum::int(250));
        assert!(parse_rational("1e").is_err());
        assert_eq!(parse_rational("1.").unwrap(), crate::exactnum::int(1));
    }

    #[test]
    fn bases() {
        assert_eq!(parse_base("golden").unwrap(), AlgebraicNumber::golden());
        let p = parse_base("poly:[-1,-1,1];interval:[1,2]").unwrap();
        assert_eq!(p, AlgebraicNumber::golden());
        assert_eq!(parse_base("2").unwrap().as_rational(), Some(&rat(2, 1)));
        assert!(parse_base("poly:[-1,-1,1];interval:[-2,2]").is_err());
    }
}

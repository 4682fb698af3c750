//! Exact rational scalars, the coefficient carrier for the whole crate.
//!
//! Values are `num_rational::BigRational`, which keeps every number in
//! canonical form (fully reduced, positive denominator). String literals
//! follow the `"p/q"` / `"p"` format used at every file and CLI boundary;
//! floating-point literals are rejected in exact mode.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` from machine integers. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Sign as an element of {-1, 0, +1}.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pow_u(r: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut base = r.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse a rational literal: optional leading minus (ASCII `-` or U+2212),
/// then `p` or `p/q` with decimal integer parts. Anything else (floats,
/// embedded spaces, signed denominators) is rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let raw = s.trim();
    let err = || Error::ParseRational(s.to_string());
    let (neg, body) = if let Some(rest) = raw.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = raw.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, raw)
    };
    let mut parts = body.split('/');
    let num = parts.next().ok_or_else(err)?;
    let den = parts.next();
    if parts.next().is_some() {
        return Err(err());
    }
    let parse_uint = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        t.parse::<BigInt>().map_err(|_| err())
    };
    let p = parse_uint(num)?;
    let q = match den {
        Some(d) => {
            let q = parse_uint(d)?;
            if q.is_zero() {
                return Err(err());
            }
            q
        }
        None => BigInt::one(),
    };
    let p = if neg { -p } else { p };
    Ok(Rat::new(p, q))
}

/// Parse a decimal literal such as `0.03143` or `1e-12` into an exact
/// rational. Also accepts plain `p/q` form. Used for tolerance flags.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    if let Ok(r) = parse_rat(s) {
        return Ok(r);
    }
    let raw = s.trim();
    let err = || Error::ParseDecimal(s.to_string());
    let (neg, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw.strip_prefix('+').unwrap_or(raw)),
    };
    let (mantissa, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| err())?;
            (m, exp)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(int_part) || !digits_ok(frac_part) {
        return Err(err());
    }
    let combined = format!("{int_part}{frac_part}");
    let mut value = Rat::from_integer(combined.parse::<BigInt>().map_err(|_| err())?);
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= Rat::from_integer(scale);
    } else {
        value /= Rat::from_integer(scale);
    }
    if neg {
        value = -value;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_canonical_forms() {
        assert_eq!(parse_rat("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-4/2").unwrap(), rat_i64(-2));
        assert_eq!(parse_rat("\u{2212}1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat_i64(7));
    }

    #[test]
    fn parse_rejects_floats_and_garbage() {
        for bad in ["1.5", "1e3", "", "1/0", "1/-2", "2/3/4", "a", "- 1"] {
            assert!(parse_rat(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(parse_decimal("0.03143").unwrap(), ratio(3143, 100_000));
        assert_eq!(
            parse_decimal("1e-12").unwrap(),
            Rat::new(BigInt::one(), BigInt::from(10u64).pow(12))
        );
        assert_eq!(parse_decimal("2.5e2").unwrap(), rat_i64(250));
        assert_eq!(parse_decimal("1/8").unwrap(), ratio(1, 8));
        assert!(parse_decimal("nan").is_err());
    }

    #[test]
    fn exactness_of_addition() {
        // (a/b)+(c/d) re-read equals (ad+cb)/(bd) reduced
        let a = ratio(3, 8);
        let c = ratio(5, 12);
        let sum = &a + &c;
        assert_eq!(sum, ratio(3 * 12 + 5 * 8, 96));
        assert_eq!(sum, ratio(19, 24));
    }

    #[test]
    fn signs_and_powers() {
        assert_eq!(sign(&rat_i64(-3)), -1);
        assert_eq!(sign(&Rat::zero()), 0);
        assert_eq!(pow_u(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow_u(&ratio(5, 7), 0), rat_i64(1));
    }
}

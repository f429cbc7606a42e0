use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Out of f64 range; keep the sign.
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn signum(q: &Rational) -> i8 {
    match q.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `2^e` for a possibly negative exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `10^-d` as an exact rational.
pub fn ten_pow_neg(d: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), d as usize))
}

/// Parses an exact rational literal: integers (`12`), fractions (`3/4`) and
/// decimals with an optional exponent (`1.25`, `1e-5`, `-2.5E3`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse {
        line: 1,
        column: 1,
        message: format!("invalid rational literal `{text}`"),
    };
    if s.is_empty() {
        return Err(bad());
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = parse_digits(n).ok_or_else(bad)?;
        let d: BigInt = parse_digits(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        Rational::new(n, d)
    } else {
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = body[i + 1..].parse().map_err(|_| bad())?;
                (&body[..i], e)
            }
            None => (body, 0),
        };
        let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if ip.is_empty() && fp.is_empty() {
            return Err(bad());
        }
        let digits = format!("{ip}{fp}");
        let n: BigInt = parse_digits(&digits).ok_or_else(bad)?;
        let shift = exp - fp.len() as i64;
        let ten = BigInt::from(10);
        if shift >= 0 {
            Rational::from_integer(n * num_traits::pow(ten, shift as usize))
        } else {
            Rational::new(n, num_traits::pow(ten, (-shift) as usize))
        }
    };
    Ok(if neg { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

//! Exact rational helpers shared by every module.
//!
//! All weights, costs and bounds are [`Rational`] values. Text forms are
//! `"p/q"` (always reduced, `q > 0`) for machine output and half-even
//! rounded decimals for human-readable columns.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"`, an integer, or a decimal such as `"0.751652"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10u32), frac.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Reduced `"p/q"` form; integers are written `"p/1"`.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with round-half-to-even at `places` digits.
pub fn to_decimal(r: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = r * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    // div_rem truncates toward zero; handle the fractional part by magnitude.
    let twice = rem.abs() * 2u32;
    let den = scaled.denom().clone();
    let mut mag = q.abs();
    if twice > den || (twice == den && mag.is_odd()) {
        mag += 1u32;
    }
    let negative = scaled.is_negative() && !mag.is_zero();
    let digits = mag.to_str_radix(10);
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (a, b) = padded.split_at(padded.len() - places);
        format!("{a}.{b}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back through a decimal string for huge numerators/denominators.
        to_decimal(r, 17).parse().unwrap_or(f64::NAN)
    })
}

/// Nearest rational with denominator `10^places` (half-even).
pub fn from_f64_decimal(x: f64, places: usize) -> Rational {
    let s = format!("{x:.places$}");
    parse_rational(&s).expect("formatted float parses")
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub(crate) fn bigint_to_i128(v: &BigInt) -> Option<i128> {
    match v.sign() {
        Sign::NoSign => Some(0),
        _ => v.to_i128(),
    }
}

pub fn min_rational(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.751652").unwrap(), rat(751652, 1_000_000));
        assert_eq!(parse_rational("3/40").unwrap(), rat(3, 40));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e-3").is_err());
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(to_decimal(&rat(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&rat(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&rat(5, 4), 6), "1.250000");
        assert_eq!(to_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(to_decimal(&rat(2, 3), 0), "1");
        assert_eq!(to_decimal(&rat(1, 2), 0), "0");
        assert_eq!(to_decimal(&rat(-1, 1000), 2), "0.00");
    }

    #[test]
    fn ratio_format_is_reduced() {
        assert_eq!(format_ratio(&rat(6, 4)), "3/2");
        assert_eq!(format_ratio(&int(2)), "2/1");
        assert_eq!(format_ratio(&rat(1, -3)), "-1/3");
    }
}

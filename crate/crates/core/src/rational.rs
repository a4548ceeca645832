//! Exact rational scalars and their textual forms.
//!
//! Literals accept `num/den`, plain integers and finite decimals
//! (`0.4` parses to exactly `2/5`). The canonical output form is the
//! `Display` of [`Rational`]: `num/den` in lowest terms, or just `num`
//! when the denominator is 1.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(literal: &str) -> Result<Rational> {
    let s = literal.trim();
    let err = || Error::Parse(literal.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num = parse_integer(n.trim()).ok_or_else(err)?;
        let den = parse_integer(d.trim()).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(whole) || !all_digits(frac) {
        return None;
    }
    let mut digits = String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if negative {
        num = -num;
    }
    let den = num::pow(BigInt::from(10u32), frac.len());
    Some(Rational::new(num, den))
}

/// Nearest `f64`, ties to even.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Round `x` to `places` decimal places, half away from zero, returning the
/// scaled integer `round(x * 10^places)`.
pub fn round_scaled(x: &Rational, places: u32) -> BigInt {
    let scale = num::pow(BigInt::from(10u32), places as usize);
    let scaled = x * Rational::from_integer(scale);
    let (q, r) = scaled.numer().abs().div_rem(scaled.denom());
    let mut q = q;
    if r * BigInt::from(2) >= *scaled.denom() {
        q += 1;
    }
    if scaled.is_negative() {
        -q
    } else {
        q
    }
}

/// Decimal rendering of `x` rounded to `places` fractional digits.
pub fn to_fixed(x: &Rational, places: u32) -> String {
    let q = round_scaled(x, places);
    let negative = q.sign() == Sign::Minus;
    let digits = q.abs().to_string();
    let places = places as usize;
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (w, f) = padded.split_at(padded.len() - places);
        format!("{w}.{f}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// `x` rounded to `digits` significant digits, as the nearest `f64`.
pub fn to_significant(x: &Rational, digits: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    // exponent e with 10^e <= |x| < 10^(e+1)
    let ax = x.abs();
    let mut e: i64 = (ax.numer().bits() as i64 - ax.denom().bits() as i64) * 30103 / 100000;
    let ten = Rational::from_integer(BigInt::from(10));
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            num::pow(ten.clone(), k as usize)
        } else {
            num::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    while pow10(e) > ax {
        e -= 1;
    }
    while pow10(e + 1) <= ax {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = x * pow10(shift);
    let q = round_scaled(&scaled, 0);
    let text = if shift >= 0 {
        format!("{q}e-{shift}")
    } else {
        format!("{q}e{}", -shift)
    };
    text.parse().unwrap_or(f64::NAN)
}

pub fn is_unit_interior(x: &Rational) -> bool {
    x.is_positive() && *x < Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal_forms() {
        assert_eq!(parse_rational("2/5").unwrap(), rat(2, 5));
        assert_eq!(parse_rational("0.4").unwrap(), rat(2, 5));
        assert_eq!(parse_rational(" .35 ").unwrap(), rat(7, 20));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1.").unwrap(), int(1));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1/0", "a/2", "1//2", "0.4.1", ".", "1e3", "--1", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for x in [rat(27, 140), int(0), rat(-3, 7), int(5)] {
            assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
        }
        assert_eq!(int(0).to_string(), "0");
        assert_eq!(rat(27, 140).to_string(), "27/140");
    }

    #[test]
    fn fixed_rounding() {
        assert_eq!(to_fixed(&rat(27, 140), 5), "0.19286");
        assert_eq!(to_fixed(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_fixed(&rat(1, 200), 2), "0.01");
        assert_eq!(to_fixed(&int(3), 0), "3");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(to_significant(&rat(27, 140), 12), 0.192857142857);
        assert_eq!(to_significant(&rat(1, 3), 3), 0.333);
        assert_eq!(to_significant(&rat(-2000, 3), 4), -666.7);
        assert_eq!(to_significant(&int(0), 12), 0.0);
    }

    #[test]
    fn addition_matches_integer_cross_multiplication() {
        let (a, b, c, d) = (7i64, 12i64, -5i64, 18i64);
        let sum = rat(a, b) + rat(c, d);
        assert_eq!(sum, rat(a * d + c * b, b * d));
    }
}

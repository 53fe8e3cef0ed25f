//! Rational scalars and exact literal parsing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses an exact rational literal.
///
/// Accepted forms: integers (`-3`), fractions (`8/5`), and decimals with an
/// optional exponent (`1.6`, `-0.1`, `2.5e-3`). Decimals are converted
/// exactly, so `"0.1"` is `1/10`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational literal: '{text}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(bad)?;
        let den = parse_decimal(den.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in '{text}'")));
        }
        return Ok(num / den);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{whole}{frac}");
    let mut value = Rational::from_integer(joined.parse::<BigInt>().ok()?);
    let scale = exponent - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}

pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

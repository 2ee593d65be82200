//! Arbitrary-precision integers and rationals.
//!
//! The arithmetic itself is `num-bigint`/`num-rational`; this module adds the
//! text encoding used on every external surface: `"num/den"` in lowest terms,
//! or `"num"` when the denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty input")]
    Empty,
    #[error("invalid integer literal `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid decimal literal `{0}`")]
    InvalidDecimal(String),
    #[error("exponent out of range in `{0}`")]
    ExponentRange(String),
}

/// Largest decimal exponent accepted by [`parse_decimal`].
pub const MAX_DECIMAL_EXPONENT: i64 = 4096;

pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> ExactRational {
    ExactRational::from_integer(n)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `"num/den"` or `"num"`.
pub fn format_rational(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_int(s: &str) -> Result<BigInt, ParseRationalError> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidInteger(s.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseRationalError::InvalidInteger(s.to_string()))
}

/// Inverse of [`format_rational`]. Accepts unreduced input and normalizes it.
pub fn parse_rational(s: &str) -> Result<ExactRational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    match s.split_once('/') {
        None => Ok(ExactRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n.trim())?;
            let d = parse_int(d.trim())?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(ExactRational::new(n, d))
        }
    }
}

/// Parses a real literal exactly: `"0.3"`, `"-1.25e-3"`, `"2"`, or a
/// rational `"1/3"`.
pub fn parse_decimal(s: &str) -> Result<ExactRational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if s.contains('/') {
        return parse_rational(s);
    }
    let bad = || ParseRationalError::InvalidDecimal(s.to_string());
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e = &s[i + 1..];
            let body = e.strip_prefix(['+', '-']).unwrap_or(e);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let e: i64 = e
                .parse()
                .map_err(|_| ParseRationalError::ExponentRange(s.to_string()))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits.is_empty() {
        "0".to_string()
    } else {
        digits
    };
    let scale = exponent - frac_part.len() as i64;
    if scale.abs() > MAX_DECIMAL_EXPONENT {
        return Err(ParseRationalError::ExponentRange(s.to_string()));
    }
    let mut value = ExactRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let ten_pow = num_traits::pow(BigInt::from(10), scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= ExactRational::from_integer(ten_pow);
    } else {
        value /= ExactRational::from_integer(ten_pow);
    }
    Ok(if negative { -value } else { value })
}

/// Nearest `f64`; used only for diagnostics and tolerance checks.
pub fn to_f64(q: &ExactRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // scale both sides down before dividing
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Rounds `q·10^digits` to the nearest integer (ties away from zero) and
/// renders the result with `digits` places after the decimal point.
pub fn to_fixed(q: &ExactRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * ExactRational::from_integer(scale);
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let mut body = rounded.abs().to_string();
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Like [`to_fixed`] but truncates toward zero, so every printed digit is a
/// digit of `q` itself.
pub fn to_fixed_truncated(q: &ExactRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (q * ExactRational::from_integer(scale))
        .trunc()
        .to_integer();
    let negative = q.is_negative() && !scaled.is_zero();
    let mut body = scaled.abs().to_string();
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Serde adapter storing a rational as a decimal string.
pub mod serde_rational {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for a sequence of rationals.
pub mod serde_rational_vec {
    use super::*;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[ExactRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ExactRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

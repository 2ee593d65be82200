//! High-precision floating point with explicit absolute error bounds.

pub mod quadrature;

use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::rational::{to_f64, to_fixed_truncated, ExactRational};

/// Largest number of decimal places any numeric routine accepts.
pub const MAX_DIGITS: usize = 200;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("argument {arg} outside the supported domain {domain}")]
    OutOfDomain { arg: String, domain: String },
    #[error("requested {0} digits, at most {MAX_DIGITS} are supported")]
    PrecisionTooHigh(usize),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("floating point failure in {0}")]
    Float(&'static str),
}

/// Working precision plus the constants cache astro-float needs.
pub struct Ctx {
    pub p: usize,
    cc: Consts,
    digits: usize,
}

impl Ctx {
    /// Precision good for `digits` decimal places, with guard bits.
    pub fn for_digits(digits: usize) -> Result<Self, NumericError> {
        if digits > MAX_DIGITS {
            return Err(NumericError::PrecisionTooHigh(digits));
        }
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 96;
        let p = bits.div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE;
        let cc = Consts::new().map_err(|_| NumericError::Float("constants cache"))?;
        Ok(Ctx { p, cc, digits })
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    /// Relative size of one rounding at the working precision.
    pub fn unit_roundoff(&self) -> f64 {
        2f64.powi(-(self.p as i32) + 1)
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn bigint(&self, n: &BigInt) -> BigFloat {
        if n.is_zero() {
            return BigFloat::from_word(0, self.p);
        }
        let (sign, digits) = n.to_u64_digits();
        let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
        let s = if sign == num_bigint::Sign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let e = (words.len() * WORD_BIT_SIZE) as i32;
        let mut out = BigFloat::from_words(&words, s, e);
        // from_words keeps every input bit; bring it to working precision
        let _ = out.set_precision(self.p.max(WORD_BIT_SIZE), RM);
        out
    }

    pub fn rational(&self, q: &ExactRational) -> BigFloat {
        self.div(&self.bigint(q.numer()), &self.bigint(q.denom()))
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn recip(&self, a: &BigFloat) -> BigFloat {
        a.reciprocal(self.p, RM)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn cbrt(&self, a: &BigFloat) -> BigFloat {
        a.cbrt(self.p, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn sinh(&mut self, a: &BigFloat) -> BigFloat {
        a.sinh(self.p, RM, &mut self.cc)
    }

    pub fn cosh(&mut self, a: &BigFloat) -> BigFloat {
        a.cosh(self.p, RM, &mut self.cc)
    }

    pub fn atan(&mut self, a: &BigFloat) -> BigFloat {
        a.atan(self.p, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    /// `a^e` for rational `e` and positive `a`.
    pub fn pow_rational(&mut self, a: &BigFloat, e: &ExactRational) -> BigFloat {
        let e = self.rational(e);
        a.pow(&e, self.p, RM, &mut self.cc)
    }

    pub fn abs(&self, a: &BigFloat) -> BigFloat {
        a.abs()
    }

    /// Compares `a` and `b`; NaN compares as equal, which callers guard against.
    pub fn lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        a.cmp(b).is_some_and(|c| c < 0)
    }
}

/// Exact value of a finite float.
pub fn float_to_rational(x: &BigFloat) -> Option<ExactRational> {
    if x.is_nan() || x.is_inf() {
        return None;
    }
    if x.is_zero() {
        return Some(ExactRational::zero());
    }
    let (words, _bits, sign, exponent, _) = x.as_raw_parts()?;
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let mantissa = BigInt::from(BigUint::from_bytes_le(&bytes));
    let shift = exponent as i64 - (words.len() * WORD_BIT_SIZE) as i64;
    let two = BigInt::from(2);
    let mut q = ExactRational::from_integer(mantissa);
    if shift >= 0 {
        q *= ExactRational::from_integer(num_traits::pow(two, shift as usize));
    } else {
        q /= ExactRational::from_integer(num_traits::pow(two, (-shift) as usize));
    }
    Some(if sign == Sign::Neg { -q } else { q })
}

pub fn float_to_f64(x: &BigFloat) -> f64 {
    float_to_rational(x).map_or(f64::NAN, |q| to_f64(&q))
}

/// A float together with a bound on its distance from the true value.
#[derive(Debug, Clone)]
pub struct NumericValue {
    pub value: BigFloat,
    pub error_bound: f64,
    /// Decimal places requested by the caller.
    pub digits: usize,
}

impl NumericValue {
    pub fn new(value: BigFloat, error_bound: f64, digits: usize) -> Self {
        NumericValue {
            value,
            error_bound,
            digits,
        }
    }

    /// Decimal places the error bound supports, capped at the request.
    pub fn justified_digits(&self) -> usize {
        if self.error_bound <= 0.0 {
            return self.digits;
        }
        let d = (-self.error_bound.log10()).floor();
        if d <= 0.0 {
            0
        } else {
            (d as usize).min(self.digits)
        }
    }

    pub fn to_f64(&self) -> f64 {
        float_to_f64(&self.value)
    }

    pub fn to_rational(&self) -> Option<ExactRational> {
        float_to_rational(&self.value)
    }

    /// Fixed-point rendering with [`justified_digits`](Self::justified_digits)
    /// places, truncated rather than rounded.
    pub fn to_decimal_string(&self) -> String {
        match self.to_rational() {
            Some(q) => to_fixed_truncated(&q, self.justified_digits()),
            None => "NaN".to_string(),
        }
    }

    /// Whether `|self − other| ≤ tol + both error bounds`.
    pub fn agrees_with(&self, other: &NumericValue, tol: f64) -> bool {
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => {
                to_f64(&(a - b).abs()) <= tol + self.error_bound + other.error_bound
            }
            _ => false,
        }
    }

    /// `|self − target|` computed exactly, then rounded to `f64`.
    pub fn distance_to(&self, target: &ExactRational) -> f64 {
        self.to_rational()
            .map_or(f64::INFINITY, |q| to_f64(&(q - target).abs()))
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (+/- {:.1e})",
            self.to_decimal_string(),
            self.error_bound
        )
    }
}

impl Serialize for NumericValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NumericValue", 2)?;
        st.serialize_field("value", &self.to_decimal_string())?;
        st.serialize_field("error_bound", &format!("{:.3e}", self.error_bound))?;
        st.end()
    }
}

/// Absolute value of a float as `f64`, for bound bookkeeping.
pub fn magnitude(x: &BigFloat) -> f64 {
    float_to_f64(x).abs()
}

/// Largest `f64` power of ten not exceeding the requested accuracy.
pub fn tolerance_for(digits: usize) -> f64 {
    10f64.powi(-(digits as i32))
}

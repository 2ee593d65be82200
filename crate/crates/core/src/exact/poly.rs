//! Dense univariate polynomials over the rationals and rational functions
//! built from them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, serde_rational_vec, ExactRational};
use super::series::{PowerSeries, SeriesError};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<ExactRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| ExactRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: ExactRational, k: usize) -> Self {
        let mut v = vec![ExactRational::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn leading(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ExactRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Rescales so that the constant term is one.
    pub fn normalize_constant(&self) -> Option<Self> {
        let c = self.coeffs.first()?;
        if c.is_zero() {
            return None;
        }
        Some(self.scale(&c.recip()))
    }

    /// `z^d · p(1/z)` for a chosen formal degree `d ≥ deg p`.
    pub fn reciprocal(&self, d: usize) -> Self {
        assert!(self.degree().is_none_or(|deg| deg <= d));
        let mut v = self.coeffs.clone();
        v.resize(d + 1, ExactRational::zero());
        v.reverse();
        Self::new(v)
    }

    /// `p(z^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut v = vec![ExactRational::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Self::new(v)
    }

    pub fn eval(&self, z: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ExactRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn to_series(&self, order: usize) -> PowerSeries {
        PowerSeries::new(self.coeffs.clone(), order)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    /// Highest degree first, e.g. `z^2 + 100*z + 160`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &ExactRational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let body = format_rational(&mag);
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{body}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{body}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

/// `num / den` with `den(0) ≠ 0` whenever it is expanded as a series.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        RationalFunction { num, den }
    }

    /// Scales numerator and denominator so that `den(0) = 1`.
    pub fn normalized(&self) -> Option<Self> {
        let c = self.den.coeffs().first()?.clone();
        if c.is_zero() {
            return None;
        }
        let inv = c.recip();
        Some(RationalFunction {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        })
    }

    pub fn to_series(&self, order: usize) -> Result<PowerSeries, SeriesError> {
        self.num
            .to_series(order)
            .div_series(&self.den.to_series(order))
    }

    /// Equality as functions, by cross-multiplication.
    pub fn same_function(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn arithmetic_and_trim() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[1, -1]);
        assert_eq!(&a * &b, Poly::from_ints(&[1, 0, -1]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(Poly::from_ints(&[3, 0, 0]).degree(), Some(0));
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn display_high_degree_first() {
        assert_eq!(
            Poly::from_ints(&[160, 100, 1]).to_string(),
            "z^2 + 100*z + 160"
        );
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-z");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn reciprocal_and_eval() {
        let p = Poly::from_ints(&[2, 1]);
        assert_eq!(p.reciprocal(1), Poly::from_ints(&[1, 2]));
        assert_eq!(p.reciprocal(3), Poly::from_ints(&[0, 0, 1, 2]));
        assert_eq!(p.eval(&int(3)), int(5));
        assert_eq!(p.substitute_power(2), Poly::from_ints(&[2, 0, 1]));
    }

    #[test]
    fn rational_function_expansion() {
        let f = RationalFunction::new(Poly::one(), Poly::from_ints(&[1, -1]));
        let s = f.to_series(5).unwrap();
        assert!(s.coeffs().iter().all(|c| c == &int(1)));
        let g = RationalFunction::new(Poly::from_ints(&[2]), Poly::from_ints(&[2, -2]));
        assert!(f.same_function(&g));
        assert_eq!(g.normalized().unwrap(), f);
    }
}

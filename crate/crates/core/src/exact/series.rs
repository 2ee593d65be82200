//! Truncated univariate power series with exact rational coefficients.
//!
//! A series of order `N` knows the coefficients of `z^0..=z^N` exactly and
//! nothing beyond. Operations propagate the order conservatively: binary
//! operations and composition take the minimum of their inputs, reversion
//! preserves it, integration raises it by one and differentiation lowers it
//! by one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rational::{format_rational, serde_rational_vec, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("inner series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series must have a nonzero linear coefficient and zero constant term to be reverted")]
    NotInvertible,
    #[error("constant term must be 1, got {0}")]
    ConstantTermNotOne(String),
    #[error("constant term must be nonzero")]
    ZeroConstantTerm,
    #[error("no coefficient is known to the requested order")]
    OrderExhausted,
    #[error("coefficient of z^{0} is nonzero, cannot divide by z^{1}")]
    NotDivisibleByPower(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct PowerSeries {
    coeffs: Vec<ExactRational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<ExactRational>,
}

impl TryFrom<SeriesRepr> for PowerSeries {
    type Error = String;

    fn try_from(r: SeriesRepr) -> Result<Self, String> {
        if r.coeffs.len() != r.order + 1 {
            return Err(format!(
                "series of order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            ));
        }
        Ok(PowerSeries { coeffs: r.coeffs })
    }
}

impl From<PowerSeries> for SeriesRepr {
    fn from(s: PowerSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, "; O(z^{})]", self.order() + 1)
    }
}

impl PowerSeries {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past the order.
    pub fn new(mut coeffs: Vec<ExactRational>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| ExactRational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> ExactRational) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(ExactRational::one(), 0, order)
    }

    /// The series `z`.
    pub fn var(order: usize) -> Self {
        Self::monomial(ExactRational::one(), 1, order)
    }

    pub fn monomial(c: ExactRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&ExactRational> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    pub fn constant(&self) -> &ExactRational {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot raise the order of a series by truncation"
        );
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `z^k · f`, known to order `order + k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries { coeffs }
    }

    /// `f / z^k`, provided the first `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() {
            return Err(SeriesError::OrderExhausted);
        }
        if let Some(i) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisibleByPower(i, k));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `f(z^k)`; the result is known through `z^{k(N+1)-1}`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let order = k * (self.order() + 1) - 1;
        let mut out = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    /// Inverse of [`substitute_power`](Self::substitute_power): keeps every
    /// `k`-th coefficient, requiring the others to vanish.
    pub fn extract_power(&self, k: usize) -> Result<Self, SeriesError> {
        assert!(k >= 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k != 0 && !c.is_zero() {
                return Err(SeriesError::NotDivisibleByPower(i, k));
            }
        }
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().step_by(k).cloned().collect(),
        })
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (a, da) = common_denominator(&self.coeffs[..=order]);
        let (b, db) = common_denominator(&other.coeffs[..=order]);
        let denom = da * db;
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = BigInt::zero();
                for i in 0..=n {
                    if !a[i].is_zero() && !b[n - i].is_zero() {
                        acc += &a[i] * &b[n - i];
                    }
                }
                ExactRational::new(acc, denom.clone())
            })
            .collect();
        PowerSeries { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        result
    }

    /// `1/f` for a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let mut out: Vec<ExactRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = ExactRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `self / other`; the divisor must have a nonzero constant term.
    pub fn div_series(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul_series(&other.inverse()?))
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner from the top; terms above `order` cannot contribute.
        let mut acc = Self::monomial(self.coeffs[order].clone(), 0, order);
        for k in (0..order).rev() {
            acc = acc.mul_series(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[z^n] g = (1/n) [w^{n-1}] (w/f(w))^n`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let order = self.order();
        if order < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        // h = w / f(w), known to order N-1
        let h = self.shift_down(1)?.inverse()?;
        let mut out = Self::zero(order);
        let mut power = Self::one(h.order());
        for n in 1..=order {
            power = power.mul_series(&h);
            out.coeffs[n] = &power.coeffs[n - 1] / ExactRational::from_integer(n.into());
        }
        Ok(out)
    }

    /// `f^e` for `f(0) = 1`, via the recurrence obtained from `f·h' = e·f'·h`.
    pub fn binomial_pow(&self, e: &ExactRational) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne(format_rational(
                &self.coeffs[0],
            )));
        }
        let mut h: Vec<ExactRational> = Vec::with_capacity(self.coeffs.len());
        h.push(ExactRational::one());
        for n in 1..self.coeffs.len() {
            let nq = ExactRational::from_integer(n.into());
            let mut acc = ExactRational::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let kq = ExactRational::from_integer(k.into());
                let w = (e + ExactRational::one()) * &kq - &nq;
                acc += w * &self.coeffs[k] * &h[n - k];
            }
            h.push(acc / nq);
        }
        Ok(PowerSeries { coeffs: h })
    }

    /// Antiderivative with zero constant term; order rises by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExactRational::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / ExactRational::from_integer((n + 1).into()));
        }
        PowerSeries { coeffs }
    }

    /// Term-wise derivative; order drops by one.
    pub fn derive(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, c)| c * ExactRational::from_integer((n + 1).into()))
            .collect();
        Ok(PowerSeries { coeffs })
    }

    pub fn derive_n(&self, times: usize) -> Result<Self, SeriesError> {
        let mut s = self.clone();
        for _ in 0..times {
            s = s.derive()?;
        }
        Ok(s)
    }

    /// `f(-z)`.
    pub fn reflect(&self) -> Self {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Evaluates a polynomial `p(w) = Σ p_m w^m` at this series.
    pub fn eval_polynomial(&self, poly: &[ExactRational]) -> Self {
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in poly.iter().rev() {
            acc = acc.mul_series(self);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Equality on the coefficients both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    /// First index (up to the common order) where the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

/// Rewrites `coeffs` as integers over one shared denominator.
fn common_denominator(coeffs: &[ExactRational]) -> (Vec<BigInt>, BigInt) {
    let lcm = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else {
                c.numer() * (&lcm / c.denom())
            }
        })
        .collect();
    (ints, lcm)
}

fn zip_with(
    a: &PowerSeries,
    b: &PowerSeries,
    f: impl Fn(&ExactRational, &ExactRational) -> ExactRational,
) -> PowerSeries {
    let order = a.order().min(b.order());
    PowerSeries {
        coeffs: (0..=order).map(|i| f(&a.coeffs[i], &b.coeffs[i])).collect(),
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `Σ (a)_k (b)_k / ((c)_k k!) x^k` to the given order.
pub fn hypergeometric_2f1(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
    order: usize,
) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = ExactRational::one();
    for k in 0..=order {
        coeffs.push(term.clone());
        let kq = ExactRational::from_integer(k.into());
        let denom = (c + &kq) * (&kq + ExactRational::one());
        if denom.is_zero() {
            coeffs.resize(order + 1, ExactRational::zero());
            break;
        }
        term = term * (a + &kq) * (b + &kq) / denom;
    }
    PowerSeries::new(coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn difference_of_squares() {
        let a = PowerSeries::from_ints(&[1, 1], 5);
        let b = PowerSeries::from_ints(&[1, -1], 5);
        assert_eq!(&a * &b, PowerSeries::from_ints(&[1, 0, -1], 5));
    }

    #[test]
    fn product_order_is_minimum() {
        let z = PowerSeries::var(7);
        let zz = &z * &PowerSeries::var(4);
        assert_eq!(zz.order(), 4);
        assert_eq!(zz, PowerSeries::from_ints(&[0, 0, 1], 4));
        assert_eq!(zz.coeff(5), None);
    }

    #[test]
    fn geometric_composed_with_identity() {
        let geo = PowerSeries::from_fn(10, |_| int(1));
        assert_eq!(geo.compose(&PowerSeries::var(10)).unwrap(), geo);
    }

    #[test]
    fn square_of_shifted_variable() {
        let outer = PowerSeries::from_ints(&[0, 0, 1], 8);
        let inner = PowerSeries::from_ints(&[0, 1, 1], 8);
        assert_eq!(
            outer.compose(&inner).unwrap(),
            PowerSeries::from_ints(&[0, 0, 1, 2, 1], 8)
        );
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let f = PowerSeries::var(4);
        assert_eq!(
            f.compose(&PowerSeries::one(4)),
            Err(SeriesError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn mobius_reversion() {
        // z/(1-z) and z/(1+z) are compositional inverses
        let f = PowerSeries::from_fn(12, |n| if n == 0 { int(0) } else { int(1) });
        let g = PowerSeries::from_fn(12, |n| {
            if n == 0 {
                int(0)
            } else if n % 2 == 1 {
                int(1)
            } else {
                int(-1)
            }
        });
        assert_eq!(f.revert().unwrap(), g);
        assert_eq!(f.revert().unwrap().order(), 12);
    }

    #[test]
    fn revert_requires_linear_term() {
        let f = PowerSeries::from_ints(&[0, 0, 1], 6);
        assert_eq!(f.revert(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn cube_root_cubed() {
        let f = PowerSeries::from_ints(&[1, -1], 30);
        let r = f.binomial_pow(&rat(1, 3)).unwrap();
        assert_eq!(r.pow(3), f);
    }

    #[test]
    fn zeroth_power_is_one() {
        let f = PowerSeries::from_ints(&[1, 3, -2, 7], 9);
        assert_eq!(f.binomial_pow(&int(0)).unwrap(), PowerSeries::one(9));
    }

    #[test]
    fn inverse_cube_root_head() {
        // 1-t^3 to the power -1/3: 1 + t^3/3 + 2t^6/9 + ...
        let f = PowerSeries::from_ints(&[1, 0, 0, -1], 12);
        let r = f.binomial_pow(&rat(-1, 3)).unwrap();
        assert_eq!(r.coeff(3), Some(&rat(1, 3)));
        assert_eq!(r.coeff(6), Some(&rat(2, 9)));
        // reciprocal cubed recovers f
        assert_eq!(r.inverse().unwrap().pow(3), f);
    }

    #[test]
    fn binomial_pow_rejects_bad_constant() {
        let f = PowerSeries::from_ints(&[2, 1], 4);
        assert!(matches!(
            f.binomial_pow(&rat(1, 2)),
            Err(SeriesError::ConstantTermNotOne(_))
        ));
    }

    #[test]
    fn calculus_round_trip() {
        let f = PowerSeries::from_ints(&[3, -1, 4, 1, -5], 6);
        let back = f.integrate().derive().unwrap();
        assert_eq!(back, f);
        assert_eq!(f.integrate().order(), 7);
        assert!(PowerSeries::one(5).derive().unwrap().is_zero());
        assert_eq!(
            PowerSeries::one(0).derive(),
            Err(SeriesError::OrderExhausted)
        );
    }

    #[test]
    fn power_substitution_round_trip() {
        let f = PowerSeries::from_ints(&[1, 2, 3], 2);
        let g = f.substitute_power(3);
        assert_eq!(g.order(), 8);
        assert_eq!(g.coeff(6), Some(&int(3)));
        assert_eq!(g.extract_power(3).unwrap(), f);
    }

    #[test]
    fn hypergeometric_normalization() {
        let f = hypergeometric_2f1(&rat(1, 3), &rat(2, 3), &rat(4, 3), 5);
        assert_eq!(f.constant(), &int(1));
        // (1/3)(2/3)/(4/3) = 1/6
        assert_eq!(f.coeff(1), Some(&rat(1, 6)));
    }

    #[test]
    fn json_round_trip() {
        let f = PowerSeries::new(vec![rat(1, 2), int(-3)], 3);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"order":3,"coeffs":["1/2","-3","0","0"]}"#);
        let back: PowerSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<PowerSeries>(r#"{"order":3,"coeffs":["1"]}"#).is_err());
    }
}

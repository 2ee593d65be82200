//! Integer polynomials in two commuting variables `x`, `y`, and the urn
//! derivations acting on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UrnError {
    #[error("replacement matrix {0:?} is not balanced")]
    Unbalanced([[i32; 2]; 2]),
    #[error("drawing from x^{p} y^{q} would leave a negative ball count")]
    NegativeExponent { p: u32, q: u32 },
}

/// A two-colour urn: drawing a ball of colour `i` puts it back together with
/// `matrix[i][0]` balls of colour x and `matrix[i][1]` of colour y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UrnRule {
    pub name: String,
    pub matrix: [[i32; 2]; 2],
}

impl UrnRule {
    pub fn new(name: &str, matrix: [[i32; 2]; 2]) -> Result<Self, UrnError> {
        if matrix[0][0] + matrix[0][1] != matrix[1][0] + matrix[1][1] {
            return Err(UrnError::Unbalanced(matrix));
        }
        Ok(UrnRule {
            name: name.to_string(),
            matrix,
        })
    }

    /// Each ball is replaced by two balls of the other colour.
    pub fn m12() -> Self {
        Self::new("M12", [[-1, 2], [2, -1]]).expect("balanced")
    }

    pub fn t23() -> Self {
        Self::new("T23", [[-2, 3], [4, -3]]).expect("balanced")
    }

    /// Net change in the number of balls per draw.
    pub fn balance(&self) -> i32 {
        self.matrix[0][0] + self.matrix[0][1]
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: impl Into<BigInt>, p: u32, q: u32) -> Self {
        let mut s = Self::zero();
        s.add_term(p, q, c.into());
        s
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((p, q)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn coeff(&self, p: u32, q: u32) -> BigInt {
        self.terms
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(p, q), c)| (p, q, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (p, q, a) in self.terms() {
            out.add_term(p, q, a * c);
        }
        out
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Distinct total degrees present.
    pub fn total_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|&(p, q)| p + q).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms()
            .map(|(p, q, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(p as i32) * y.powi(q as i32))
            .sum()
    }

    /// One application of the urn derivation
    /// `x^{1+M00} y^{M01} ∂x + x^{M10} y^{1+M11} ∂y`.
    pub fn delta(&self, rule: &UrnRule) -> Result<Self, UrnError> {
        let m = rule.matrix;
        let mut out = Self::zero();
        for (p, q, c) in self.terms() {
            for (count, dx, dy) in [(p, m[0][0], m[0][1]), (q, m[1][0], m[1][1])] {
                if count == 0 {
                    continue;
                }
                let np = p as i64 + dx as i64;
                let nq = q as i64 + dy as i64;
                if np < 0 || nq < 0 {
                    return Err(UrnError::NegativeExponent { p, q });
                }
                out.add_term(np as u32, nq as u32, c * BigInt::from(count));
            }
        }
        Ok(out)
    }

    /// `δ^n[self]`, returning every intermediate power.
    pub fn delta_iterates(&self, rule: &UrnRule, n: usize) -> Result<Vec<Self>, UrnError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.clone());
        for _ in 0..n {
            let next = out.last().expect("nonempty").delta(rule)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// Free-function form of [`BivariatePoly::delta`].
pub fn delta_apply(p: &BivariatePoly, rule: &UrnRule) -> Result<BivariatePoly, UrnError> {
    p.delta(rule)
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (p, q, c) in rhs.terms() {
            out.add_term(p, q, c.clone());
        }
        out
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (p1, q1, a) in self.terms() {
            for (p2, q2, b) in rhs.terms() {
                out.add_term(p1 + p2, q1 + q2, a * b);
            }
        }
        out
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, q, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if p > 0 {
                write!(f, "*x^{p}")?;
            }
            if q > 0 {
                write!(f, "*y^{q}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m12_worked_display() {
        // δ[x y²] = y⁴ + 2x³y
        let p = BivariatePoly::monomial(1, 1, 2);
        let d = p.delta(&UrnRule::m12()).unwrap();
        assert_eq!(
            d,
            &BivariatePoly::monomial(1, 0, 4) + &BivariatePoly::monomial(2, 3, 1)
        );
    }

    #[test]
    fn constants_are_killed() {
        let one = BivariatePoly::monomial(1, 0, 0);
        assert!(one.delta(&UrnRule::m12()).unwrap().is_empty());
    }

    #[test]
    fn t23_first_step() {
        let d = BivariatePoly::monomial(1, 2, 0)
            .delta(&UrnRule::t23())
            .unwrap();
        assert_eq!(d, BivariatePoly::monomial(2, 0, 3));
    }

    #[test]
    fn t23_rejects_bad_state() {
        let err = BivariatePoly::monomial(1, 1, 0)
            .delta(&UrnRule::t23())
            .unwrap_err();
        assert_eq!(err, UrnError::NegativeExponent { p: 1, q: 0 });
    }

    #[test]
    fn unbalanced_rule_rejected() {
        assert!(UrnRule::new("bad", [[1, 1], [0, 1]]).is_err());
    }

    #[test]
    fn no_zero_terms_stored() {
        let mut p = BivariatePoly::monomial(3, 1, 1);
        p.add_term(1, 1, BigInt::from(-3));
        assert!(p.is_empty());
    }
}

//! Continued fractions of Jacobi (J) and Stieltjes (S) type.
//!
//! Conventions, in a variable `w`:
//!
//! * J-fraction: `1/(1 − c₀w − a₁w²/(1 − c₁w − a₂w²/(1 − …)))`
//! * S-fraction: `1/(1 + d₁w/(1 + d₂w/(1 + …)))`
//!
//! A fraction may carry a monomial prefactor `κ·x^m` and be expressed in
//! `w = x^s`; [`JFraction::convergent`] and friends return rational
//! functions in `x`.

pub mod families;
pub mod laplace;
pub mod ortho;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::poly::{Poly, RationalFunction};
use crate::exact::rational::{serde_rational, serde_rational_vec, ExactRational};
use crate::exact::series::{PowerSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("series must start with 1, got constant term {0}")]
    NotNormalized(String),
    #[error("depth {depth} needs order {needed} in the fraction variable, series has {have}")]
    InsufficientOrder {
        depth: usize,
        needed: usize,
        have: usize,
    },
    #[error("convergent depth {requested} exceeds available depth {available}")]
    DepthUnavailable { requested: usize, available: usize },
    #[error("prefactor does not divide the series: {0}")]
    Prefactor(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `coeff · x^power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    #[serde(with = "serde_rational")]
    pub coeff: ExactRational,
    pub power: usize,
}

impl Monomial {
    pub fn new(coeff: ExactRational, power: usize) -> Self {
        Monomial { coeff, power }
    }

    pub fn one() -> Self {
        Self::new(ExactRational::one(), 0)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::monomial(self.coeff.clone(), self.power)
    }
}

/// Why extraction stopped before the requested depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// The tail vanished: the series is the finite fraction found so far.
    Finite,
    /// A zero partial numerator with a nonzero remainder: no fraction of
    /// this shape represents the series past this point.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JFraction {
    #[serde(with = "serde_rational_vec")]
    pub c: Vec<ExactRational>,
    /// `a[0]` is `a₁`.
    #[serde(with = "serde_rational_vec")]
    pub a: Vec<ExactRational>,
    pub prefactor: Monomial,
    /// `w = x^step`.
    pub step: usize,
    pub termination: Option<Termination>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SFraction {
    /// `d[0]` is `d₁`.
    #[serde(with = "serde_rational_vec")]
    pub d: Vec<ExactRational>,
    pub prefactor: Monomial,
    pub step: usize,
    pub termination: Option<Termination>,
}

fn check_unit(f: &PowerSeries) -> Result<(), ContFracError> {
    if !f.constant().is_one() {
        return Err(ContFracError::NotNormalized(crate::exact::format_rational(
            f.constant(),
        )));
    }
    Ok(())
}

/// Successive-reciprocal extraction of `c₀..c_{k−1}`, `a₁..a_{k−1}`.
///
/// A depth-`k` fraction needs the series through `w^{2k−1}`.
pub fn jfraction_extract(f: &PowerSeries, depth: usize) -> Result<JFraction, ContFracError> {
    check_unit(f)?;
    let needed = (2 * depth).saturating_sub(1);
    if depth > 0 && f.order() < needed {
        return Err(ContFracError::InsufficientOrder {
            depth,
            needed,
            have: f.order(),
        });
    }
    let mut c = Vec::new();
    let mut a = Vec::new();
    let mut termination = None;
    let mut g = f.clone();
    for level in 0..depth {
        let u = g.inverse()?;
        let ci = if u.order() >= 1 {
            -u.coeff(1).expect("order ≥ 1").clone()
        } else {
            ExactRational::zero()
        };
        c.push(ci.clone());
        if level + 1 == depth {
            break;
        }
        // 1 − cᵢw − u = aᵢ₊₁ w² · g_next
        let mut rest = PowerSeries::one(u.order()) - u.clone();
        if rest.order() >= 1 {
            let lin = rest.coeff(1).expect("order ≥ 1") - &ci;
            rest = PowerSeries::new(
                rest.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| if i == 1 { lin.clone() } else { x.clone() })
                    .collect(),
                rest.order(),
            );
        }
        let next = rest.shift_down(2)?;
        let ai = next.constant().clone();
        if ai.is_zero() {
            termination = Some(if next.is_zero() {
                Termination::Finite
            } else {
                Termination::Degenerate
            });
            break;
        }
        a.push(ai.clone());
        g = next.scale(&ai.recip());
    }
    Ok(JFraction {
        c,
        a,
        prefactor: Monomial::one(),
        step: 1,
        termination,
    })
}

/// Successive-reciprocal extraction of `d₁..d_k`; needs the series through `w^k`.
pub fn sfraction_extract(f: &PowerSeries, depth: usize) -> Result<SFraction, ContFracError> {
    check_unit(f)?;
    if f.order() < depth {
        return Err(ContFracError::InsufficientOrder {
            depth,
            needed: depth,
            have: f.order(),
        });
    }
    let mut d = Vec::new();
    let mut termination = None;
    let mut g = f.clone();
    for _ in 0..depth {
        let u = g.inverse()?;
        // u − 1 = d w · g_next
        let rest = &u - &PowerSeries::one(u.order());
        let next = rest.shift_down(1)?;
        let di = next.constant().clone();
        if di.is_zero() {
            termination = Some(if next.is_zero() {
                Termination::Finite
            } else {
                Termination::Degenerate
            });
            break;
        }
        d.push(di.clone());
        g = next.scale(&di.recip());
    }
    Ok(SFraction {
        d,
        prefactor: Monomial::one(),
        step: 1,
        termination,
    })
}

/// Even contraction of an S-fraction into the J-fraction with the same
/// expansion: `c₀ = −d₁`, `cₙ = −(d₂ₙ + d₂ₙ₊₁)`, `aₙ = d₂ₙ₋₁d₂ₙ`.
pub fn contract_s_to_j(s: &SFraction) -> JFraction {
    let d = &s.d;
    let m = d.len();
    let mut c = Vec::new();
    let mut a = Vec::new();
    if m > 0 {
        c.push(-d[0].clone());
    }
    let mut n = 1;
    // cₙ needs d_{2n+1}, i.e. index 2n
    while 2 * n < m {
        a.push(&d[2 * n - 2] * &d[2 * n - 1]);
        c.push(-(&d[2 * n - 1] + &d[2 * n]));
        n += 1;
    }
    JFraction {
        c,
        a,
        prefactor: s.prefactor.clone(),
        step: s.step,
        termination: None,
    }
}

impl JFraction {
    pub fn from_coeffs(c: Vec<ExactRational>, a: Vec<ExactRational>) -> Self {
        assert!(
            a.len() + 1 >= c.len(),
            "need a partial numerator between levels"
        );
        JFraction {
            c,
            a,
            prefactor: Monomial::one(),
            step: 1,
            termination: None,
        }
    }

    pub fn with_prefactor(mut self, prefactor: Monomial, step: usize) -> Self {
        self.prefactor = prefactor;
        self.step = step;
        self
    }

    pub fn depth(&self) -> usize {
        self.c.len()
    }

    /// Numerator and denominator polynomials in `w` of the depth-`k`
    /// convergent, by the three-term recurrence. Depth 0 is `1/1`.
    pub fn convergent_w(&self, k: usize) -> Result<(Poly, Poly), ContFracError> {
        if k > self.depth() {
            return Err(ContFracError::DepthUnavailable {
                requested: k,
                available: self.depth(),
            });
        }
        if k == 0 {
            return Ok((Poly::one(), Poly::one()));
        }
        let lin = |i: usize| Poly::new(vec![ExactRational::one(), -self.c[i].clone()]);
        let (mut p_prev, mut q_prev) = (Poly::zero(), Poly::one());
        let (mut p, mut q) = (Poly::one(), lin(0));
        for n in 1..k {
            let quad = Poly::monomial(self.a[n - 1].clone(), 2);
            let p_next = &(&lin(n) * &p) - &(&quad * &p_prev);
            let q_next = &(&lin(n) * &q) - &(&quad * &q_prev);
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
        }
        Ok((p, q))
    }

    /// The depth-`k` convergent as a rational function in `x`, prefactor included.
    pub fn convergent(&self, k: usize) -> Result<RationalFunction, ContFracError> {
        let (p, q) = self.convergent_w(k)?;
        Ok(RationalFunction::new(
            &self.prefactor.to_poly() * &p.substitute_power(self.step),
            q.substitute_power(self.step),
        ))
    }

    /// Expansion of the depth-`depth()` convergent in `w`, to `order`.
    pub fn to_series(&self, order: usize) -> Result<PowerSeries, ContFracError> {
        let (p, q) = self.convergent_w(self.depth())?;
        Ok(p.to_series(order).div_series(&q.to_series(order))?)
    }

    /// Monic orthogonal polynomials `Qₙ(z) = zⁿBₙ(1/z)`, satisfying
    /// `Q_{n+1} = (z − cₙ)Qₙ − aₙQ_{n−1}`.
    pub fn orthogonal_polynomials(&self, count: usize) -> Vec<Poly> {
        let mut out = vec![Poly::one()];
        let mut prev = Poly::zero();
        for n in 0..count.saturating_sub(1).min(self.depth()) {
            let cur = out.last().expect("nonempty").clone();
            let lin = Poly::new(vec![-self.c[n].clone(), ExactRational::one()]);
            let mut next = &lin * &cur;
            if n > 0 {
                next = &next - &prev.scale(&self.a[n - 1]);
            }
            prev = cur;
            out.push(next);
        }
        out
    }
}

impl SFraction {
    pub fn from_coeffs(d: Vec<ExactRational>) -> Self {
        SFraction {
            d,
            prefactor: Monomial::one(),
            step: 1,
            termination: None,
        }
    }

    pub fn with_prefactor(mut self, prefactor: Monomial, step: usize) -> Self {
        self.prefactor = prefactor;
        self.step = step;
        self
    }

    pub fn depth(&self) -> usize {
        self.d.len()
    }

    /// Convergent using `d₁..d_k`; depth 0 is `1/1`.
    pub fn convergent_w(&self, k: usize) -> Result<(Poly, Poly), ContFracError> {
        if k > self.depth() {
            return Err(ContFracError::DepthUnavailable {
                requested: k,
                available: self.depth(),
            });
        }
        let (mut p_prev, mut q_prev) = (Poly::zero(), Poly::one());
        let (mut p, mut q) = (Poly::one(), Poly::one());
        for n in 0..k {
            let lin = Poly::monomial(self.d[n].clone(), 1);
            let p_next = &p + &(&lin * &p_prev);
            let q_next = &q + &(&lin * &q_prev);
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
        }
        Ok((p, q))
    }

    pub fn convergent(&self, k: usize) -> Result<RationalFunction, ContFracError> {
        let (p, q) = self.convergent_w(k)?;
        Ok(RationalFunction::new(
            &self.prefactor.to_poly() * &p.substitute_power(self.step),
            q.substitute_power(self.step),
        ))
    }

    pub fn to_series(&self, order: usize) -> Result<PowerSeries, ContFracError> {
        let (p, q) = self.convergent_w(self.depth())?;
        Ok(p.to_series(order).div_series(&q.to_series(order))?)
    }
}

/// Removes a prefactor `κ·x^m` from `f` and reads the rest in `w = x^step`.
pub fn normalize_to_w(
    f: &PowerSeries,
    prefactor: &Monomial,
    step: usize,
) -> Result<PowerSeries, ContFracError> {
    let stripped = f
        .shift_down(prefactor.power)
        .map_err(|e| ContFracError::Prefactor(e.to_string()))?
        .scale(&prefactor.coeff.recip());
    let usable = stripped.order() - stripped.order() % step;
    let w = stripped
        .truncate(usable)
        .extract_power(step)
        .map_err(|e| ContFracError::Prefactor(e.to_string()))?;
    check_unit(&w)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{factorial, from_bigint, int, rat};

    #[test]
    fn euler_factorial_fraction() {
        // Σ n! wⁿ = 1/(1 − w − 1²w²/(1 − 3w − 2²w²/…))
        let f = PowerSeries::from_fn(20, |n| from_bigint(factorial(n as u64)));
        let j = jfraction_extract(&f, 8).unwrap();
        for (n, c) in j.c.iter().enumerate() {
            assert_eq!(c, &int(2 * n as i64 + 1));
        }
        for (n, a) in j.a.iter().enumerate() {
            assert_eq!(a, &int(((n + 1) * (n + 1)) as i64));
        }
    }

    #[test]
    fn constant_one_terminates() {
        let j = jfraction_extract(&PowerSeries::one(10), 4).unwrap();
        assert_eq!(j.c, vec![int(0)]);
        assert_eq!(j.termination, Some(Termination::Finite));
        let s = sfraction_extract(&PowerSeries::one(10), 4).unwrap();
        assert!(s.d.is_empty());
        assert_eq!(s.termination, Some(Termination::Finite));
    }

    #[test]
    fn degenerate_is_reported() {
        // 1 + w³ has c₀ = 0, a₁ = 0 but a nonzero tail
        let f = PowerSeries::from_ints(&[1, 0, 0, 1], 9);
        let j = jfraction_extract(&f, 3).unwrap();
        assert_eq!(j.termination, Some(Termination::Degenerate));
    }

    #[test]
    fn round_trip_through_series() {
        let j = JFraction::from_coeffs(
            vec![rat(1, 2), int(-3), rat(5, 7), int(2)],
            vec![int(4), rat(-1, 3), int(6)],
        );
        let back = jfraction_extract(&j.to_series(7).unwrap(), 4).unwrap();
        assert_eq!(back.c, j.c);
        assert_eq!(back.a, j.a);
        let s = SFraction::from_coeffs(vec![int(2), rat(3, 4), int(-5), int(7)]);
        let back = sfraction_extract(&s.to_series(4).unwrap(), 4).unwrap();
        assert_eq!(back.d, s.d);
    }

    #[test]
    fn convergent_matches_through_odd_index() {
        let f = PowerSeries::from_fn(20, |n| from_bigint(factorial(n as u64)));
        let j = jfraction_extract(&f, 5).unwrap();
        for k in 1..=5 {
            let (p, q) = j.convergent_w(k).unwrap();
            let s = p.to_series(20).div_series(&q.to_series(20)).unwrap();
            let first = s.first_difference(&f).unwrap();
            assert_eq!(first, 2 * k, "depth {k}");
        }
    }

    #[test]
    fn contraction_of_small_fraction() {
        let s = SFraction::from_coeffs(vec![int(2), int(18), int(80), int(180), int(448)]);
        let j = contract_s_to_j(&s);
        assert_eq!(j.c, vec![int(-2), int(-98), int(-(180 + 448))]);
        assert_eq!(j.a, vec![int(36), int(80 * 180)]);
        assert!(contract_s_to_j(&SFraction::from_coeffs(vec![]))
            .c
            .is_empty());
    }

    #[test]
    fn orthogonal_polynomials_from_recurrence() {
        let j = JFraction::from_coeffs(
            vec![int(-2), int(-98), int(-572)],
            vec![int(36), int(14400)],
        );
        let q = j.orthogonal_polynomials(3);
        assert_eq!(q[1], Poly::from_ints(&[2, 1]));
        assert_eq!(q[2], Poly::from_ints(&[160, 100, 1]));
    }
}

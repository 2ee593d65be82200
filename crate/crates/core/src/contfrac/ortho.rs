//! Orthogonal polynomials attached to the fractions: the family whose
//! denominators come from `cm`'s J-fraction, the Meixner polynomials, and
//! the bounded-width snake generating functions.

use num_traits::One;

use super::families::{family_w_series, Family};
use super::{jfraction_extract, sfraction_extract, ContFracError, SFraction};
use crate::exact::poly::{Poly, RationalFunction};
use crate::exact::rational::{factorial, from_bigint, int, rat, ExactRational};
use crate::exact::series::PowerSeries;

/// `Qₙ(z) = (3n)!·[t³ⁿ] (1−t³)^{−1/3} E(z·θ(t)³)` for `n ≤ max_n`, where
/// `E(y) = Σ yᵏ/(3k)!` and `θ(t) = ∫₀ᵗ (1−w³)^{−2/3} dw`.
pub fn valent_from_generating_function(max_n: usize) -> Vec<Poly> {
    let order = 3 * max_n;
    let base = PowerSeries::from_ints(&[1, 0, 0, -1], order);
    let prefactor = base
        .binomial_pow(&rat(-1, 3))
        .expect("constant term is one");
    let theta = base
        .binomial_pow(&rat(-2, 3))
        .expect("constant term is one")
        .integrate()
        .truncate(order);
    let theta3 = theta.pow(3);

    // columns[k][n] = [t³ⁿ] prefactor·θ^{3k}
    let mut current = prefactor;
    let mut columns = Vec::new();
    for _ in 0..=max_n {
        columns.push(current.clone());
        current = current.mul_series(&theta3);
    }
    (0..=max_n)
        .map(|n| {
            let scale = from_bigint(factorial(3 * n as u64));
            Poly::new(
                (0..=n)
                    .map(|k| {
                        let c = columns[k].coeff(3 * n).expect("in range");
                        c * &scale / from_bigint(factorial(3 * k as u64))
                    })
                    .collect(),
            )
        })
        .collect()
}

/// `Q₀..Q_{count−1}` as monic denominators of the fraction
/// `1/(z + b₀ − a₁/(z + b₁ − …))`, with `(aₙ, bₙ)` extracted from `cm`.
pub fn valent_from_fraction(count: usize) -> Result<Vec<Poly>, ContFracError> {
    let depth = count.max(1);
    let w = family_w_series(Family::Cm, 6 * depth + 3)?;
    let j = jfraction_extract(&w, depth)?;
    Ok(j.orthogonal_polynomials(count))
}

/// Meixner polynomial `Q_h(z) = [t^h] (1+t²)^{−1/2} exp(z·arctan t)`.
pub fn meixner(h: usize) -> Poly {
    let one_plus = PowerSeries::from_ints(&[1, 0, 1], h);
    let b = one_plus
        .binomial_pow(&rat(-1, 2))
        .expect("constant term is one");
    let atan = PowerSeries::from_fn(h, |n| {
        if n % 2 == 1 {
            let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
            rat(sign, n as i64)
        } else {
            int(0)
        }
    });
    let mut current = b;
    let mut coeffs = Vec::new();
    for k in 0..=h {
        coeffs.push(current.coeff(h).expect("in range") / from_bigint(factorial(k as u64)));
        current = current.mul_series(&atan);
    }
    Poly::new(coeffs)
}

/// Secant numbers `E₀, E₂, E₄, …` as a series in `u = z²`, through `u^order`.
pub fn secant_series(order: usize) -> PowerSeries {
    let cos = PowerSeries::from_fn(2 * order, |n| {
        if n % 2 == 1 {
            int(0)
        } else {
            let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
            ExactRational::new(sign.into(), factorial(n as u64))
        }
    });
    let sec = cos.inverse().expect("cos(0) = 1");
    crate::dixonian::laplace_egf_to_ogf(&sec)
        .extract_power(2)
        .expect("sec is even")
}

/// The S-fraction of the secant numbers in `u`: `dₙ = −n²`.
pub fn secant_fraction(depth: usize) -> Result<SFraction, ContFracError> {
    sfraction_extract(&secant_series(depth), depth)
}

/// `W^{[h]}(z)`, the generating function of odd snakes of width at most
/// `h`: the depth-`(h−1)` convergent of the secant fraction, in `z`.
pub fn snake_width_gf(h: usize) -> Result<RationalFunction, ContFracError> {
    assert!(h >= 1, "width starts at 1");
    let s = secant_fraction(h.max(2) - 1)?.with_prefactor(super::Monomial::one(), 2);
    s.convergent(h - 1)
}

/// `z^h Q_h(1/z)` scaled to constant term one.
pub fn reciprocal_meixner(h: usize) -> Poly {
    meixner(h)
        .reciprocal(h)
        .normalize_constant()
        .expect("Q_h has leading coefficient 1/h!")
}

/// Whether `W^{[h]}`'s denominator is the reciprocal Meixner polynomial.
pub fn width_denominator_matches(h: usize) -> Result<bool, ContFracError> {
    let w = snake_width_gf(h)?;
    let den = w.den.normalize_constant().unwrap_or_else(Poly::one);
    Ok(den == reciprocal_meixner(h))
}

/// Printed list `1/1, 1/(1−z²), (1−4z²)/(1−5z²), (1−13z²)/(1−14z²+9z⁴)`.
pub fn printed_width_functions() -> Vec<RationalFunction> {
    let p = Poly::from_ints;
    vec![
        RationalFunction::new(p(&[1]), p(&[1])),
        RationalFunction::new(p(&[1]), p(&[1, 0, -1])),
        RationalFunction::new(p(&[1, 0, -4]), p(&[1, 0, -5])),
        RationalFunction::new(p(&[1, 0, -13]), p(&[1, 0, -14, 0, 9])),
    ]
}

/// Whether every coefficient of `p` is one over an integer, i.e. the poly
/// has leading coefficient `1/h!` as expected for Meixner at degree `h`.
pub fn meixner_leading_ok(h: usize) -> bool {
    meixner(h)
        .leading()
        .is_some_and(|l| (l * from_bigint(factorial(h as u64))).is_one())
}

/// The printed `Q₀..Q₄`.
pub fn printed_valent() -> Vec<Poly> {
    vec![
        Poly::from_ints(&[1]),
        Poly::from_ints(&[2, 1]),
        Poly::from_ints(&[160, 100, 1]),
        Poly::from_ints(&[62720, 42960, 672, 1]),
        Poly::from_ints(&[68992000, 49755200, 963600, 2420, 1]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valent_generating_function() {
        assert_eq!(valent_from_generating_function(4), printed_valent());
    }

    #[test]
    fn valent_recurrence() {
        assert_eq!(valent_from_fraction(5).unwrap(), printed_valent());
    }

    #[test]
    fn meixner_small() {
        assert_eq!(meixner(0), Poly::from_ints(&[1]));
        assert_eq!(meixner(1), Poly::from_ints(&[0, 1]));
        assert_eq!(meixner(2), Poly::new(vec![rat(-1, 2), int(0), rat(1, 2)]));
        assert_eq!(
            meixner(3),
            Poly::new(vec![int(0), rat(-5, 6), int(0), rat(1, 6)])
        );
        assert!((0..8).all(meixner_leading_ok));
    }

    #[test]
    fn secant_numbers_and_fraction() {
        let s = secant_series(4);
        assert_eq!(s, PowerSeries::from_ints(&[1, 1, 5, 61, 1385], 4));
        let f = secant_fraction(6).unwrap();
        let expected: Vec<_> = (1..=6).map(|n| int(-(n * n))).collect();
        assert_eq!(f.d, expected);
    }

    #[test]
    fn width_functions() {
        for (h, expected) in (1..=4).zip(printed_width_functions()) {
            let w = snake_width_gf(h).unwrap();
            assert_eq!(w, expected, "h = {h}");
        }
        for h in 1..=6 {
            assert!(width_denominator_matches(h).unwrap(), "h = {h}");
        }
    }
}

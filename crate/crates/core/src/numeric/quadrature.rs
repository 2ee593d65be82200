//! Quadrature rules.
//!
//! [`tanh_sinh_unit`] is the high-precision workhorse; [`gauss_legendre`] is
//! a double-precision rule used as an independent cross-check.

use astro_float::BigFloat;

use super::{magnitude, Ctx, NumericError};

const MAX_LEVELS: usize = 14;
/// Abscissae stop at `t = T_MAX` whatever the integrand does.
const T_MAX: f64 = 8.0;

/// Integrates over `[0, 1]` by the double-exponential rule.
///
/// The integrand receives both `x` and `1 − x`, each computed without
/// cancellation, so endpoint singularities such as `(1 − x)^{-2/3}` can be
/// evaluated accurately. Step size is halved until two successive levels
/// agree to `tol`; the returned bound is that last difference.
pub fn tanh_sinh_unit<F>(ctx: &mut Ctx, mut f: F, tol: f64) -> Result<(BigFloat, f64), NumericError>
where
    F: FnMut(&mut Ctx, &BigFloat, &BigFloat) -> BigFloat,
{
    let pi = ctx.pi();
    let half_pi = ctx.div(&pi, &ctx.int(2));
    let one = ctx.int(1);

    // Contribution of abscissa ±t, both halves of the symmetric pair.
    let mut node = |ctx: &mut Ctx, t: f64, pair: bool| -> Result<BigFloat, NumericError> {
        let tb = ctx.f64(t);
        let sh = ctx.sinh(&tb);
        let u = ctx.mul(&half_pi, &sh);
        let twice = ctx.add(&u, &u);
        let e = ctx.exp(&twice);
        // x = 1/(1+e^{-2u}), 1-x = 1/(1+e^{2u})
        let one_minus_x = ctx.recip(&ctx.add(&one, &e));
        let x = ctx.div(&e, &ctx.add(&one, &e));
        let ch = ctx.cosh(&tb);
        let w = ctx.mul(&ctx.mul(&pi, &ch), &ctx.mul(&x, &one_minus_x));
        let mut v = f(ctx, &x, &one_minus_x);
        if pair {
            let mirrored = f(ctx, &one_minus_x, &x);
            v = ctx.add(&v, &mirrored);
        }
        let out = ctx.mul(&w, &v);
        if out.is_nan() {
            return Err(NumericError::Float("tanh-sinh node"));
        }
        Ok(out)
    };

    let cutoff = tol * 1e-6;
    let mut h = 0.5f64;
    // level 0: all multiples of h
    let mut sum = node(ctx, 0.0, false)?;
    let mut k = 1usize;
    loop {
        let t = k as f64 * h;
        if t > T_MAX {
            break;
        }
        let term = node(ctx, t, true)?;
        let small = magnitude(&term) < cutoff;
        sum = ctx.add(&sum, &term);
        if small && t > 1.0 {
            break;
        }
        k += 1;
    }
    let mut estimate = ctx.mul(&sum, &ctx.f64(h));

    for _ in 0..MAX_LEVELS {
        h /= 2.0;
        let mut k = 1usize;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let term = node(ctx, t, true)?;
            let small = magnitude(&term) < cutoff;
            sum = ctx.add(&sum, &term);
            if small && t > 1.0 {
                break;
            }
            k += 2;
        }
        let next = ctx.mul(&sum, &ctx.f64(h));
        let diff = magnitude(&ctx.sub(&next, &estimate));
        estimate = next;
        if diff < tol {
            let rounding = magnitude(&estimate) * ctx.unit_roundoff() * 1e3;
            return Ok((estimate, diff + rounding));
        }
    }
    Err(NumericError::NoConvergence("tanh-sinh quadrature"))
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre on `[a, b]` with `panels` equal pieces.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize, panels: usize) -> f64 {
    let nodes = gauss_legendre_nodes(n);
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|j| {
            let lo = a + j as f64 * width;
            let mid = lo + width / 2.0;
            nodes
                .iter()
                .map(|&(x, w)| w * f(mid + x * width / 2.0))
                .sum::<f64>()
                * width
                / 2.0
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn polynomial_integral() {
        let mut ctx = Ctx::for_digits(30).unwrap();
        let (v, err) = tanh_sinh_unit(&mut ctx, |c, x, _| c.mul(x, x), 1e-30).unwrap();
        let v = crate::numeric::NumericValue::new(v, err, 30);
        assert!(v.distance_to(&rat(1, 3)) < 1e-29);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫ (1-x)^{-1/2} = 2
        let mut ctx = Ctx::for_digits(25).unwrap();
        let (v, _) = tanh_sinh_unit(&mut ctx, |c, _, r| c.recip(&c.sqrt(r)), 1e-25).unwrap();
        assert!((super::super::float_to_f64(&v) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_exact_on_polynomials() {
        let v = gauss_legendre(|x| x.powi(7) - 3.0 * x * x, 0.0, 2.0, 5, 1);
        assert!((v - (256.0 / 8.0 - 8.0)).abs() < 1e-12);
        let nodes = gauss_legendre_nodes(20);
        let total: f64 = nodes.iter().map(|n| n.1).sum();
        assert!((total - 2.0).abs() < 1e-13);
    }
}

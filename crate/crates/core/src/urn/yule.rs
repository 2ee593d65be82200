//! The Yule process: each particle lives an exponential time, then splits
//! into two particles of the other type.

use serde::Serialize;

use super::UrnProcError;
use crate::dixonian::eval::{smh_cmh_float, EvalMode};
use crate::exact::rational::ExactRational;
use crate::exact::series::PowerSeries;
use crate::numeric::{magnitude, Ctx, NumericError, NumericValue};

/// `X(t) = e^{−t}smh(1 − e^{−t})` and `Y(t) = e^{−t}cmh(1 − e^{−t})`: the
/// probabilities that, starting from one particle of the first type, all
/// particles at time `t` are of the second (resp. first) type.
pub fn yule_monochrome(
    t: &ExactRational,
    digits: usize,
) -> Result<(NumericValue, NumericValue), UrnProcError> {
    if t < &ExactRational::from_integer(0.into()) {
        return Err(NumericError::OutOfDomain {
            arg: crate::exact::format_rational(t),
            domain: "t >= 0".into(),
        }
        .into());
    }
    let mut ctx = Ctx::for_digits(digits)?;
    let tf = ctx.rational(t);
    let e = ctx.exp(&tf.neg());
    let u = ctx.sub(&ctx.int(1), &e);
    let u_err = magnitude(&u) * ctx.unit_roundoff() * 4.0;
    let (s, c) = smh_cmh_float(&ctx, &u, u_err, EvalMode::Auto)?;
    let scale = |v: (astro_float::BigFloat, f64)| {
        let out = ctx.mul(&e, &v.0);
        let err = v.1 * magnitude(&e) + magnitude(&out) * ctx.unit_roundoff() * 8.0;
        NumericValue::new(out, err, digits)
    };
    Ok((scale(s), scale(c)))
}

pub fn yule_all_second_type(
    t: &ExactRational,
    digits: usize,
) -> Result<NumericValue, UrnProcError> {
    Ok(yule_monochrome(t, digits)?.0)
}

pub fn yule_all_first_type(t: &ExactRational, digits: usize) -> Result<NumericValue, UrnProcError> {
    Ok(yule_monochrome(t, digits)?.1)
}

/// Classical fourth-order Runge–Kutta on `X' = Y² − X`, `Y' = X² − Y`,
/// `X(0) = 0`, `Y(0) = 1`, with fixed step `h`.
pub fn yule_rk4(t: f64, h: f64) -> (f64, f64) {
    let f = |x: f64, y: f64| (y * y - x, x * x - y);
    let steps = (t / h).round() as usize;
    let h = if steps == 0 { 0.0 } else { t / steps as f64 };
    let (mut x, mut y) = (0.0f64, 1.0f64);
    for _ in 0..steps {
        let k1 = f(x, y);
        let k2 = f(x + h / 2.0 * k1.0, y + h / 2.0 * k1.1);
        let k3 = f(x + h / 2.0 * k2.0, y + h / 2.0 * k2.1);
        let k4 = f(x + h * k3.0, y + h * k3.1);
        x += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        y += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
    }
    (x, y)
}

/// Population size at time `t` from one particle is geometric:
/// `P(size = k) = e^{−t}(1 − e^{−t})^{k−1}`.
pub fn yule_size_law(k: u64, t: f64) -> f64 {
    assert!(k >= 1 && t >= 0.0);
    let q = (-t).exp();
    q * (1.0 - q).powi((k - 1) as i32)
}

/// Continuous-time probability `e^{−t}K(1 − e^{−t})` from a discrete-time
/// generating function `K`; `K` is summed through its truncation order, so
/// the result is exact only when `K` is a polynomial.
pub fn discrete_to_continuous(
    k: &PowerSeries,
    t: &ExactRational,
    digits: usize,
) -> Result<NumericValue, UrnProcError> {
    let mut ctx = Ctx::for_digits(digits)?;
    let e = ctx.exp(&ctx.rational(t).neg());
    let u = ctx.sub(&ctx.int(1), &e);
    let mut acc = ctx.int(0);
    for c in k.coeffs().iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, &u), &ctx.rational(c));
    }
    let v = ctx.mul(&e, &acc);
    let err = magnitude(&v) * ctx.unit_roundoff() * (k.order() as f64 + 4.0);
    Ok(NumericValue::new(v, err, digits))
}

#[derive(Debug, Clone, Serialize)]
pub struct YuleComparison {
    pub t: f64,
    pub closed_form: f64,
    pub integrated: f64,
    pub difference: f64,
}

/// `X(t)` by closed form against the fixed-step integrator.
pub fn compare_with_ode(t: &ExactRational, h: f64) -> Result<YuleComparison, UrnProcError> {
    let (x, _) = yule_monochrome(t, 30)?;
    let tf = crate::exact::rational::to_f64(t);
    let (xi, _) = yule_rk4(tf, h);
    let closed = x.to_f64();
    Ok(YuleComparison {
        t: tf,
        closed_form: closed,
        integrated: xi,
        difference: (closed - xi).abs(),
    })
}

//! Numerical values: the constant `π₃` and the functions `sm`, `cm`, `smh`,
//! `cmh` on the real line inside their domain of analyticity.
//!
//! Evaluation sums the exact Taylor series in high precision and bounds the
//! tail geometrically. On `[0, ρ]`, with `ρ = π₃/3`, arguments beyond `ρ/2`
//! are folded back by `sm(ρ − u) = cm(u)`, so the series is only ever used
//! at `|u| ≤ ρ/2` in [`EvalMode::Auto`].

use std::collections::HashMap;
use std::sync::Mutex;

use astro_float::BigFloat;

use super::egf_integers;
use crate::exact::rational::{factorial, rat, ExactRational};
use crate::numeric::quadrature::{gauss_legendre, tanh_sinh_unit};
use crate::numeric::{magnitude, tolerance_for, Ctx, NumericError, NumericValue};

/// `ρ = π₃/3` in double precision, used only to size tail bounds.
const RHO_F64: f64 = 1.766_638_750_285_45;
/// Farthest point from the origin at which the series is summed directly.
pub const DIRECT_RADIUS_FRACTION: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    /// Reflect through `ρ − u` so that the series argument stays small.
    #[default]
    Auto,
    /// Sum the series at the argument itself, for `|z| ≤ 0.95ρ`.
    Direct,
}

/// A float and its absolute error bound.
pub(crate) type Approx = (BigFloat, f64);

fn cached_pi3(digits: usize) -> Result<(ExactRational, f64), NumericError> {
    static CACHE: Mutex<Option<HashMap<usize, (ExactRational, f64)>>> = Mutex::new(None);
    {
        let guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = guard.as_ref().and_then(|m| m.get(&digits)) {
            return Ok(v.clone());
        }
    }
    let mut ctx = Ctx::for_digits(digits)?;
    let tol = tolerance_for(digits + 3);
    // (1 − t³)^{-2/3} with 1 − t³ = (1 − t)(1 + t + t²)
    let (v, err) = tanh_sinh_unit(
        &mut ctx,
        |c, t, one_minus_t| {
            let one = c.int(1);
            let q = c.add(&c.add(&one, t), &c.mul(t, t));
            let base = c.mul(one_minus_t, &q);
            let r = c.cbrt(&base);
            c.recip(&c.mul(&r, &r))
        },
        tol / 3.0,
    )?;
    let v = c_scale(&ctx, &v, 3);
    let q = crate::numeric::float_to_rational(&v).ok_or(NumericError::Float("pi3"))?;
    let entry = (q, 3.0 * err);
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .get_or_insert_with(HashMap::new)
        .insert(digits, entry.clone());
    Ok(entry)
}

fn c_scale(ctx: &Ctx, v: &BigFloat, k: i64) -> BigFloat {
    ctx.mul(v, &ctx.int(k))
}

/// `π₃ = 3∫₀¹(1 − t³)^{-2/3} dt` to `digits` decimal places.
pub fn pi3(digits: usize) -> Result<NumericValue, NumericError> {
    let ctx = Ctx::for_digits(digits)?;
    let (q, err) = cached_pi3(digits)?;
    Ok(NumericValue::new(ctx.rational(&q), err, digits))
}

/// `ρ = π₃/3`, the radius of convergence of the Taylor series of `sm`.
pub fn rho(digits: usize) -> Result<NumericValue, NumericError> {
    let ctx = Ctx::for_digits(digits)?;
    let (q, err) = cached_pi3(digits)?;
    Ok(NumericValue::new(
        ctx.rational(&(q / rat(3, 1))),
        err / 3.0,
        digits,
    ))
}

/// `ζ₀ = (2/3)π₃`.
pub fn zeta0(digits: usize) -> Result<NumericValue, NumericError> {
    let ctx = Ctx::for_digits(digits)?;
    let (q, err) = cached_pi3(digits)?;
    Ok(NumericValue::new(
        ctx.rational(&(q * rat(2, 3))),
        err * 2.0 / 3.0,
        digits,
    ))
}

pub(crate) fn rho_float(ctx: &Ctx) -> Result<Approx, NumericError> {
    let (q, err) = cached_pi3(ctx.digits())?;
    Ok((ctx.rational(&(q / rat(3, 1))), err / 3.0))
}

#[derive(Clone, Copy)]
enum Which {
    Sm,
    Cm,
}

/// Sums the Taylor series of `sm` or `cm` at `x`, `|x| < ρ`.
fn series_value(ctx: &Ctx, which: Which, x: &BigFloat, tol: f64) -> Result<Approx, NumericError> {
    let ax = magnitude(x);
    if ax >= RHO_F64 * 0.99 {
        return Err(NumericError::OutOfDomain {
            arg: format!("{ax}"),
            domain: "series disk |z| < 0.99ρ".into(),
        });
    }
    if ax == 0.0 {
        let v = match which {
            Which::Sm => ctx.int(0),
            Which::Cm => ctx.int(1),
        };
        return Ok((v, 0.0));
    }
    let r = (ax / RHO_F64).powi(3);
    let offset = match which {
        Which::Sm => 1,
        Which::Cm => 0,
    };
    // triples needed for r^k < tol, with head-room for the prefactor
    let mut triples = ((tol.ln() - 8.0) / r.ln()).ceil().max(4.0) as usize + 2;
    loop {
        let order = 3 * triples + offset;
        let (a, b) = egf_integers(order);
        let seq = match which {
            Which::Sm => &a,
            Which::Cm => &b,
        };
        let mut fact = factorial(offset as u64);
        let mut coeffs = Vec::with_capacity(triples + 1);
        for k in 0..=triples {
            let n = 3 * k + offset;
            if k > 0 {
                fact *= (n - 2) * (n - 1) * n;
            }
            coeffs.push(ctx.div(&ctx.bigint(&seq[n]), &ctx.bigint(&fact)));
        }
        let coeff = |n: usize| &coeffs[(n - offset) / 3];
        // Horner in x³ over the residue class
        let x3 = ctx.mul(&ctx.mul(x, x), x);
        let mut acc = coeff(order).clone();
        let mut abs_sum = magnitude(&acc);
        for k in (0..triples).rev() {
            let n = 3 * k + offset;
            acc = ctx.add(&ctx.mul(&acc, &x3), coeff(n));
            abs_sum = abs_sum * ax.powi(3) + magnitude(coeff(n));
        }
        if offset == 1 {
            acc = ctx.mul(&acc, x);
            abs_sum *= ax;
        }
        let last = magnitude(coeff(order));
        let prev = magnitude(coeff(order - 3));
        let ratio = if prev > 0.0 { last / prev } else { 0.0 };
        let q = ratio.max(RHO_F64.powi(-3)) * 1.01 * ax.powi(3);
        if q >= 1.0 {
            return Err(NumericError::NoConvergence("Taylor tail bound"));
        }
        let last_term = last * ax.powi(order as i32);
        let tail = last_term * q / (1.0 - q);
        let rounding = abs_sum * ctx.unit_roundoff() * (4 * triples + 8) as f64;
        let bound = tail + rounding;
        if bound <= tol || triples > 4000 {
            if bound > tol {
                return Err(NumericError::NoConvergence("Taylor series"));
            }
            return Ok((acc, bound));
        }
        triples += triples / 2 + 4;
    }
}

/// `a / b` with errors propagated to first order plus a safety margin.
fn quotient(ctx: &Ctx, a: &Approx, b: &Approx) -> Result<Approx, NumericError> {
    let mb = magnitude(&b.0);
    if mb <= b.1 * 2.0 {
        return Err(NumericError::OutOfDomain {
            arg: "pole".into(),
            domain: "denominator bounded away from zero".into(),
        });
    }
    let v = ctx.div(&a.0, &b.0);
    let err = (a.1 + magnitude(&v) * b.1) / (mb - b.1) + magnitude(&v) * ctx.unit_roundoff() * 4.0;
    Ok((v, err))
}

/// `(sm(x), cm(x))`; `x_err` is the uncertainty already carried by `x`.
pub(crate) fn sm_cm_float(
    ctx: &Ctx,
    x: &BigFloat,
    x_err: f64,
    mode: EvalMode,
) -> Result<(Approx, Approx), NumericError> {
    let tol = tolerance_for(ctx.digits() + 4);
    let (rho, rho_err) = rho_float(ctx)?;
    let rho_f = magnitude(&rho);
    let xf = crate::numeric::float_to_f64(x);
    let out_of_domain = |domain: &str| NumericError::OutOfDomain {
        arg: format!("{xf}"),
        domain: domain.to_string(),
    };
    // both derivatives are bounded by the larger of sm², cm² at the point
    let propagate = |s: Approx, c: Approx, extra: f64| -> (Approx, Approx) {
        let ms = magnitude(&s.0);
        let mc = magnitude(&c.0);
        let d = (ms * ms).max(mc * mc) * 1.1 + 1e-3;
        let e = extra * d;
        ((s.0, s.1 + e), (c.0, c.1 + e))
    };
    match mode {
        EvalMode::Direct => {
            if xf.abs() > DIRECT_RADIUS_FRACTION * rho_f {
                return Err(out_of_domain("|z| <= 0.95*rho"));
            }
            let s = series_value(ctx, Which::Sm, x, tol)?;
            let c = series_value(ctx, Which::Cm, x, tol)?;
            Ok(propagate(s, c, x_err))
        }
        EvalMode::Auto => {
            if xf > rho_f || xf <= -rho_f {
                return Err(out_of_domain("(-rho, rho]"));
            }
            if xf.abs() <= rho_f / 2.0 {
                let s = series_value(ctx, Which::Sm, x, tol)?;
                let c = series_value(ctx, Which::Cm, x, tol)?;
                Ok(propagate(s, c, x_err))
            } else if xf > 0.0 {
                // sm(x) = cm(ρ − x), cm(x) = sm(ρ − x)
                let u = ctx.sub(&rho, x);
                let s = series_value(ctx, Which::Cm, &u, tol)?;
                let c = series_value(ctx, Which::Sm, &u, tol)?;
                Ok(propagate(s, c, x_err + rho_err))
            } else {
                // sm(−u) = −sm(u)/cm(u), cm(−u) = 1/cm(u)
                let u = x.neg();
                let (s, c) = sm_cm_float(ctx, &u, x_err, mode)?;
                let neg_s = quotient(ctx, &s, &c)?;
                let one = (ctx.int(1), 0.0);
                let inv_c = quotient(ctx, &one, &c)?;
                Ok(((neg_s.0.neg(), neg_s.1), inv_c))
            }
        }
    }
}

/// `(smh(x), cmh(x)) = (−sm(−x), cm(−x))`.
pub(crate) fn smh_cmh_float(
    ctx: &Ctx,
    x: &BigFloat,
    x_err: f64,
    mode: EvalMode,
) -> Result<(Approx, Approx), NumericError> {
    let (s, c) = sm_cm_float(ctx, &x.neg(), x_err, mode).map_err(|e| match e {
        NumericError::OutOfDomain { .. } => NumericError::OutOfDomain {
            arg: format!("{}", crate::numeric::float_to_f64(x)),
            domain: match mode {
                EvalMode::Auto => "[-rho, rho)".into(),
                EvalMode::Direct => "|z| <= 0.95*rho".into(),
            },
        },
        other => other,
    })?;
    Ok(((s.0.neg(), s.1), c))
}

fn wrap(ctx: &Ctx, v: Approx) -> NumericValue {
    NumericValue::new(v.0, v.1, ctx.digits())
}

pub fn eval_sm(
    z: &ExactRational,
    digits: usize,
    mode: EvalMode,
) -> Result<NumericValue, NumericError> {
    let ctx = Ctx::for_digits(digits)?;
    let x = ctx.rational(z);
    Ok(wrap(&ctx, sm_cm_float(&ctx, &x, 0.0, mode)?.0))
}

pub fn eval_cm(
    z: &ExactRational,
    digits: usize,
    mode: EvalMode,
) -> Result<NumericValue, NumericError> {
    let ctx = Ctx::for_digits(digits)?;
    let x = ctx.rational(z);
    Ok(wrap(&ctx, sm_cm_float(&ctx, &x, 0.0, mode)?.1))
}

pub fn eval_smh(
    z: &ExactRational,
    digits: usize,
    mode: EvalMode,
) -> Result<NumericValue, NumericError> {
    let ctx = Ctx::for_digits(digits)?;
    let x = ctx.rational(z);
    Ok(wrap(&ctx, smh_cmh_float(&ctx, &x, 0.0, mode)?.0))
}

pub fn eval_cmh(
    z: &ExactRational,
    digits: usize,
    mode: EvalMode,
) -> Result<NumericValue, NumericError> {
    let ctx = Ctx::for_digits(digits)?;
    let x = ctx.rational(z);
    Ok(wrap(&ctx, smh_cmh_float(&ctx, &x, 0.0, mode)?.1))
}

/// `I(y) = ∫₀^y (1 + w³)^{-2/3} dw` for a float argument.
pub(crate) fn abelian_i_float(
    ctx: &mut Ctx,
    y: &BigFloat,
    y_err: f64,
) -> Result<Approx, NumericError> {
    if y.is_negative() || y.is_nan() || y.is_inf() {
        return Err(NumericError::OutOfDomain {
            arg: format!("{}", crate::numeric::float_to_f64(y)),
            domain: "[0, inf)".into(),
        });
    }
    if y.is_zero() {
        return Ok((ctx.int(0), y_err));
    }
    let tol = tolerance_for(ctx.digits() + 3);
    let y3 = ctx.mul(&ctx.mul(y, y), y);
    // substitute w = y·x
    let (v, err) = tanh_sinh_unit(
        ctx,
        |c, x, _| {
            let x3 = c.mul(&c.mul(x, x), x);
            let base = c.add(&c.int(1), &c.mul(&y3, &x3));
            let r = c.cbrt(&base);
            c.recip(&c.mul(&r, &r))
        },
        tol,
    )?;
    let v = ctx.mul(&v, y);
    // the integrand is at most one
    Ok((v, err * magnitude(y).max(1.0) + y_err))
}

pub fn abelian_i(y: &ExactRational, digits: usize) -> Result<NumericValue, NumericError> {
    let mut ctx = Ctx::for_digits(digits)?;
    let x = ctx.rational(y);
    let v = abelian_i_float(&mut ctx, &x, 0.0)?;
    Ok(NumericValue::new(v.0, v.1, digits))
}

/// `I(y)` by composite Gauss–Legendre in double precision.
pub fn abelian_i_gauss(y: f64) -> f64 {
    gauss_legendre(|w| (1.0 + w * w * w).powf(-2.0 / 3.0), 0.0, y, 20, 16)
}

/// Whether `z` lies where [`eval_smh`] accepts it in auto mode.
pub fn smh_domain_contains(z: &ExactRational) -> bool {
    let f = crate::exact::rational::to_f64(z);
    (-RHO_F64..RHO_F64).contains(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, parse_decimal};

    #[test]
    fn pi3_ten_places() {
        let v = pi3(10).unwrap();
        assert_eq!(v.to_decimal_string(), "5.2999162508");
        // a third of the value above, not the 1.7666387490 sometimes quoted
        assert_eq!(rho(10).unwrap().to_decimal_string(), "1.7666387502");
        assert_eq!(zeta0(10).unwrap().to_decimal_string(), "3.5332775005");
    }

    #[test]
    fn smh_at_one() {
        let v = eval_smh(&int(1), 10, EvalMode::Auto).unwrap();
        assert_eq!(v.to_decimal_string(), "1.2054151514");
    }

    #[test]
    fn trivial_values() {
        assert_eq!(eval_smh(&int(0), 20, EvalMode::Auto).unwrap().to_f64(), 0.0);
        assert_eq!(eval_cmh(&int(0), 20, EvalMode::Auto).unwrap().to_f64(), 1.0);
    }

    #[test]
    fn fermat_relation_numerically() {
        for z in ["0.3", "1.1", "1.7", "-0.9", "-1.5"] {
            let q = parse_decimal(z).unwrap();
            let s = eval_sm(&q, 25, EvalMode::Auto).unwrap().to_f64();
            let c = eval_cm(&q, 25, EvalMode::Auto).unwrap().to_f64();
            assert!((s.powi(3) + c.powi(3) - 1.0).abs() < 1e-13, "{z}");
        }
    }

    #[test]
    fn outside_domain_is_rejected() {
        assert!(eval_smh(&int(2), 10, EvalMode::Auto).is_err());
        assert!(eval_sm(&rat(17, 10), 10, EvalMode::Direct).is_err());
    }

    #[test]
    fn abelian_integral_inverts_smh() {
        let t = rat(1, 2);
        let s = eval_smh(&t, 25, EvalMode::Auto).unwrap();
        let back = abelian_i(&s.to_rational().unwrap(), 25).unwrap();
        assert!(back.distance_to(&t) < 1e-20);
        assert_eq!(abelian_i(&int(0), 10).unwrap().to_f64(), 0.0);
    }

    #[test]
    fn abelian_integral_two_rules() {
        let a = abelian_i(&int(1), 20).unwrap().to_f64();
        assert!((a - abelian_i_gauss(1.0)).abs() < 1e-14);
    }
}

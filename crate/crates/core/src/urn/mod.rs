//! Two-colour Pólya urns, their histories, and the continuous-time
//! branching process behind them.
//!
//! Histories are counted by the δ-operator of the rule and, independently,
//! by rewriting words ball by ball. Tables are indexed by the number of
//! x-balls (the first colour) in the final urn.

pub mod walks;
pub mod yule;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dixonian::eval::{abelian_i_float, smh_cmh_float, EvalMode};
use crate::dixonian::weierstrass_p;
use crate::exact::bivariate::{BivariatePoly, UrnError, UrnRule};
use crate::exact::rational::{factorial, from_bigint, ExactRational};
use crate::exact::series::PowerSeries;
use crate::numeric::{magnitude, Ctx, NumericError, NumericValue};

/// Default limit for factorial-cost enumerations.
pub const DEFAULT_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UrnProcError {
    #[error(transparent)]
    Urn(#[from] UrnError),
    #[error("length {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("word enumeration needs a rule that replaces the drawn ball, got {0:?}")]
    UnsupportedRule([[i32; 2]; 2]),
    #[error("tail bound {bound:e} is not below the tolerance {tol:e}")]
    TailBound { bound: f64, tol: f64 },
    #[error("invalid word {0:?}: only x and y are allowed")]
    BadWord(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// `H_{n,k}`: number of length-`n` histories ending with `k` x-balls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistoryTable {
    pub n: usize,
    #[serde(serialize_with = "counts_as_strings")]
    pub counts: BTreeMap<u32, BigInt>,
}

fn counts_as_strings<S: serde::Serializer>(
    m: &BTreeMap<u32, BigInt>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &v.to_string())?;
    }
    map.end()
}

impl HistoryTable {
    pub fn from_poly(n: usize, p: &BivariatePoly) -> Self {
        let mut counts = BTreeMap::new();
        for (px, _, c) in p.terms() {
            *counts.entry(px).or_insert_with(BigInt::zero) += c;
        }
        HistoryTable { n, counts }
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn count(&self, k: u32) -> BigInt {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    /// Rows `n, k, count`.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "k", "count"])?;
        for (k, c) in &self.counts {
            w.write_record([self.n.to_string(), k.to_string(), c.to_string()])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn history_counts(
    rule: &UrnRule,
    initial: &BivariatePoly,
    n: usize,
) -> Result<HistoryTable, UrnProcError> {
    let mut p = initial.clone();
    for _ in 0..n {
        p = p.delta(rule)?;
    }
    Ok(HistoryTable::from_poly(n, &p))
}

/// Urn words over `x` (0) and `y` (1).
pub type Word = Vec<u8>;

pub fn parse_word(s: &str) -> Result<Word, UrnProcError> {
    s.chars()
        .map(|c| match c {
            'x' => Ok(0),
            'y' => Ok(1),
            _ => Err(UrnProcError::BadWord(s.to_string())),
        })
        .collect()
}

pub fn word_string(w: &[u8]) -> String {
    w.iter().map(|&b| if b == 0 { 'x' } else { 'y' }).collect()
}

/// Balls written in place of a drawn ball of each colour, x's first.
fn replacements(rule: &UrnRule) -> Result<[Word; 2], UrnProcError> {
    let m = rule.matrix;
    let mut out: [Word; 2] = [Vec::new(), Vec::new()];
    for colour in 0..2 {
        let xs = m[colour][0] + i32::from(colour == 0);
        let ys = m[colour][1] + i32::from(colour == 1);
        if xs < 0 || ys < 0 {
            return Err(UrnProcError::UnsupportedRule(m));
        }
        out[colour] = std::iter::repeat_n(0, xs as usize)
            .chain(std::iter::repeat_n(1, ys as usize))
            .collect();
    }
    Ok(out)
}

fn rewrite(word: &[u8], i: usize, rep: &[Word; 2]) -> Word {
    let mut next = Vec::with_capacity(word.len() + rep[0].len().max(rep[1].len()));
    next.extend_from_slice(&word[..i]);
    next.extend_from_slice(&rep[word[i] as usize]);
    next.extend_from_slice(&word[i + 1..]);
    next
}

fn explore(word: Word, steps: usize, rep: &[Word; 2], out: &mut BTreeMap<Word, u64>) {
    if steps == 0 {
        *out.entry(word).or_insert(0) += 1;
        return;
    }
    for i in 0..word.len() {
        explore(rewrite(&word, i, rep), steps - 1, rep, out);
    }
}

/// Every length-`n` history, by explicit rewriting: at each step any ball
/// may be drawn, and it is replaced in place. Returns final words with the
/// number of histories reaching each.
pub fn enumerate_histories(
    rule: &UrnRule,
    initial: &[u8],
    n: usize,
    cap: usize,
) -> Result<BTreeMap<String, u64>, UrnProcError> {
    if n > cap {
        return Err(UrnProcError::CapExceeded { n, cap });
    }
    let rep = replacements(rule)?;
    let merged = if n == 0 {
        BTreeMap::from([(initial.to_vec(), 1u64)])
    } else {
        (0..initial.len())
            .into_par_iter()
            .map(|i| {
                let mut local = BTreeMap::new();
                explore(rewrite(initial, i, &rep), n - 1, &rep, &mut local);
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
    };
    Ok(merged
        .into_iter()
        .map(|(w, c)| (word_string(&w), c))
        .collect())
}

/// Aggregates enumerated final words by their number of x-balls.
pub fn aggregate_by_x(n: usize, words: &BTreeMap<String, u64>) -> HistoryTable {
    let mut counts = BTreeMap::new();
    for (w, &c) in words {
        let k = w.chars().filter(|&ch| ch == 'x').count() as u32;
        *counts.entry(k).or_insert_with(BigInt::zero) += c;
    }
    HistoryTable { n, counts }
}

/// The histories themselves, as sequences of words, in lexicographic order
/// of the positions drawn.
pub fn list_histories(
    rule: &UrnRule,
    initial: &[u8],
    n: usize,
    cap: usize,
) -> Result<Vec<Vec<String>>, UrnProcError> {
    if n > cap {
        return Err(UrnProcError::CapExceeded { n, cap });
    }
    let rep = replacements(rule)?;
    let mut out = Vec::new();
    let mut path = vec![initial.to_vec()];
    fn go(path: &mut Vec<Word>, steps: usize, rep: &[Word; 2], out: &mut Vec<Vec<String>>) {
        if steps == 0 {
            out.push(path.iter().map(|w| word_string(w)).collect());
            return;
        }
        let last = path.last().expect("nonempty").clone();
        for i in 0..last.len() {
            path.push(rewrite(&last, i, rep));
            go(path, steps - 1, rep, out);
            path.pop();
        }
    }
    go(&mut path, n, &rep, &mut out);
    Ok(out)
}

/// EGFs of M12 histories from one x-ball ending all-y and all-x; these are
/// `smh` and `cmh`.
pub fn monochrome_egfs(order: usize) -> (PowerSeries, PowerSeries) {
    let rule = UrnRule::m12();
    let iterates = BivariatePoly::x()
        .delta_iterates(&rule, order)
        .expect("M12 never underflows");
    let mut opposite = Vec::new();
    let mut original = Vec::new();
    for (n, p) in iterates.iter().enumerate() {
        let f = from_bigint(factorial(n as u64));
        let total = (n + 1) as u32;
        opposite.push(from_bigint(p.coeff(0, total)) / &f);
        original.push(from_bigint(p.coeff(total, 0)) / &f);
    }
    (
        PowerSeries::new(opposite, order),
        PowerSeries::new(original, order),
    )
}

/// `P(K = k)` for the x-count `K` after `n` M12 steps from one x-ball.
pub fn histogram(n: usize) -> Vec<(u32, f64)> {
    let table =
        history_counts(&UrnRule::m12(), &BivariatePoly::x(), n).expect("M12 never underflows");
    let total = from_bigint(table.total());
    table
        .counts
        .iter()
        .map(|(&k, c)| {
            (
                k,
                crate::exact::rational::to_f64(&(from_bigint(c.clone()) / &total)),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramShape {
    pub mean: f64,
    pub std_dev: f64,
    pub unimodal: bool,
    /// Standardized third central moment. The support is a lattice of step
    /// 3, so comparing masses on either side of the mean is dominated by
    /// where the mean falls between lattice points; skewness is not.
    pub skewness: f64,
}

pub fn histogram_shape(h: &[(u32, f64)]) -> HistogramShape {
    let mean: f64 = h.iter().map(|&(k, p)| k as f64 * p).sum();
    let probs: Vec<f64> = h.iter().map(|x| x.1).collect();
    let peak = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map_or(0, |x| x.0);
    let unimodal = probs[..=peak].windows(2).all(|w| w[0] <= w[1])
        && probs[peak..].windows(2).all(|w| w[0] >= w[1]);
    let moment = |r: i32| {
        h.iter()
            .map(|&(k, p)| (k as f64 - mean).powi(r) * p)
            .sum::<f64>()
    };
    let std_dev = moment(2).sqrt();
    let skewness = moment(3) / std_dev.powi(3);
    HistogramShape {
        mean,
        std_dev,
        unimodal,
        skewness,
    }
}

pub fn histogram_csv(h: &[(u32, f64)]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "probability"])?;
    for (k, p) in h {
        w.write_record([k.to_string(), format!("{p:.17e}")])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionCheck {
    pub lhs: NumericValue,
    pub rhs: NumericValue,
    pub residual: f64,
    /// Bound on the omitted terms `n > N` of the double sum.
    pub tail_bound: f64,
}

/// Compares `Σ_{n≤N} zⁿ/n! Σₖ H_{n,k} x₀ᵏ` (histories of M12 from one
/// x-ball, `y = 1`) with `s·smh(s·z + I(x₀/s))`, `s = (1 − x₀³)^{1/3}`.
///
/// Needs `0 ≤ x₀ < 1` and `0 ≤ z < 1`; since `Σₖ H_{n,k} x₀ᵏ ≤ n!`, the
/// tail is at most `z^{N+1}/(1 − z)`.
pub fn composition_check(
    x0: &ExactRational,
    z: &ExactRational,
    n_max: usize,
    tol: f64,
    digits: usize,
) -> Result<CompositionCheck, UrnProcError> {
    let zf = crate::exact::rational::to_f64(z);
    let xf = crate::exact::rational::to_f64(x0);
    if !(0.0..1.0).contains(&zf) || !(0.0..1.0).contains(&xf) {
        return Err(NumericError::OutOfDomain {
            arg: format!("({xf}, {zf})"),
            domain: "0 <= x0 < 1, 0 <= z < 1".into(),
        }
        .into());
    }
    let tail_bound = zf.powi(n_max as i32 + 1) / (1.0 - zf);
    if tail_bound >= tol {
        return Err(UrnProcError::TailBound {
            bound: tail_bound,
            tol,
        });
    }

    let rule = UrnRule::m12();
    let iterates = BivariatePoly::x().delta_iterates(&rule, n_max)?;
    let mut lhs = ExactRational::zero();
    let mut zn = ExactRational::one();
    for (n, p) in iterates.iter().enumerate() {
        let mut inner = ExactRational::zero();
        for (k, _, c) in p.terms() {
            inner += from_bigint(c.clone()) * num_traits::pow(x0.clone(), k as usize);
        }
        lhs += &zn * inner / from_bigint(factorial(n as u64));
        zn *= z;
    }

    let mut ctx = Ctx::for_digits(digits)?;
    let one = ctx.int(1);
    let x = ctx.rational(x0);
    let s = ctx.cbrt(&ctx.sub(&one, &ctx.powi(&x, 3)));
    let y = ctx.div(&x, &s);
    let (i_val, i_err) = abelian_i_float(&mut ctx, &y, 0.0)?;
    let arg = ctx.add(&ctx.mul(&s, &ctx.rational(z)), &i_val);
    let (smh, _) = smh_cmh_float(&ctx, &arg, i_err, EvalMode::Auto)?;
    let rhs_v = ctx.mul(&s, &smh.0);
    let rhs_err = smh.1 * magnitude(&s) + magnitude(&rhs_v) * ctx.unit_roundoff() * 8.0;

    let lhs_v = ctx.rational(&lhs);
    let lhs_err = tail_bound + magnitude(&lhs_v) * ctx.unit_roundoff();
    let residual = magnitude(&ctx.sub(&lhs_v, &rhs_v));
    Ok(CompositionCheck {
        lhs: NumericValue::new(lhs_v, lhs_err, digits),
        rhs: NumericValue::new(rhs_v, rhs_err, digits),
        residual,
        tail_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct T23Row {
    pub nu: usize,
    pub histories: String,
    pub closed_form: String,
}

impl T23Row {
    pub fn holds(&self) -> bool {
        self.histories == self.closed_form
    }
}

/// T23 urn from `x²`: the number of length-`3ν+1` histories ending all-y
/// against `(3ν+1)!·2^{ν+1}·[z^{3ν+1}]P`, `P = smh·cmh`.
pub fn t23_check(max_nu: usize) -> Result<Vec<T23Row>, UrnProcError> {
    let rule = UrnRule::t23();
    let steps = 3 * max_nu + 1;
    let iterates = BivariatePoly::monomial(1, 2, 0).delta_iterates(&rule, steps)?;
    let p = weierstrass_p(steps);
    let mut rows = Vec::new();
    for nu in 0..=max_nu {
        let n = 3 * nu + 1;
        let histories = iterates[n].coeff(0, (3 * nu + 3) as u32);
        let closed = p.coeff(n).expect("in range")
            * from_bigint(factorial(n as u64))
            * from_bigint(BigInt::from(2).pow((nu + 1) as u32));
        rows.push(T23Row {
            nu,
            histories: histories.to_string(),
            closed_form: crate::exact::rational::format_rational(&closed),
        });
    }
    Ok(rows)
}

/// `log(c_{ν}/c_{ν−1})` for `c_ν = [z^{3ν+1}]smh` via all-y histories,
/// `ν = 1..=max_nu`.
pub fn decay_log_ratios(max_nu: usize) -> Vec<f64> {
    let (opposite, _) = monochrome_egfs(3 * max_nu + 1);
    (1..=max_nu)
        .map(|nu| {
            let r = opposite.coeff(3 * nu + 1).expect("in range")
                / opposite.coeff(3 * nu - 2).expect("in range");
            crate::exact::rational::to_f64(&r).ln()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dixonian::dixon_series;
    use crate::exact::rational::rat;

    #[test]
    fn length_three_from_x() {
        let t = history_counts(&UrnRule::m12(), &BivariatePoly::x(), 3).unwrap();
        // δ³[x] = 2x⁴ + 4xy³: no all-y history at this length
        assert_eq!(t.count(4), 2.into());
        assert_eq!(t.count(1), 4.into());
        assert_eq!(t.count(0), 0.into());
        assert_eq!(t.total(), 6.into());
        let t0 = history_counts(&UrnRule::m12(), &BivariatePoly::x(), 0).unwrap();
        assert_eq!(t0.counts, BTreeMap::from([(1, BigInt::one())]));
    }

    #[test]
    fn totals_are_factorials() {
        for n in 0..=12 {
            let t = history_counts(&UrnRule::m12(), &BivariatePoly::x(), n).unwrap();
            assert_eq!(t.total(), factorial(n as u64));
        }
    }

    #[test]
    fn enumeration_matches_delta() {
        for start in ["x", "y"] {
            let w = parse_word(start).unwrap();
            let init = if start == "x" {
                BivariatePoly::x()
            } else {
                BivariatePoly::y()
            };
            for n in 0..=6 {
                let e = enumerate_histories(&UrnRule::m12(), &w, n, DEFAULT_CAP).unwrap();
                let d = history_counts(&UrnRule::m12(), &init, n).unwrap();
                assert_eq!(aggregate_by_x(n, &e), d, "{start}, n = {n}");
            }
        }
    }

    #[test]
    fn the_two_short_histories() {
        let h = list_histories(&UrnRule::m12(), &[0], 2, DEFAULT_CAP).unwrap();
        assert_eq!(h, vec![vec!["x", "yy", "xxy"], vec!["x", "yy", "yxx"]]);
        assert!(enumerate_histories(&UrnRule::m12(), &[0], 10, DEFAULT_CAP).is_err());
        assert!(matches!(
            enumerate_histories(&UrnRule::t23(), &[0, 0], 1, DEFAULT_CAP),
            Err(UrnProcError::UnsupportedRule(_))
        ));
    }

    #[test]
    fn monochrome_series() {
        let (opp, orig) = monochrome_egfs(30);
        let p = dixon_series(30);
        assert_eq!(opp, p.smh());
        assert_eq!(orig, p.cmh());
    }

    #[test]
    fn t23_small() {
        let rows = t23_check(3).unwrap();
        assert_eq!(rows[0].histories, "2");
        assert!(rows.iter().all(T23Row::holds), "{rows:?}");
    }

    #[test]
    fn composition_at_origin() {
        let c = composition_check(&rat(0, 1), &rat(1, 2), 60, 1e-10, 25).unwrap();
        assert!(c.residual < 1e-10, "{}", c.residual);
        let c = composition_check(&rat(3, 10), &rat(0, 1), 5, 1e-10, 25).unwrap();
        assert!(c.residual < 1e-20);
    }

    #[test]
    fn histogram_is_bell_shaped() {
        let shape = histogram_shape(&histogram(50));
        assert!(shape.unimodal);
        assert!(shape.skewness.abs() <= 0.05, "{shape:?}");
        assert!((shape.mean - 25.5).abs() < 1e-9);
    }
}

//! Laplace transforms `Sₙ = L(smⁿ)`, `Cₙ = L(smⁿcm)`, `Dₙ = L(smⁿcm²)` and
//! the recurrences linking them, checked as exact series identities.

use serde::Serialize;

use crate::dixonian::{dixon_series, laplace_egf_to_ogf};
use crate::exact::rational::int;
use crate::exact::series::PowerSeries;

/// `Sₙ`, `Cₙ`, `Dₙ` for `n ≤ max_n`, each `x·OGF(k!·[zᵏ]…)`.
#[derive(Debug, Clone)]
pub struct ScdTable {
    pub s: Vec<PowerSeries>,
    pub c: Vec<PowerSeries>,
    pub d: Vec<PowerSeries>,
}

pub fn scd_transforms(max_n: usize, order: usize) -> ScdTable {
    let pair = dixon_series(order);
    let cm2 = pair.cm.pow(2);
    let mut s = Vec::new();
    let mut c = Vec::new();
    let mut d = Vec::new();
    let mut power = PowerSeries::one(order);
    for _ in 0..=max_n {
        let l = |f: &PowerSeries| laplace_egf_to_ogf(f).shift_up(1);
        s.push(l(&power));
        c.push(l(&power.mul_series(&pair.cm)));
        d.push(l(&power.mul_series(&cm2)));
        power = power.mul_series(&pair.sm);
    }
    ScdTable { s, c, d }
}

/// Outcome of one identity, by name and index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub n: usize,
    pub holds: bool,
    /// First index in `x` where the two sides differ.
    pub first_difference: Option<usize>,
}

fn x_times(f: &PowerSeries, k: usize) -> PowerSeries {
    f.shift_up(k)
}

fn indicator(n: usize, at: usize, order: usize, monomial: PowerSeries) -> PowerSeries {
    if n == at {
        monomial
    } else {
        PowerSeries::zero(order)
    }
}

fn check(name: &'static str, n: usize, lhs: PowerSeries, rhs: PowerSeries) -> IdentityCheck {
    let diff = &lhs - &rhs;
    let first = diff.valuation();
    IdentityCheck {
        name,
        n,
        holds: first.is_none(),
        first_difference: first,
    }
}

/// Checks, for `n ≤ max_n`:
///
/// * `Sₙ = x[n=0] + n·x·Dₙ₋₁`
/// * `Cₙ = x[n=0] + x(n·Sₙ₋₁ − (n+1)·Sₙ₊₂)`
/// * `Dₙ = x[n=0] + x(n·Cₙ₋₁ − (n+2)·Cₙ₊₂)`
/// * `Sₙ(1 + 2n(n²+1)x³) − n(n+1)(n+2)x³Sₙ₊₃ = n(n−1)(n−2)x³Sₙ₋₃ + [n=0]x + [n=1]x² + [n=2]2x³`
///
/// All coefficients are exact; the table must extend to `max_n + 3`.
pub fn check_recurrences(t: &ScdTable, max_n: usize) -> Vec<IdentityCheck> {
    assert!(t.s.len() > max_n + 3, "table too short for the recurrences");
    let order = t.s[0].order();
    let x = PowerSeries::var(order);
    let zero = PowerSeries::zero(order);
    let mut out = Vec::new();
    for n in 0..=max_n {
        let k = int(n as i64);
        let at0 = indicator(n, 0, order, x.clone());
        let prev = |v: &[PowerSeries]| {
            if n == 0 {
                zero.clone()
            } else {
                v[n - 1].clone()
            }
        };

        let rhs = &at0 + &x_times(&prev(&t.d).scale(&k), 1);
        out.push(check("S", n, t.s[n].clone(), rhs));

        let inner = &prev(&t.s).scale(&k) - &t.s[n + 2].scale(&int(n as i64 + 1));
        out.push(check("C", n, t.c[n].clone(), &at0 + &x_times(&inner, 1)));

        let inner = &prev(&t.c).scale(&k) - &t.c[n + 2].scale(&int(n as i64 + 2));
        out.push(check("D", n, t.d[n].clone(), &at0 + &x_times(&inner, 1)));

        let ni = n as i64;
        let lhs = &(&t.s[n] + &x_times(&t.s[n].scale(&int(2 * ni * (ni * ni + 1))), 3))
            - &x_times(&t.s[n + 3].scale(&int(ni * (ni + 1) * (ni + 2))), 3);
        let mut rhs = if n >= 3 {
            x_times(&t.s[n - 3].scale(&int(ni * (ni - 1) * (ni - 2))), 3)
        } else {
            zero.clone()
        };
        rhs = &rhs + &at0;
        rhs = &rhs + &indicator(n, 1, order, PowerSeries::monomial(int(1), 2, order));
        rhs = &rhs + &indicator(n, 2, order, PowerSeries::monomial(int(2), 3, order));
        out.push(check("ratio", n, lhs, rhs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s0_is_x() {
        let t = scd_transforms(0, 12);
        assert_eq!(t.s[0], PowerSeries::var(13));
    }

    #[test]
    fn c0_plus_x_s2() {
        let t = scd_transforms(2, 30);
        let sum = &t.c[0] + &t.s[2].shift_up(1);
        assert!((&sum - &PowerSeries::var(sum.order())).is_zero());
    }

    #[test]
    fn recurrences_hold() {
        let t = scd_transforms(7, 30);
        for c in check_recurrences(&t, 4) {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let mut t = scd_transforms(6, 24);
        t.d[1] = &t.d[1] + &PowerSeries::monomial(int(1), 10, 25);
        let checks = check_recurrences(&t, 2);
        let bad: Vec<_> = checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| (c.name, c.n))
            .collect();
        assert_eq!(bad, vec![("D", 1), ("S", 2)]);
    }
}

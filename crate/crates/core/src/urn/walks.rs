//! Weighted knight's walks in the quarter plane, equivalent to M12 urn
//! histories: from `(p, q)` a step `(−1, +2)` has weight `p` and a step
//! `(+2, −1)` has weight `q`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::UrnProcError;
use crate::exact::rational::{binomial, from_bigint, ExactRational};
use crate::exact::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkCounts {
    pub n: usize,
    /// Weighted walks of length `n` ending on the axis `p = 0`.
    pub on_q_axis: String,
    /// Weighted walks ending on the axis `q = 0`.
    pub on_p_axis: String,
    /// All weighted walks; equals `n!`.
    pub total: String,
    /// Number of distinct step sequences with nonzero weight.
    pub paths: u64,
}

fn walk(p: u64, q: u64, left: usize, weight: &BigInt, acc: &mut (BigInt, BigInt, BigInt, u64)) {
    if left == 0 {
        if p == 0 {
            acc.0 += weight;
        }
        if q == 0 {
            acc.1 += weight;
        }
        acc.2 += weight;
        acc.3 += 1;
        return;
    }
    if p > 0 {
        walk(p - 1, q + 2, left - 1, &(weight * p), acc);
    }
    if q > 0 {
        walk(p + 2, q - 1, left - 1, &(weight * q), acc);
    }
}

/// Enumerates every walk of length `n` from `(1, 0)`, one path at a time.
pub fn knight_walks(n: usize, cap: usize) -> Result<WalkCounts, UrnProcError> {
    if n > cap {
        return Err(UrnProcError::CapExceeded { n, cap });
    }
    let zero = || (BigInt::zero(), BigInt::zero(), BigInt::zero(), 0u64);
    // expand a few steps breadth-first, then hand the subtrees to workers
    let split = n.min(4);
    let mut frontier = vec![(1u64, 0u64, BigInt::from(1))];
    for _ in 0..split {
        frontier = frontier
            .into_iter()
            .flat_map(|(p, q, w)| {
                let mut next = Vec::with_capacity(2);
                if p > 0 {
                    next.push((p - 1, q + 2, &w * p));
                }
                if q > 0 {
                    next.push((p + 2, q - 1, &w * q));
                }
                next
            })
            .collect();
    }
    let acc = frontier
        .into_par_iter()
        .map(|(p, q, w)| {
            let mut a = zero();
            walk(p, q, n - split, &w, &mut a);
            a
        })
        .reduce(zero, |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3));
    Ok(WalkCounts {
        n,
        on_q_axis: acc.0.to_string(),
        on_p_axis: acc.1.to_string(),
        total: acc.2.to_string(),
        paths: acc.3,
    })
}

/// `ξ(x) = x²·Σ C(3m, m)·x^{3m}/(2m + 1)`, through `x^order`.
pub fn xi_series(order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| {
        if n >= 2 && (n - 2) % 3 == 0 {
            let m = ((n - 2) / 3) as u64;
            from_bigint(binomial(3 * m, m)) / ExactRational::from_integer((2 * m + 1).into())
        } else {
            ExactRational::zero()
        }
    })
}

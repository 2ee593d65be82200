//! Permutation models: ordinal types, increasing binary trees, the parity
//! classes counted by `smh`/`cmh`, r-repeated and polarized permutations,
//! and the path diagrams that encode them.

pub mod paths;
pub mod tree;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use tree::IncreasingBinaryTree;

use crate::contfrac::{JFraction, Monomial};
use crate::exact::rational::ExactRational;
use crate::exact::series::PowerSeries;
use num_traits::One;

/// Default cap on brute-force permutation length.
pub const DEFAULT_PERM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 1..n: {0}")]
    NotAPermutation(String),
    #[error("length {n} exceeds the brute-force cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("permutation is not alternating with the required border")]
    NotAlternating,
    #[error("malformed encoding: {0}")]
    BadEncoding(String),
    #[error("length {0} is not admissible for this polarized count")]
    BadLength(usize),
}

/// A border value standing in for `σ₀` or `σ_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Infinity {
    Neg,
    Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Border {
    pub left: Infinity,
    pub right: Infinity,
}

impl Border {
    pub const MINUS_MINUS: Border = Border {
        left: Infinity::Neg,
        right: Infinity::Neg,
    };
    pub const MINUS_PLUS: Border = Border {
        left: Infinity::Neg,
        right: Infinity::Pos,
    };
}

impl fmt::Display for Border {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |i: Infinity| if i == Infinity::Neg { "-inf" } else { "+inf" };
        write!(f, "({}, {})", s(self.left), s(self.right))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrdinalType {
    Peak,
    Valley,
    DoubleRise,
    DoubleFall,
}

impl OrdinalType {
    pub fn symbol(self) -> &'static str {
        match self {
            OrdinalType::Peak => "/\\",
            OrdinalType::Valley => "\\/",
            OrdinalType::DoubleRise => "//",
            OrdinalType::DoubleFall => "\\\\",
        }
    }
}

/// A permutation in word form, values `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let i = (v as usize).wrapping_sub(1);
            if i >= n || seen[i] {
                return Err(PermError::NotAPermutation(format!("{values:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position (0-based) of each value: `pos[v − 1]`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&words.join(" "))
    }
}

/// Accepts space- or comma-separated values, or for `n ≤ 9` a run of
/// digits such as `3241`.
pub fn parse_permutation(s: &str) -> Result<Permutation, PermError> {
    let s = s.trim();
    let bad = || PermError::NotAPermutation(s.to_string());
    let values: Vec<u32> = if s.contains([' ', ',', '\t']) {
        s.split([' ', ',', '\t'])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect::<Result<_, _>>()?
    };
    Permutation::new(values)
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

fn compare_type(before: Option<u32>, here: u32, after: Option<u32>, border: Border) -> OrdinalType {
    // a border is +∞ or −∞, never equal to a value
    let from_left_up = match before {
        Some(b) => b < here,
        None => border.left == Infinity::Neg,
    };
    let to_right_up = match after {
        Some(a) => here < a,
        None => border.right == Infinity::Pos,
    };
    match (from_left_up, to_right_up) {
        (true, false) => OrdinalType::Peak,
        (false, true) => OrdinalType::Valley,
        (true, true) => OrdinalType::DoubleRise,
        (false, false) => OrdinalType::DoubleFall,
    }
}

/// Type of each position.
pub fn classify(p: &Permutation, border: Border) -> Vec<OrdinalType> {
    classify_values(p.values(), border)
}

fn classify_values(w: &[u32], border: Border) -> Vec<OrdinalType> {
    (0..w.len())
        .map(|i| {
            let before = i.checked_sub(1).map(|j| w[j]);
            compare_type(before, w[i], w.get(i + 1).copied(), border)
        })
        .collect()
}

/// Type of each value: `out[v − 1]`.
pub fn types_by_value(w: &[u32], border: Border) -> Vec<OrdinalType> {
    let t = classify_values(w, border);
    let mut out = vec![OrdinalType::Peak; w.len()];
    for (i, &v) in w.iter().enumerate() {
        out[v as usize - 1] = t[i];
    }
    out
}

pub fn is_alternating(w: &[u32], border: Border) -> bool {
    classify_values(w, border)
        .iter()
        .all(|t| matches!(t, OrdinalType::Peak | OrdinalType::Valley))
}

/// Rearranges `w` into its lexicographic successor; false at the last one.
fn next_permutation(w: &mut [u32]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Sums `weight` over all permutations of length `n`, in parallel over the
/// first two entries. The sum is exact and independent of scheduling.
pub fn sum_over_permutations<F>(n: usize, cap: usize, weight: F) -> Result<BigInt, PermError>
where
    F: Fn(&[u32]) -> u64 + Sync,
{
    if n > cap {
        return Err(PermError::CapExceeded { n, cap });
    }
    if n <= 2 {
        let mut w: Vec<u32> = (1..=n as u32).collect();
        let mut total = BigInt::from(weight(&w));
        while next_permutation(&mut w) {
            total += weight(&w);
        }
        return Ok(total);
    }
    let prefixes: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|a| (1..=n as u32).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let total = prefixes
        .into_par_iter()
        .map(|(a, b)| {
            let mut rest: Vec<u32> = (1..=n as u32).filter(|&v| v != a && v != b).collect();
            let mut w = Vec::with_capacity(n);
            let mut acc: u128 = 0;
            loop {
                w.clear();
                w.push(a);
                w.push(b);
                w.extend_from_slice(&rest);
                acc += u128::from(weight(&w));
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            BigInt::from(acc)
        })
        .sum();
    Ok(total)
}

/// All permutations of length `n` satisfying `pred`, lexicographically.
pub fn collect_permutations<F>(n: usize, cap: usize, pred: F) -> Result<Vec<Permutation>, PermError>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    if n > cap {
        return Err(PermError::CapExceeded { n, cap });
    }
    let firsts: Vec<u32> = if n == 0 {
        vec![0]
    } else {
        (1..=n as u32).collect()
    };
    let chunks: Vec<Vec<Permutation>> = firsts
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            if n == 0 {
                if pred(&[]) {
                    out.push(Permutation(Vec::new()));
                }
                return out;
            }
            let mut rest: Vec<u32> = (1..=n as u32).filter(|&v| v != a).collect();
            loop {
                let mut w = vec![a];
                w.extend_from_slice(&rest);
                if pred(&w) {
                    out.push(Permutation(w));
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// The two parity classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityClass {
    /// Every element at odd level is a valley; counted by `smh`.
    X,
    /// Every element at even level is a valley; counted by `cmh`.
    Y,
}

impl FromStr for ParityClass {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "X" | "x" => Ok(ParityClass::X),
            "Y" | "y" => Ok(ParityClass::Y),
            _ => Err(PermError::BadEncoding(format!("unknown class {s:?}"))),
        }
    }
}

/// Level of each position in the increasing binary tree (root at 0).
pub fn levels(w: &[u32]) -> Vec<usize> {
    let n = w.len();
    // parent by the nearest smaller value on either side, the larger of the two
    let mut parent = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut left_smaller = vec![usize::MAX; n];
    for i in 0..n {
        while stack.last().is_some_and(|&j| w[j] > w[i]) {
            stack.pop();
        }
        left_smaller[i] = stack.last().copied().unwrap_or(usize::MAX);
        stack.push(i);
    }
    stack.clear();
    for i in (0..n).rev() {
        while stack.last().is_some_and(|&j| w[j] > w[i]) {
            stack.pop();
        }
        let right = stack.last().copied().unwrap_or(usize::MAX);
        let left = left_smaller[i];
        parent[i] = match (left, right) {
            (usize::MAX, r) => r,
            (l, usize::MAX) => l,
            (l, r) => {
                if w[l] > w[r] {
                    l
                } else {
                    r
                }
            }
        };
        stack.push(i);
    }
    let pos = {
        let mut p = vec![0; n];
        for (i, &v) in w.iter().enumerate() {
            p[v as usize - 1] = i;
        }
        p
    };
    let mut level = vec![0; n];
    for &i in &pos {
        if parent[i] != usize::MAX {
            level[i] = level[parent[i]] + 1;
        }
    }
    level
}

/// Class `X` trees are nonempty; the empty word belongs to `Y` only.
pub fn in_parity_class(w: &[u32], class: ParityClass) -> bool {
    if w.is_empty() {
        return class == ParityClass::Y;
    }
    let types = classify_values(w, Border::MINUS_MINUS);
    let want = match class {
        ParityClass::X => 1,
        ParityClass::Y => 0,
    };
    levels(w)
        .iter()
        .zip(&types)
        .all(|(&l, &t)| l % 2 != want || t == OrdinalType::Valley)
}

pub fn count_parity_class(n: usize, class: ParityClass, cap: usize) -> Result<BigInt, PermError> {
    sum_over_permutations(n, cap, |w| u64::from(in_parity_class(w, class)))
}

pub fn parity_witnesses(
    n: usize,
    class: ParityClass,
    cap: usize,
) -> Result<Vec<Permutation>, PermError> {
    collect_permutations(n, cap, |w| in_parity_class(w, class))
}

/// Whether values in each block `{jr+1, …, jr+r}` share one type.
pub fn is_r_repeated(w: &[u32], r: usize, border: Border) -> bool {
    assert!(r >= 1);
    let t = types_by_value(w, border);
    t.chunks(r)
        .all(|block| block.iter().all(|&x| x == block[0]))
}

pub fn count_r_repeated(
    n: usize,
    r: usize,
    border: Border,
    cap: usize,
) -> Result<BigInt, PermError> {
    sum_over_permutations(n, cap, |w| u64::from(is_r_repeated(w, r, border)))
}

/// J-fraction for r-repeated permutations in `w = z^r`. For `(−∞, −∞)` it has
/// prefactor `z`, `γ_h = 2(rh+1)^r` and
/// `a_{h+1} = (rh+1)(rh+2)²⋯(rh+r)²(rh+r+1)`; for `(−∞, +∞)` it has
/// `γ_h = (rh)^r + (rh+1)^r` and `a_{h+1} = Π (rh+i)²`.
pub fn r_repeated_fraction(r: usize, border: Border, depth: usize) -> Result<JFraction, PermError> {
    assert!(r >= 1);
    let r_big = r as u64;
    let pow = |b: u64| ExactRational::from_integer(BigInt::from(b).pow(r as u32));
    let (c, a, prefactor): (Vec<_>, Vec<_>, Monomial) = match (border.left, border.right) {
        (Infinity::Neg, Infinity::Neg) => (
            (0..depth as u64)
                .map(|h| pow(r_big * h + 1) * ExactRational::from_integer(2.into()))
                .collect(),
            (0..depth as u64)
                .map(|h| {
                    let base = r_big * h;
                    let mut prod = BigInt::from(base + 1) * BigInt::from(base + r_big + 1);
                    for i in 2..=r_big {
                        prod *= BigInt::from(base + i).pow(2);
                    }
                    ExactRational::from_integer(prod)
                })
                .collect(),
            Monomial::new(ExactRational::one(), 1),
        ),
        (Infinity::Neg, Infinity::Pos) => (
            (0..depth as u64)
                .map(|h| pow(r_big * h) + pow(r_big * h + 1))
                .collect(),
            (0..depth as u64)
                .map(|h| {
                    let prod: BigInt = (1..=r_big)
                        .map(|i| BigInt::from(r_big * h + i).pow(2))
                        .product();
                    ExactRational::from_integer(prod)
                })
                .collect(),
            Monomial::one(),
        ),
        _ => {
            return Err(PermError::BadEncoding(format!(
                "border {border} is not supported"
            )))
        }
    };
    Ok(JFraction::from_coeffs(c, a).with_prefactor(prefactor, r))
}

/// Ordinary generating function of r-repeated permutation counts through `z^order`.
pub fn r_repeated_series(r: usize, border: Border, order: usize) -> Result<PowerSeries, PermError> {
    let depth = order / (2 * r) + 2;
    let f = r_repeated_fraction(r, border, depth)?;
    let rf = f
        .convergent(depth)
        .map_err(|e| PermError::BadEncoding(e.to_string()))?;
    rf.to_series(order)
        .map_err(|e| PermError::BadEncoding(e.to_string()))
}

/// Number of contiguous windows with values `3j+3, 3j+2, 3j+1` or
/// `3j+1, 3j+2, 3j+3`.
pub fn markable_windows(w: &[u32]) -> usize {
    w.windows(3)
        .filter(|t| {
            let lo = t[0].min(t[2]);
            let monotone =
                (t[0] + 1 == t[1] && t[1] + 1 == t[2]) || (t[0] == t[1] + 1 && t[1] == t[2] + 1);
            monotone && lo % 3 == 1
        })
        .count()
}

/// 3-repeated permutations with each markable window marked or not:
/// `Σ 2^{windows}` over 3-repeated permutations with the given border.
pub fn count_polarized(n: usize, border: Border, cap: usize) -> Result<BigInt, PermError> {
    sum_over_permutations(n, cap, |w| {
        if is_r_repeated(w, 3, border) {
            1u64 << markable_windows(w)
        } else {
            0
        }
    })
}

/// The `(−∞, −∞)` polarized count, defined for lengths `3ν + 1`.
pub fn count_polarized_3repeated(n: usize, cap: usize) -> Result<BigInt, PermError> {
    if n % 3 != 1 {
        return Err(PermError::BadLength(n));
    }
    count_polarized(n, Border::MINUS_MINUS, cap)
}

/// The `(−∞, +∞)` analogue on lengths `3ν`, which matches `cmh`.
pub fn count_polarized_3repeated_cm(n: usize, cap: usize) -> Result<BigInt, PermError> {
    if !n.is_multiple_of(3) {
        return Err(PermError::BadLength(n));
    }
    count_polarized(n, Border::MINUS_PLUS, cap)
}

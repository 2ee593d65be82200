//! Weighted Motzkin paths, the Françon–Viennot encoding of permutations,
//! the sweepline for snakes, and André's derivative polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{is_alternating, Border, Infinity, OrdinalType, PermError, Permutation};
use crate::exact::rational::from_bigint;
use crate::exact::series::PowerSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    Up,
    Down,
    Level,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
            Step::Level => 'L',
        }
    }
}

/// Numbers of choices `α(j)`, `β(j)`, `γ(j)` for an ascent, descent or
/// level step starting at altitude `j`.
#[derive(Clone, Copy)]
pub struct PossibilityFunction {
    pub name: &'static str,
    pub alpha: fn(usize) -> BigInt,
    pub beta: fn(usize) -> BigInt,
    pub gamma: fn(usize) -> BigInt,
}

impl fmt::Debug for PossibilityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PossibilityFunction")
            .field("name", &self.name)
            .finish()
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

impl PossibilityFunction {
    pub fn weight(&self, step: Step, j: usize) -> BigInt {
        match step {
            Step::Up => (self.alpha)(j),
            Step::Down => (self.beta)(j),
            Step::Level => (self.gamma)(j),
        }
    }

    /// Alternating permutations with border `(−∞, −∞)`; paths of length `n − 1`.
    pub fn alternating_minus_minus() -> Self {
        PossibilityFunction {
            name: "alternating (-inf,-inf)",
            alpha: |j| big(j as i64 + 1),
            beta: |j| big(j as i64 + 1),
            gamma: |_| BigInt::zero(),
        }
    }

    /// Alternating permutations with border `(−∞, +∞)`; paths of length `n`.
    pub fn alternating_minus_plus() -> Self {
        PossibilityFunction {
            name: "alternating (-inf,+inf)",
            alpha: |j| big(j as i64 + 1),
            beta: |j| big(j as i64),
            gamma: |_| BigInt::zero(),
        }
    }

    /// All permutations, border `(−∞, −∞)`; paths of length `n − 1`.
    pub fn all_minus_minus() -> Self {
        PossibilityFunction {
            name: "all (-inf,-inf)",
            alpha: |j| big(j as i64 + 1),
            beta: |j| big(j as i64 + 1),
            gamma: |j| big(2 * j as i64 + 2),
        }
    }

    /// All permutations, border `(−∞, +∞)`; paths of length `n`.
    pub fn all_minus_plus() -> Self {
        PossibilityFunction {
            name: "all (-inf,+inf)",
            alpha: |j| big(j as i64 + 1),
            beta: |j| big(j as i64),
            gamma: |j| big(2 * j as i64 + 1),
        }
    }

    /// Weights whose paths of length `k` sum to `P_{k,1}`, the coefficient of
    /// `w` in André's `k`-th polynomial; altitude `ℓ` stands for degree `3ℓ+1`.
    pub fn andre() -> Self {
        PossibilityFunction {
            name: "andre",
            alpha: |l| {
                let m = 3 * l as i64 + 1;
                big(m * (m + 1) * (m + 2))
            },
            beta: |l| {
                let m = 3 * l as i64 + 1;
                big((m - 2) * (m - 1) * m)
            },
            gamma: |l| {
                let m = 3 * l as i64 + 1;
                big(2 * m * (m * m + 1))
            },
        }
    }
}

/// Weighted number of Motzkin paths of the given length from altitude 0 to 0.
pub fn motzkin_weighted_count(pf: &PossibilityFunction, length: usize) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for step in 0..length {
        // altitudes above the remaining length cannot return to zero
        let cap = (length - step - 1).min(step + 1);
        let mut next = vec![BigInt::zero(); cap + 1];
        for (j, w) in row.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            if j < cap {
                next[j + 1] += w * pf.weight(Step::Up, j);
            }
            if j <= cap {
                next[j] += w * pf.weight(Step::Level, j);
            }
            if j >= 1 && j - 1 <= cap {
                next[j - 1] += w * pf.weight(Step::Down, j);
            }
        }
        row = next;
    }
    row.into_iter().next().unwrap_or_default()
}

/// A Motzkin path with a choice written under each step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FvPath {
    pub steps: Vec<Step>,
    pub choices: Vec<usize>,
}

impl FvPath {
    pub fn altitudes(&self) -> Vec<usize> {
        let mut h = 0usize;
        let mut out = vec![0];
        for s in &self.steps {
            match s {
                Step::Up => h += 1,
                Step::Down => h = h.saturating_sub(1),
                Step::Level => {}
            }
            out.push(h);
        }
        out
    }
}

impl fmt::Display for FvPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .zip(&self.choices)
            .map(|(s, c)| format!("{}{}", s.letter(), c))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn supported(border: Border) -> Result<(), PermError> {
    if border.left == Infinity::Neg {
        Ok(())
    } else {
        Err(PermError::BadEncoding(format!(
            "border {border} is not supported"
        )))
    }
}

/// Encodes a permutation by inserting values in increasing order into the
/// slots of its increasing binary tree.
///
/// With border `(−∞, −∞)` the path has length `n − 1` (the maximum is always
/// a final leaf). With `(−∞, +∞)` the value `n + 1` is appended and the path
/// has length `n`.
pub fn francon_viennot_encode(p: &Permutation, border: Border) -> Result<FvPath, PermError> {
    supported(border)?;
    let mut w = p.values().to_vec();
    let keep = match border.right {
        Infinity::Neg => w.len().saturating_sub(1),
        Infinity::Pos => {
            w.push(w.len() as u32 + 1);
            w.len() - 1
        }
    };
    let n = w.len();
    let pos = {
        let mut pos = vec![0; n];
        for (i, &v) in w.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    };
    let mut steps = Vec::with_capacity(keep);
    let mut choices = Vec::with_capacity(keep);
    for v in 1..=keep as u32 {
        let j = pos[v as usize - 1];
        // slots are maximal runs of values ≥ v; count the runs left of j
        let mut slot = 0;
        let mut in_run = false;
        for &x in &w[..j] {
            if x >= v {
                if !in_run {
                    slot += 1;
                    in_run = true;
                }
            } else {
                in_run = false;
            }
        }
        let slot = if in_run { slot - 1 } else { slot };
        let slots = {
            let mut count = 0;
            let mut in_run = false;
            for &x in &w {
                if x >= v {
                    if !in_run {
                        count += 1;
                    }
                    in_run = true;
                } else {
                    in_run = false;
                }
            }
            count
        };
        let left = j > 0 && w[j - 1] > v;
        let right = j + 1 < n && w[j + 1] > v;
        let (step, choice) = match (left, right) {
            (true, true) => (Step::Up, slot),
            (false, false) => (Step::Down, slot),
            (false, true) => (Step::Level, slot),
            (true, false) => (Step::Level, slots + slot),
        };
        steps.push(step);
        choices.push(choice);
    }
    Ok(FvPath { steps, choices })
}

/// Reverses [`francon_viennot_encode`]; `n` is the permutation length.
pub fn francon_viennot_decode(
    path: &FvPath,
    n: usize,
    border: Border,
) -> Result<Permutation, PermError> {
    supported(border)?;
    let plus = border.right == Infinity::Pos;
    let expected = if plus { n } else { n.saturating_sub(1) };
    if path.steps.len() != expected || path.choices.len() != expected {
        return Err(PermError::BadEncoding(format!(
            "expected {expected} steps, found {}",
            path.steps.len()
        )));
    }
    if n == 0 {
        return Ok(Permutation(Vec::new()));
    }
    let total = if plus { n + 1 } else { n };
    // arena tree: node v − 1 has optional children; a slot is (parent, is_right)
    let mut children: Vec<[Option<usize>; 2]> = vec![[None, None]; total];
    let mut slots: Vec<Option<(usize, bool)>> = vec![None];
    let mut root = None;
    let mut place = |slot: Option<(usize, bool)>,
                     v: usize,
                     children: &mut Vec<[Option<usize>; 2]>| match slot {
        None => root = Some(v),
        Some((parent, right)) => children[parent][usize::from(right)] = Some(v),
    };
    for (i, (&step, &choice)) in path.steps.iter().zip(&path.choices).enumerate() {
        let h = slots.len();
        // the rightmost slot holds n + 1 under (−∞, +∞) and must stay open to its right
        let last_ok = !plus;
        let bad = || PermError::BadEncoding(format!("choice {choice} out of range at step {i}"));
        let (slot, left, right) = match step {
            Step::Up => (choice, true, true),
            Step::Down => (choice, false, false),
            Step::Level if choice < h => (choice, false, true),
            Step::Level => (choice - h, true, false),
        };
        if slot >= h || (!last_ok && slot == h - 1 && !right) {
            return Err(bad());
        }
        if step == Step::Down && h == 1 {
            return Err(PermError::BadEncoding(format!(
                "path goes below zero at step {i}"
            )));
        }
        let s = slots.remove(slot);
        place(s, i, &mut children);
        let mut fresh = Vec::new();
        if left {
            fresh.push(Some((i, false)));
        }
        if right {
            fresh.push(Some((i, true)));
        }
        for (k, f) in fresh.into_iter().enumerate() {
            slots.insert(slot + k, f);
        }
    }
    if slots.len() != 1 {
        return Err(PermError::BadEncoding(
            "path does not return to zero".into(),
        ));
    }
    place(slots[0], total - 1, &mut children);
    fn infix(v: Option<usize>, children: &[[Option<usize>; 2]], out: &mut Vec<u32>) {
        if let Some(v) = v {
            infix(children[v][0], children, out);
            out.push(v as u32 + 1);
            infix(children[v][1], children, out);
        }
    }
    let mut out = Vec::with_capacity(total);
    infix(root, &children, &mut out);
    if plus {
        out.pop();
    }
    Permutation::new(out)
}

/// Path weight check: every choice lies within the possibility function.
pub fn path_is_admissible(path: &FvPath, pf: &PossibilityFunction) -> bool {
    let alt = path.altitudes();
    let mut h: i64 = 0;
    for (i, (&s, &c)) in path.steps.iter().zip(&path.choices).enumerate() {
        match s {
            Step::Up => h += 1,
            Step::Down => h -= 1,
            Step::Level => {}
        }
        if h < 0 || BigInt::from(c) >= pf.weight(s, alt[i]) {
            return false;
        }
    }
    h == 0
}

/// Sweepline over an alternating permutation with border `(−∞, −∞)`:
/// `x_v` counts segments of the zigzag crossing height `v + ½` for
/// `v = 0, …, n − 1`, and the returned heights are `ξ_v = (x_v − 2)/2`,
/// a Dyck path of length `n − 1`.
pub fn sweepline(p: &Permutation) -> Result<(Vec<usize>, Vec<usize>), PermError> {
    if p.is_empty() || !is_alternating(p.values(), Border::MINUS_MINUS) {
        return Err(PermError::NotAlternating);
    }
    let n = p.len();
    let mut line: Vec<i64> = vec![-1];
    line.extend(p.values().iter().map(|&v| i64::from(v)));
    line.push(-1);
    let x: Vec<usize> = (0..n)
        .map(|v| {
            let h = v as f64 + 0.5;
            line.windows(2)
                .filter(|s| {
                    let (lo, hi) = (s[0].min(s[1]) as f64, s[0].max(s[1]) as f64);
                    lo < h && h < hi
                })
                .count()
        })
        .collect();
    let xi = x.iter().map(|&c| (c - 2) / 2).collect();
    Ok((x, xi))
}

/// Ordinal-type row for display, aligned with the word.
pub fn type_row(p: &Permutation, border: Border) -> String {
    super::classify(p, border)
        .into_iter()
        .map(OrdinalType::symbol)
        .collect::<Vec<_>>()
        .join(" ")
}

/// André's polynomials: `P₀ = w` and
/// `P_{k+1,m} = (m+1)(m+2)(m+3)P_{k,m+3} + 2m(m²+1)P_{k,m} + (m−1)(m−2)(m−3)P_{k,m−3}`,
/// so that `d^{3k}smh/dz^{3k} = P_k(smh)`. Coefficients are indexed by degree.
pub fn andre_polynomials(k_max: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::zero(), BigInt::from(1)]];
    for k in 0..k_max {
        let prev = &out[k];
        let get = |m: i64| -> BigInt {
            if m < 0 {
                BigInt::zero()
            } else {
                prev.get(m as usize).cloned().unwrap_or_default()
            }
        };
        let deg = prev.len() + 3;
        let next: Vec<BigInt> = (0..deg as i64)
            .map(|m| {
                get(m + 3) * ((m + 1) * (m + 2) * (m + 3))
                    + get(m) * (2 * m * (m * m + 1))
                    + get(m - 3) * ((m - 1) * (m - 2) * (m - 3))
            })
            .collect();
        out.push(next);
    }
    out
}

/// Whether `d^{3k}smh = P_k(smh)` holds as series through `order`.
pub fn andre_identity_holds(k: usize, order: usize) -> bool {
    let s = crate::dixonian::dixon_series(order).smh();
    let p = &andre_polynomials(k)[k];
    let coeffs: Vec<_> = p.iter().cloned().map(from_bigint).collect();
    let lhs: PowerSeries = match s.derive_n(3 * k) {
        Ok(d) => d,
        Err(_) => return false,
    };
    lhs.agrees_with(&s.eval_polynomial(&coeffs))
}

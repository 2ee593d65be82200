//! Closed forms for the J- and S-fraction expansions of the Laplace
//! transforms of products of Dixonian functions, and their verification
//! against fractions extracted from the series.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{
    contract_s_to_j, jfraction_extract, normalize_to_w, sfraction_extract, ContFracError,
    JFraction, Monomial, SFraction,
};
use crate::dixonian::{dixon_series, laplace_egf_to_ogf};
use crate::exact::rational::{format_rational, int, ExactRational};
use crate::exact::series::PowerSeries;

/// Functions with a J-fraction of cubic type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Sm,
    Sm2,
    Sm3,
    Cm,
    SmCm,
    Sm2Cm,
}

/// Functions with an S-fraction of cubic type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SFamily {
    Sm,
    Cm,
    SmCm,
}

/// Sign of the `x⁶` numerators, as `1 + b x³ ± a x⁶`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NumeratorSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family {0:?}")]
pub struct UnknownFamily(pub String);

struct FamilyRow {
    family: Family,
    name: &'static str,
    /// exponents of sm and cm
    powers: (u32, u32),
    prefactor: (i64, usize),
    printed: NumeratorSign,
    effective: NumeratorSign,
}

/// Per-family conventions. The printed display of the last four families
/// writes `+ a x⁶`; extraction shows the expansion is of the `− a x⁶` form
/// with the positive closed-form `a`, in every family.
const FAMILIES: [FamilyRow; 6] = [
    FamilyRow {
        family: Family::Sm,
        name: "sm",
        powers: (1, 0),
        prefactor: (1, 2),
        printed: NumeratorSign::Minus,
        effective: NumeratorSign::Minus,
    },
    FamilyRow {
        family: Family::Sm2,
        name: "sm2",
        powers: (2, 0),
        prefactor: (2, 3),
        printed: NumeratorSign::Minus,
        effective: NumeratorSign::Minus,
    },
    FamilyRow {
        family: Family::Sm3,
        name: "sm3",
        powers: (3, 0),
        prefactor: (6, 4),
        printed: NumeratorSign::Plus,
        effective: NumeratorSign::Minus,
    },
    FamilyRow {
        family: Family::Cm,
        name: "cm",
        powers: (0, 1),
        prefactor: (1, 1),
        printed: NumeratorSign::Plus,
        effective: NumeratorSign::Minus,
    },
    FamilyRow {
        family: Family::SmCm,
        name: "smcm",
        powers: (1, 1),
        prefactor: (1, 2),
        printed: NumeratorSign::Plus,
        effective: NumeratorSign::Minus,
    },
    FamilyRow {
        family: Family::Sm2Cm,
        name: "sm2cm",
        powers: (2, 1),
        prefactor: (2, 3),
        printed: NumeratorSign::Plus,
        effective: NumeratorSign::Minus,
    },
];

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Sm,
        Family::Sm2,
        Family::Sm3,
        Family::Cm,
        Family::SmCm,
        Family::Sm2Cm,
    ];

    fn row(self) -> &'static FamilyRow {
        FAMILIES
            .iter()
            .find(|r| r.family == self)
            .expect("every family has a row")
    }

    pub fn name(self) -> &'static str {
        self.row().name
    }

    /// `(i, j)` for the function `smⁱ cmʲ`.
    pub fn powers(self) -> (u32, u32) {
        self.row().powers
    }

    /// Leading monomial of the Laplace transform, removed before extraction.
    pub fn prefactor(self) -> Monomial {
        let (c, p) = self.row().prefactor;
        Monomial::new(int(c), p)
    }

    pub fn printed_sign(self) -> NumeratorSign {
        self.row().printed
    }

    pub fn effective_sign(self) -> NumeratorSign {
        self.row().effective
    }

    /// Sorted factors whose product is `aₙ`, `n ≥ 1`.
    pub fn a_factors(self, n: u64) -> [u64; 6] {
        let m = 3 * n;
        match self {
            Family::Sm => [m - 2, m - 1, m - 1, m, m, m + 1],
            Family::Sm2 => [m - 1, m, m, m + 1, m + 1, m + 2],
            Family::Sm3 => [m, m + 1, m + 1, m + 2, m + 2, m + 3],
            Family::Cm => [m - 2, m - 2, m - 1, m - 1, m, m],
            Family::SmCm => [m - 1, m - 1, m, m, m + 1, m + 1],
            Family::Sm2Cm => [m, m, m + 1, m + 1, m + 2, m + 2],
        }
    }

    /// The partial numerator `aₙ`, `n ≥ 1`.
    pub fn a(self, n: u64) -> BigInt {
        assert!(n >= 1, "a_n starts at n = 1");
        let m = BigInt::from(3 * n);
        let one = || BigInt::from(1);
        let two = || BigInt::from(2);
        let three = || BigInt::from(3);
        let sq = |x: BigInt| &x * &x;
        match self {
            Family::Sm => (&m - two()) * sq(&m - one()) * sq(m.clone()) * (&m + one()),
            Family::Sm2 => (&m - one()) * sq(m.clone()) * sq(&m + one()) * (&m + two()),
            Family::Sm3 => m.clone() * sq(&m + one()) * sq(&m + two()) * (&m + three()),
            Family::Cm => sq(&m - two()) * sq(&m - one()) * sq(m.clone()),
            Family::SmCm => sq(&m - one()) * sq(m.clone()) * sq(&m + one()),
            Family::Sm2Cm => sq(m.clone()) * sq(&m + one()) * sq(&m + two()),
        }
    }

    /// The linear coefficient `bₙ`, `n ≥ 0`; the fraction has `1 + bₙx³`.
    pub fn b(self, n: u64) -> BigInt {
        let m = BigInt::from(3 * n);
        let k = |d: i64| &m + BigInt::from(d);
        let sq = |x: BigInt| &x * &x;
        match self {
            Family::Sm => BigInt::from(2) * k(1) * (sq(k(1)) + 1),
            Family::Sm2 => BigInt::from(2) * k(2) * (sq(k(2)) + 1),
            Family::Sm3 => BigInt::from(2) * k(3) * (sq(k(3)) + 1),
            Family::Cm => k(-1) * sq(m.clone()) + sq(k(1)) * k(2),
            Family::SmCm => m.clone() * sq(k(1)) + sq(k(2)) * k(3),
            Family::Sm2Cm => k(1) * sq(k(2)) + sq(k(3)) * k(4),
        }
    }

    pub fn b0(self) -> BigInt {
        self.b(0)
    }

    /// The closed-form fraction through depth `k` (`b₀..b_{k−1}`, `a₁..a_{k−1}`),
    /// in the extraction convention `c = −b`.
    pub fn closed_form(self, depth: usize) -> JFraction {
        let c = (0..depth as u64)
            .map(|n| ExactRational::from_integer(-self.b(n)))
            .collect();
        let a = (1..depth.max(1) as u64)
            .map(|n| ExactRational::from_integer(self.a(n)))
            .collect();
        JFraction::from_coeffs(c, a).with_prefactor(self.prefactor(), 3)
    }

    /// Laplace transform of `smⁱcmʲ` through `x^{order+1}`.
    pub fn laplace_series(self, order: usize) -> PowerSeries {
        let (i, j) = self.powers();
        laplace_of(i, j, order)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FAMILIES
            .iter()
            .find(|r| r.name == s)
            .map(|r| r.family)
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

impl SFamily {
    pub const ALL: [SFamily; 3] = [SFamily::Sm, SFamily::Cm, SFamily::SmCm];

    pub fn name(self) -> &'static str {
        self.j_family().name()
    }

    /// The J-fraction family obtained by contraction.
    pub fn j_family(self) -> Family {
        match self {
            SFamily::Sm => Family::Sm,
            SFamily::Cm => Family::Cm,
            SFamily::SmCm => Family::SmCm,
        }
    }

    /// `d_n`, `n ≥ 1`, in the `1 + d x³` convention.
    pub fn d(self, n: u64) -> BigInt {
        assert!(n >= 1, "d_n starts at n = 1");
        let r = n.div_ceil(2);
        let m = BigInt::from(3 * r);
        let k = |d: i64| &m + BigInt::from(d);
        let sq = |x: BigInt| &x * &x;
        let odd = n % 2 == 1;
        match (self, odd) {
            (SFamily::Sm, true) => k(-2) * sq(k(-1)),
            (SFamily::Sm, false) => sq(m.clone()) * k(1),
            (SFamily::Cm, true) => sq(k(-2)) * k(-1),
            (SFamily::Cm, false) => k(-1) * sq(m.clone()),
            (SFamily::SmCm, true) => sq(k(-1)) * m.clone(),
            (SFamily::SmCm, false) => m.clone() * sq(k(1)),
        }
    }

    /// `(d_{2r−1}, d_{2r})`, `r ≥ 1`.
    pub fn pair(self, r: u64) -> (BigInt, BigInt) {
        (self.d(2 * r - 1), self.d(2 * r))
    }

    pub fn closed_form(self, depth: usize) -> SFraction {
        let d = (1..=depth as u64)
            .map(|n| ExactRational::from_integer(self.d(n)))
            .collect();
        SFraction::from_coeffs(d).with_prefactor(self.j_family().prefactor(), 3)
    }
}

impl fmt::Display for SFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SFamily {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

/// `x·Σ n!·[zⁿ](smⁱcmʲ)·xⁿ`, exact through `x^{order+1}`.
pub fn laplace_of(i: u32, j: u32, order: usize) -> PowerSeries {
    let pair = dixon_series(order);
    let f = pair.sm.pow(i).mul_series(&pair.cm.pow(j));
    laplace_egf_to_ogf(&f).shift_up(1)
}

/// The series in `w = x³` fed to the extractor for a family.
pub fn family_w_series(family: Family, order: usize) -> Result<PowerSeries, ContFracError> {
    normalize_to_w(&family.laplace_series(order), &family.prefactor(), 3)
}

/// Largest J-depth whose coefficients the series determines.
pub fn max_j_depth(w: &PowerSeries) -> usize {
    w.order().div_ceil(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// `"a"`, `"b"` or `"d"`.
    pub coefficient: &'static str,
    pub index: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{}: expected {}, found {}",
            self.coefficient, self.index, self.expected, self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub family: String,
    pub depth: usize,
    pub mismatch: Option<Mismatch>,
    /// Set when extraction stopped early on a zero partial numerator.
    pub terminated_at: Option<usize>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.terminated_at.is_none()
    }
}

/// Compares an extracted J-fraction with a family's closed form, `bₙ` for
/// `n < depth` and `aₙ` for `1 ≤ n < depth`, in order of depth.
pub fn compare_j(family: Family, extracted: &JFraction, depth: usize) -> Verdict {
    let mut mismatch = None;
    for n in 0..depth {
        let expect_b = ExactRational::from_integer(family.b(n as u64));
        let found_b = extracted.c.get(n).map(|c| -c.clone());
        if n >= 1 {
            let expect_a = ExactRational::from_integer(family.a(n as u64));
            let found_a = extracted.a.get(n - 1);
            if found_a != Some(&expect_a) {
                mismatch = Some(Mismatch {
                    coefficient: "a",
                    index: n,
                    expected: format_rational(&expect_a),
                    found: found_a.map_or("none".into(), format_rational),
                });
                break;
            }
        }
        if found_b.as_ref() != Some(&expect_b) {
            mismatch = Some(Mismatch {
                coefficient: "b",
                index: n,
                expected: format_rational(&expect_b),
                found: found_b.as_ref().map_or("none".into(), format_rational),
            });
            break;
        }
    }
    let terminated_at = extracted
        .termination
        .as_ref()
        .map(|_| extracted.a.len() + 1);
    Verdict {
        family: family.name().to_string(),
        depth,
        mismatch,
        terminated_at,
    }
}

/// Extracts the J-fraction of `w` (already normalized) and compares it with
/// the family's closed form through `depth` levels.
pub fn verify_j_series(
    family: Family,
    w: &PowerSeries,
    depth: usize,
) -> Result<Verdict, ContFracError> {
    let j = jfraction_extract(w, depth)?;
    Ok(compare_j(family, &j, depth))
}

/// Builds the family's series at `order`, extracts and compares.
pub fn verify_family_j(
    family: Family,
    depth: usize,
    order: usize,
) -> Result<Verdict, ContFracError> {
    verify_j_series(family, &family_w_series(family, order)?, depth)
}

pub fn compare_s(family: SFamily, extracted: &SFraction, depth: usize) -> Verdict {
    let mut mismatch = None;
    for n in 1..=depth {
        let expect = ExactRational::from_integer(family.d(n as u64));
        let found = extracted.d.get(n - 1);
        if found != Some(&expect) {
            mismatch = Some(Mismatch {
                coefficient: "d",
                index: n,
                expected: format_rational(&expect),
                found: found.map_or("none".into(), format_rational),
            });
            break;
        }
    }
    let terminated_at = extracted
        .termination
        .as_ref()
        .map(|_| extracted.d.len() + 1);
    Verdict {
        family: family.name().to_string(),
        depth,
        mismatch,
        terminated_at,
    }
}

pub fn verify_s_series(
    family: SFamily,
    w: &PowerSeries,
    depth: usize,
) -> Result<Verdict, ContFracError> {
    let s = sfraction_extract(w, depth)?;
    Ok(compare_s(family, &s, depth))
}

pub fn verify_family_s(
    family: SFamily,
    depth: usize,
    order: usize,
) -> Result<Verdict, ContFracError> {
    verify_s_series(family, &family_w_series(family.j_family(), order)?, depth)
}

/// Whether contracting the extracted S-fraction gives the extracted
/// J-fraction, over the levels both determine.
pub fn contraction_agrees(family: SFamily, order: usize) -> Result<bool, ContFracError> {
    let w = family_w_series(family.j_family(), order)?;
    let s = sfraction_extract(&w, w.order())?;
    let contracted = contract_s_to_j(&s);
    let j = jfraction_extract(&w, max_j_depth(&w))?;
    let levels = contracted.c.len().min(j.c.len());
    Ok(levels > 0
        && contracted.c[..levels] == j.c[..levels]
        && contracted.a[..levels - 1] == j.a[..levels - 1])
}

/// Adds one to a single coefficient, for fault-injection tests.
pub fn corrupt(w: &PowerSeries, index: usize) -> PowerSeries {
    let mut coeffs = w.coeffs().to_vec();
    if let Some(c) = coeffs.get_mut(index) {
        *c += int(1);
    }
    PowerSeries::new(coeffs, w.order())
}

/// Factor tuples of `a₁..a_count`, concatenated, for inspecting how they
/// tile the sequence 1, 1, 2, 2, 3, 3, ….
pub fn factor_sequence(family: Family, count: u64) -> Vec<u64> {
    (1..=count).flat_map(|n| family.a_factors(n)).collect()
}

/// How many leading terms of 1, 1, 2, 2, … a family's tuples skip, if they
/// tile a suffix of that sequence at all.
pub fn tiling_offset(family: Family, count: u64) -> Option<usize> {
    let seq = factor_sequence(family, count);
    let doubled = |i: usize| (i / 2 + 1) as u64;
    (0..6).find(|&off| seq.iter().enumerate().all(|(i, &v)| v == doubled(off + i)))
}

/// A coefficient table of one fraction, ready for export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionTable {
    pub family: String,
    pub rows: Vec<FractionRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionRow {
    pub n: usize,
    /// Empty at `n = 0` for J-fractions.
    pub a_n: String,
    pub b_n: String,
}

impl FractionTable {
    /// `n, aₙ, bₙ` in the `1 + bx³ − ax⁶` reading.
    pub fn from_j(family: &str, j: &JFraction) -> Self {
        let rows =
            j.c.iter()
                .enumerate()
                .map(|(n, c)| FractionRow {
                    n,
                    a_n: if n == 0 {
                        String::new()
                    } else {
                        j.a.get(n - 1).map_or(String::new(), format_rational)
                    },
                    b_n: format_rational(&-c.clone()),
                })
                .collect();
        FractionTable {
            family: family.to_string(),
            rows,
        }
    }

    /// `n, dₙ` with `b_n` left empty.
    pub fn from_s(family: &str, s: &SFraction) -> Self {
        let rows =
            s.d.iter()
                .enumerate()
                .map(|(i, d)| FractionRow {
                    n: i + 1,
                    a_n: format_rational(d),
                    b_n: String::new(),
                })
                .collect();
        FractionTable {
            family: family.to_string(),
            rows,
        }
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "a_n", "b_n"])?;
        for r in &self.rows {
            w.write_record([r.n.to_string(), r.a_n.clone(), r.b_n.clone()])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        assert_eq!(Family::Sm.a(1), 144.into());
        assert_eq!(Family::Sm.b(1), 136.into());
        assert_eq!(Family::Sm.a(2), 25200.into());
        assert_eq!(Family::Sm.b(2), 700.into());
        assert_eq!(Family::Cm.a(2), 14400.into());
        assert_eq!(Family::Cm.b(2), 572.into());
        assert_eq!(SFamily::SmCm.pair(1), (12.into(), 48.into()));
        let b0: Vec<i64> = Family::ALL
            .iter()
            .map(|f| i64::try_from(f.b0()).unwrap())
            .collect();
        assert_eq!(b0, vec![4, 20, 60, 2, 12, 40]);
    }

    #[test]
    fn s_heads() {
        let d = |f: SFamily| {
            (1..=4)
                .map(|n| i64::try_from(f.d(n)).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(d(SFamily::Sm), vec![4, 36, 100, 252]);
        assert_eq!(d(SFamily::Cm), vec![2, 18, 80, 180]);
    }

    #[test]
    fn sm_extraction_head() {
        let j = jfraction_extract(&family_w_series(Family::Sm, 20).unwrap(), 2).unwrap();
        assert_eq!(j.c, vec![int(-4), int(-136)]);
        assert_eq!(j.a, vec![int(144)]);
    }

    #[test]
    fn every_family_at_moderate_depth() {
        for f in Family::ALL {
            let v = verify_family_j(f, 5, 36).unwrap();
            assert!(v.passed(), "{f}: {:?}", v.mismatch);
        }
        for f in SFamily::ALL {
            let v = verify_family_s(f, 8, 36).unwrap();
            assert!(v.passed(), "{f}: {:?}", v.mismatch);
        }
    }

    #[test]
    fn effective_sign_is_uniform() {
        // extraction of a `+ a x⁶` fraction would give a = −(closed form)
        for f in Family::ALL {
            let j = jfraction_extract(&family_w_series(f, 24).unwrap(), 3).unwrap();
            let sign = if j.a[0] == ExactRational::from_integer(f.a(1)) {
                NumeratorSign::Minus
            } else {
                NumeratorSign::Plus
            };
            assert_eq!(sign, f.effective_sign(), "{f}");
        }
    }

    #[test]
    fn corruption_is_located() {
        let w = family_w_series(Family::Sm, 36).unwrap();
        // coefficient 2k−1 first influences c_{k−1}; 2k influences a_k
        let v = verify_j_series(Family::Sm, &corrupt(&w, 5), 5).unwrap();
        let m = v.mismatch.unwrap();
        assert_eq!((m.coefficient, m.index), ("b", 2));
        let v = verify_j_series(Family::Sm, &corrupt(&w, 6), 5).unwrap();
        let m = v.mismatch.unwrap();
        assert_eq!((m.coefficient, m.index), ("a", 3));
    }

    #[test]
    fn partitions_of_doubled_sequence() {
        for f in Family::ALL {
            for n in 1..=8 {
                let p: BigInt = f.a_factors(n).iter().map(|&x| BigInt::from(x)).product();
                assert_eq!(p, f.a(n));
            }
        }
        let offsets: Vec<_> = Family::ALL.iter().map(|&f| tiling_offset(f, 8)).collect();
        assert_eq!(
            offsets,
            vec![Some(1), Some(3), Some(5), Some(0), Some(2), Some(4)]
        );
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("tan".parse::<Family>().is_err());
    }

    #[test]
    fn csv_export() {
        let t = FractionTable::from_j("cm", &Family::Cm.closed_form(2));
        assert_eq!(t.to_csv().unwrap(), "n,a_n,b_n\n0,,2\n1,36,98\n");
    }
}

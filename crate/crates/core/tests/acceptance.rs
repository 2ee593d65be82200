//! The acceptance suite: one line per criterion, all run in a single test
//! so the report prints in order.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use dixon::contfrac::families::{
    contraction_agrees, verify_family_j, verify_family_s, Family, SFamily,
};
use dixon::contfrac::laplace::{check_recurrences, scd_transforms};
use dixon::contfrac::ortho::{
    printed_valent, printed_width_functions, snake_width_gf, valent_from_fraction,
    valent_from_generating_function, width_denominator_matches,
};
use dixon::dixonian::eval::{eval_smh, pi3, EvalMode};
use dixon::dixonian::{
    dixon_series, dumont_r, dumont_residual, egf_coefficient, sm_via_hypergeometric, weierstrass_p,
    weierstrass_residuals,
};
use dixon::exact::rational::{factorial, from_bigint, int, rat, to_f64};
use dixon::exact::{BivariatePoly, ExactRational, PowerSeries, UrnRule};
use dixon::perm::paths::{andre_polynomials, motzkin_weighted_count, PossibilityFunction};
use dixon::perm::tree::y_shapes;
use dixon::perm::{count_parity_class, count_polarized_3repeated, parity_witnesses, ParityClass};
use dixon::urn::yule::compare_with_ode;
use dixon::urn::{
    aggregate_by_x, composition_check, enumerate_histories, histogram, histogram_shape,
    history_counts, monochrome_egfs, parse_word, t23_check,
};

type Outcome = Result<String, String>;

/// Id, name, check and time budget.
type Criterion = (&'static str, &'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scaled(s: &PowerSeries, n: usize) -> BigInt {
    egf_coefficient(s, n).expect("integral EGF coefficient")
}

fn c01_taylor() -> Outcome {
    let p = dixon_series(13);
    let sm: Vec<BigInt> = [4, 7, 10, 13].iter().map(|&n| scaled(&p.sm, n)).collect();
    let cm: Vec<BigInt> = [3, 6, 9, 12].iter().map(|&n| scaled(&p.cm, n)).collect();
    let want_sm: Vec<BigInt> = [-4, 160, -20800, 6476800].map(BigInt::from).to_vec();
    // the printed 8880000 is a misprint; two independent constructions give 880000
    let want_cm: Vec<BigInt> = [-2, 40, -3680, 880000].map(BigInt::from).to_vec();
    ensure(sm == want_sm, || format!("sm {sm:?}"))?;
    ensure(cm == want_cm, || format!("cm {cm:?}"))?;
    let from_egf = dixon::dixonian::dixon_series_from_egf(13);
    ensure(from_egf == p, || {
        "EGF recurrence disagrees with Picard iteration".into()
    })?;
    Ok(
        "sm -4, 160, -20800, 6476800; cm -2, 40, -3680, 880000 (printed 8880000 is a misprint)"
            .into(),
    )
}

fn c02_fermat() -> Outcome {
    let d = dixon_series(60).fermat_defect();
    ensure(d.is_zero(), || {
        format!("defect nonzero at {:?}", d.valuation())
    })?;
    Ok("sm^3 + cm^3 - 1 = 0 through z^60".into())
}

fn c03_hypergeometric() -> Outcome {
    let a = sm_via_hypergeometric(40);
    let b = dixon_series(40).sm;
    ensure(a == b, || {
        format!("first difference at {:?}", a.first_difference(&b))
    })?;
    Ok("reversion route equals ODE route through z^40".into())
}

fn c04_fractions() -> Outcome {
    for f in Family::ALL {
        let v = verify_family_j(f, 8, 60).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("{f}: {:?}", v.mismatch))?;
    }
    for f in [SFamily::Sm, SFamily::Cm, SFamily::SmCm] {
        let v = verify_family_s(f, 16, 60).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("{}: {:?}", f.name(), v.mismatch))?;
        ensure(
            contraction_agrees(f, 60).map_err(|e| e.to_string())?,
            || format!("contraction of {}", f.name()),
        )?;
    }
    Ok("six J-families to depth 8, three S-families to depth 16, contractions agree".into())
}

fn c05_laplace() -> Outcome {
    let t = scd_transforms(9, 40);
    ensure(t.s[0] == PowerSeries::var(t.s[0].order()), || {
        "S0 != x".into()
    })?;
    for c in check_recurrences(&t, 6) {
        ensure(c.holds, || {
            format!(
                "{} at n = {} differs at x^{:?}",
                c.name, c.n, c.first_difference
            )
        })?;
    }
    Ok("S, C, D and ratio recurrences exact for n <= 6".into())
}

fn c06_constants() -> Outcome {
    let p = pi3(20).map_err(|e| e.to_string())?;
    ensure(
        p.distance_to(&rat(52999162508, 10_000_000_000)) < 1e-9,
        || format!("pi3 = {p}"),
    )?;
    let s1 = eval_smh(&int(1), 20, EvalMode::Auto).map_err(|e| e.to_string())?;
    ensure(
        s1.distance_to(&rat(12054151514, 10_000_000_000)) < 1e-9,
        || format!("smh(1) = {s1}"),
    )?;
    let sm = dixon_series(31).sm;
    let ratio = (sm.coeff(28).expect("in range") / sm.coeff(31).expect("in range")).abs();
    let r = to_f64(&ratio).cbrt();
    let printed = 1.7666387502;
    let rho = p.to_f64() / 3.0;
    ensure((r - printed).abs() < 1.5e-9, || format!("ratio root {r}"))?;
    ensure((r - rho).abs() < 2e-9, || {
        format!("ratio root {r} vs pi3/3 {rho}")
    })?;
    Ok(format!(
        "pi3 = {}, smh(1) = {}, ratio root {r:.12}",
        p.to_decimal_string(),
        s1.to_decimal_string()
    ))
}

fn c07_urn() -> Outcome {
    let rule = UrnRule::m12();
    for (start, word) in [(BivariatePoly::x(), "x"), (BivariatePoly::y(), "y")] {
        for n in 0..=8 {
            let exact = history_counts(&rule, &start, n).map_err(|e| e.to_string())?;
            let words =
                enumerate_histories(&rule, &parse_word(word).map_err(|e| e.to_string())?, n, 8)
                    .map_err(|e| e.to_string())?;
            let brute = aggregate_by_x(n, &words);
            ensure(exact == brute, || format!("from {word}, n = {n}"))?;
            ensure(exact.total() == factorial(n as u64), || {
                format!("sum at n = {n}")
            })?;
        }
    }
    let (opposite, original) = monochrome_egfs(30);
    let p = dixon_series(30);
    let (smh, cmh) = (p.smh(), p.cmh());
    for n in 0..=30 {
        ensure(scaled(&opposite, n) == scaled(&smh, n), || {
            format!("all-y at n = {n}")
        })?;
        ensure(scaled(&original, n) == scaled(&cmh, n), || {
            format!("all-x at n = {n}")
        })?;
    }
    Ok("enumeration = delta-iteration for n <= 8 from x and y; monochrome EGFs = smh, cmh to n = 30".into())
}

fn c08_yule() -> Outcome {
    let mut worst: f64 = 0.0;
    for t in [rat(1, 4), rat(1, 2), int(1), int(2)] {
        let c = compare_with_ode(&t, 1e-3).map_err(|e| e.to_string())?;
        ensure(c.difference < 1e-9, || format!("t = {}: {:?}", c.t, c))?;
        worst = worst.max(c.difference);
    }
    Ok(format!("largest difference {worst:.2e}"))
}

fn c09_composition() -> Outcome {
    let mut worst: f64 = 0.0;
    for (x0, z) in [(rat(3, 10), rat(4, 10)), (rat(5, 10), rat(3, 10))] {
        let c = composition_check(&x0, &z, 40, 1e-9, 30).map_err(|e| e.to_string())?;
        ensure(c.residual < 1e-9, || format!("residual {}", c.residual))?;
        worst = worst.max(c.residual);
    }
    Ok(format!("largest residual {worst:.2e}"))
}

fn c10_parity() -> Outcome {
    let p = dixon_series(10);
    let (smh, cmh) = (p.smh(), p.cmh());
    for n in 0..=10 {
        let x = count_parity_class(n, ParityClass::X, 10).map_err(|e| e.to_string())?;
        let y = count_parity_class(n, ParityClass::Y, 10).map_err(|e| e.to_string())?;
        ensure(x == scaled(&smh, n), || format!("X_{n} = {x}"))?;
        ensure(y == scaled(&cmh, n), || format!("Y_{n} = {y}"))?;
    }
    let words = |n, c| -> Result<Vec<String>, String> {
        let mut w: Vec<String> = parity_witnesses(n, c, 10)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|p| p.values().iter().map(u32::to_string).collect())
            .collect();
        w.sort();
        Ok(w)
    };
    ensure(words(3, ParityClass::Y)? == ["213", "312"], || {
        "Y_3 witnesses".into()
    })?;
    ensure(
        words(4, ParityClass::X)? == ["1324", "1423", "3241", "4231"],
        || "X_4 witnesses".into(),
    )?;
    for nu in 0..=3u64 {
        let count = y_shapes(nu as usize).len();
        let catalan = dixon::exact::rational::binomial(4 * nu, nu) / BigInt::from(3 * nu + 1);
        ensure(BigInt::from(count) == catalan, || {
            format!("Y shapes at nu = {nu}: {count}")
        })?;
    }
    Ok("X_n, Y_n exhaustive for n <= 10; witness sets; Y shapes 1, 1, 4, 22".into())
}

fn c11_polarized() -> Outcome {
    let smh = dixon_series(7).smh();
    let mut got = Vec::new();
    for n in [1, 4, 7] {
        let c = count_polarized_3repeated(n, 12).map_err(|e| e.to_string())?;
        ensure(c == scaled(&smh, n), || format!("n = {n}: {c}"))?;
        got.push(c.to_string());
    }
    Ok(format!("counts {}", got.join(", ")))
}

fn trig(order: usize) -> (PowerSeries, PowerSeries) {
    let term = |n: usize, parity: usize| {
        if n % 2 != parity {
            return ExactRational::zero();
        }
        let sign = if (n / 2).is_multiple_of(2) { 1 } else { -1 };
        from_bigint(BigInt::from(sign)) / from_bigint(factorial(n as u64))
    };
    (
        PowerSeries::from_fn(order, |n| term(n, 1)),
        PowerSeries::from_fn(order, |n| term(n, 0)),
    )
}

fn c12_paths() -> Outcome {
    let (sin, cos) = trig(10);
    let tan = sin.div_series(&cos).map_err(|e| e.to_string())?;
    let sec = cos.inverse().map_err(|e| e.to_string())?;
    for n in (1..=9).step_by(2) {
        let c = motzkin_weighted_count(&PossibilityFunction::alternating_minus_minus(), n - 1);
        ensure(c == scaled(&tan, n), || format!("tangent at n = {n}: {c}"))?;
    }
    for n in (0..=8).step_by(2) {
        let c = motzkin_weighted_count(&PossibilityFunction::alternating_minus_plus(), n);
        ensure(c == scaled(&sec, n), || format!("secant at n = {n}: {c}"))?;
    }
    for n in 1..=8 {
        let f = factorial(n as u64);
        ensure(
            motzkin_weighted_count(&PossibilityFunction::all_minus_minus(), n - 1) == f,
            || format!("n! (-,-) at {n}"),
        )?;
        ensure(
            motzkin_weighted_count(&PossibilityFunction::all_minus_plus(), n) == f,
            || format!("n! (-,+) at {n}"),
        )?;
    }
    let smh = dixon_series(19).smh();
    let p = andre_polynomials(6);
    for nu in 0..=6 {
        let want = scaled(&smh, 3 * nu + 1);
        ensure(
            motzkin_weighted_count(&PossibilityFunction::andre(), nu) == want,
            || format!("Andre paths at nu = {nu}"),
        )?;
        ensure(p[nu][1] == want, || format!("P_{nu}'(0)"))?;
    }
    Ok("tangent, secant, n! and Andre-weight counts match".into())
}

fn c13_width() -> Outcome {
    for (h, printed) in (1..=4).zip(printed_width_functions()) {
        let w = snake_width_gf(h).map_err(|e| e.to_string())?;
        ensure(w.same_function(&printed), || format!("W[{h}] = {w}"))?;
    }
    for h in 1..=6 {
        ensure(
            width_denominator_matches(h).map_err(|e| e.to_string())?,
            || format!("denominator at h = {h}"),
        )?;
    }
    Ok("W[1..4] equal the printed functions; denominators reciprocal Meixner for h <= 6".into())
}

fn c14_valent() -> Outcome {
    let printed = printed_valent();
    ensure(valent_from_generating_function(4) == printed, || {
        "generating-function route".into()
    })?;
    ensure(
        valent_from_fraction(5).map_err(|e| e.to_string())? == printed,
        || "fraction route".into(),
    )?;
    let b: Vec<BigInt> = (0..3).map(|n| Family::Cm.b(n)).collect();
    ensure(b == [2, 98, 572].map(BigInt::from), || {
        format!("level coefficients {b:?}")
    })?;
    Ok("Q0..Q4 equal the printed list by both routes; levels z+2, z+98, z+572".into())
}

fn c15_weierstrass() -> Outcome {
    let (r1, r2) = weierstrass_residuals(&weierstrass_p(57));
    ensure(r1.is_zero() && r2.is_zero(), || {
        "P residuals nonzero".into()
    })?;
    for row in t23_check(3).map_err(|e| e.to_string())? {
        ensure(row.holds(), || {
            format!(
                "T23 at nu = {}: {} vs {}",
                row.nu, row.histories, row.closed_form
            )
        })?;
    }
    let r = dumont_r(60);
    ensure(dumont_residual(&r).is_zero(), || {
        "Dumont residual nonzero".into()
    })?;
    Ok(
        "P'^2 = 4P^3 + 1 and P'' = 6P^2 to order 57; T23 for nu <= 3; Dumont identity to order 60"
            .into(),
    )
}

fn substitute_histogram() -> Outcome {
    let s = histogram_shape(&histogram(50));
    ensure(s.unimodal && s.skewness.abs() <= 0.05, || format!("{s:?}"))?;
    Ok(format!(
        "n = 50: unimodal, mean {:.3}, skewness {:.1e}",
        s.mean, s.skewness
    ))
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("1", "Taylor tables", c01_taylor, Duration::from_secs(1)),
        ("2", "Fermat identity", c02_fermat, Duration::from_secs(1)),
        (
            "3",
            "hypergeometric route",
            c03_hypergeometric,
            Duration::from_secs(5),
        ),
        (
            "4",
            "continued fractions",
            c04_fractions,
            Duration::from_secs(30),
        ),
        (
            "5",
            "Laplace recurrences",
            c05_laplace,
            Duration::from_secs(30),
        ),
        ("6", "constants", c06_constants, Duration::from_secs(5)),
        ("7", "urn histories", c07_urn, Duration::from_secs(60)),
        ("8", "Yule process", c08_yule, Duration::from_secs(10)),
        (
            "9",
            "composition identity",
            c09_composition,
            Duration::from_secs(10),
        ),
        ("10", "parity model", c10_parity, Duration::from_secs(60)),
        (
            "11",
            "polarized permutations",
            c11_polarized,
            Duration::from_secs(60),
        ),
        ("12", "path diagrams", c12_paths, Duration::from_secs(30)),
        ("13", "snake widths", c13_width, Duration::from_secs(30)),
        (
            "14",
            "orthogonal polynomials",
            c14_valent,
            Duration::from_secs(30),
        ),
        (
            "15",
            "Weierstrass and Dumont",
            c15_weierstrass,
            Duration::from_secs(30),
        ),
        (
            "S",
            "histogram shape",
            substitute_histogram,
            Duration::from_secs(30),
        ),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (id, name, f, budget) in criteria {
        let t = Instant::now();
        let result = f();
        let elapsed = t.elapsed();
        let (status, detail) = match &result {
            Ok(d) if elapsed <= budget => ("PASS", d.clone()),
            Ok(d) => (
                "FAIL",
                format!("{d}; took {elapsed:.2?}, budget {budget:?}"),
            ),
            Err(e) => ("FAIL", e.clone()),
        };
        println!("{status} [{id:>2}] {name} ({elapsed:.2?}): {detail}");
        if status == "FAIL" {
            failures.push(id);
        }
    }
    println!("total {:.2?}", start.elapsed());
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use e7spec::intlinalg::{det, snf, IntMat};
use e7spec::oracle::{sl2_omega, sl2_orders, sl2_torus_exponents};
use e7spec::rootsys::find_subsystem;
use e7spec::spectrum::{mu, nu_1, nu_coset, nu_delta, CosetSpec, QSpec, SpectrumSet};
use e7spec::verify::{verify, VerifyReport};
use e7spec::weyl::{
    conjugacy_classes, init_weyl_group, pointwise_stabilizer, setwise_stabilizer, weyl_group,
    WeylElement,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRng, TestRunner};

const QS: [(u64, u32); 6] = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn check(reports: &[VerifyReport], prefix: &str) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| c.name.starts_with(prefix) && !c.passed)
                .map(move |c| format!("q={}: {} ({})", r.q.q, c.name, c.detail))
        })
        .collect()
}

fn summary(failures: Vec<String>, good: String) -> Outcome {
    if failures.is_empty() {
        ok(true, good)
    } else {
        ok(false, failures.join("; "))
    }
}

fn criterion_1(reports: &[VerifyReport], secs: &[f64]) -> Outcome {
    let slowest = secs.iter().cloned().fold(0.0, f64::max);
    summary(
        check(reports, "closure"),
        format!("closure equality at q = 3, 5, 7, 9, 11, 13; slowest {slowest:.1} s"),
    )
}

fn criterion_2(reports: &[VerifyReport]) -> Outcome {
    let small: Vec<VerifyReport> = reports
        .iter()
        .filter(|r| r.q.q <= BigInt::from(5))
        .cloned()
        .collect();
    let n = small
        .iter()
        .map(|r| {
            r.checks
                .iter()
                .filter(|c| c.name.starts_with("exponent "))
                .count()
        })
        .sum::<usize>();
    summary(
        check(&small, "exponent "),
        format!("{n} exponent checks at q = 3, 5"),
    )
}

fn criterion_3() -> Outcome {
    let w = weyl_group();
    let classes = conjugacy_classes(w.handle()).unwrap();
    let a1 = find_subsystem("A1").unwrap();
    let n = setwise_stabilizer(&a1.pi1, w.handle()).unwrap();
    let c = pointwise_stabilizer(&a1.pi1, w.handle()).unwrap();
    let passed = w.elements().len() == 2_903_040
        && classes.len() == 60
        && w.handle().contains(&WeylElement::minus_identity())
        && n.len() == 23040
        && n.elements() == c.elements();
    ok(
        passed,
        format!(
            "|W| = {}, {} classes, |N_W(A1)| = {}",
            w.elements().len(),
            classes.len(),
            n.len()
        ),
    )
}

fn snf_case(a: &IntMat) -> bool {
    let r = snf(a);
    let unimodular = |m: &IntMat| det(m).map(|d| d.abs().is_one()).unwrap_or(false);
    let f = r.invariant_factors();
    let chain =
        f.windows(2).all(|w| w[1].is_multiple_of(&w[0])) && f.iter().all(Signed::is_positive);
    let det_ok = !a.is_square() || {
        let prod: BigInt = if f.len() == a.rows() {
            f.iter().product()
        } else {
            BigInt::zero()
        };
        det(a).unwrap().abs() == prod
    };
    &(&r.u * a) * &r.v == r.s
        && r.s.is_diagonal()
        && unimodular(&r.u)
        && unimodular(&r.v)
        && chain
        && det_ok
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let strategy = (1usize..=10, 1usize..=10).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-100i64..=100, r * c).prop_map(move |xs| {
            let rows: Vec<Vec<i64>> = xs.chunks(c).map(<[i64]>::to_vec).collect();
            IntMat::from_rows(&rows)
        })
    });
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(Config::default().rng_algorithm),
    );
    let cases = 1000;
    let bad = (0..cases)
        .filter(|_| !snf_case(&strategy.new_tree(&mut runner).unwrap().current()))
        .count();
    let secs = start.elapsed().as_secs_f64();
    ok(
        bad == 0 && secs <= 30.0,
        format!("{cases} matrices, {bad} failures, {secs:.1} s"),
    )
}

fn criterion_5(reports: &[VerifyReport]) -> Outcome {
    summary(
        check(reports, "nu_delta:"),
        "even part of nu(q) at all six q".into(),
    )
}

fn criterion_6(reports: &[VerifyReport]) -> Outcome {
    let mut f = check(reports, "nu_delta realized");
    f.extend(check(&reports[..1], "center component"));
    summary(
        f,
        "realized over connected centers; component groups match".into(),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        let orders = sl2_orders(p).unwrap();
        let all: SpectrumSet = orders.iter().map(|&o| BigInt::from(o)).collect();
        let omega = sl2_omega(p).unwrap();
        let tori = sl2_torus_exponents(p).unwrap();
        let want: SpectrumSet = [p - 1, p + 1].iter().map(|&x| BigInt::from(x)).collect();
        let semisimple = orders
            .iter()
            .filter(|o| *o % p != 0)
            .all(|o| (p - 1) % o == 0 || (p + 1) % o == 0);
        if omega != mu(&all)
            || tori != want
            || tori.iter().any(|t| omega.multiple_of(t).is_none())
            || !semisimple
        {
            bad.push(p);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok(
        bad.is_empty() && secs <= 5.0,
        format!("SL2(q), q = 3, 5, 7, 11, 13; failures {bad:?}; {secs:.2} s"),
    )
}

fn criterion_8() -> Outcome {
    let q9 = QSpec::new(3, 2).unwrap();
    let psi = nu_coset(&q9, CosetSpec::from_power(1, 2, false)).unwrap();
    let mut passed = psi == nu_1(&QSpec::new(3, 1).unwrap()).scaled(&BigInt::from(2));
    for (p, m) in QS {
        let q = QSpec::new(p, m).unwrap();
        passed &= nu_coset(&q, CosetSpec::DELTA).unwrap() == nu_delta(&q).unwrap();
    }
    for (p, m, k) in [
        (3u64, 2u32, 1u32),
        (3, 4, 1),
        (3, 4, 2),
        (5, 3, 1),
        (3, 6, 2),
        (3, 6, 3),
    ] {
        let c = CosetSpec::from_power(k, m, false);
        let q = QSpec::new(p, m).unwrap();
        passed &= nu_coset(&q, c)
            .unwrap()
            .iter()
            .all(|v| v.is_multiple_of(&BigInt::from(c.field_order)));
    }
    ok(
        passed,
        "psi cosets at q = 9, 81, 125, 729; delta cosets at all six q",
    )
}

fn main() -> ExitCode {
    init_weyl_group(Some(
        &PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("weyl-e7.bin"),
    ));
    let mut reports = Vec::new();
    let mut secs = Vec::new();
    for (p, m) in QS {
        let start = Instant::now();
        reports.push(verify(&QSpec::new(p, m).unwrap()).unwrap());
        secs.push(start.elapsed().as_secs_f64());
    }
    let results = [
        (
            "brute force equals nu(q) in divisor closure",
            criterion_1(&reports, &secs),
        ),
        ("worked torus exponents reproduced", criterion_2(&reports)),
        ("Weyl group facts", criterion_3()),
        ("Smith normal form properties", criterion_4()),
        ("nu_delta structure", criterion_5(&reports)),
        ("realization over connected centers", criterion_6(&reports)),
        ("SL2 oracle", criterion_7()),
        ("coset algebra", criterion_8()),
    ];
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "{} criterion {}: {name} ({})",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    if results.iter().all(|(_, o)| o.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

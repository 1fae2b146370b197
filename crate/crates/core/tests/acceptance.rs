//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use elr_core::bounds::{bracket_tm23, bracket_tm24, n3_closed_form, Convexity, Theorem};
use elr_core::oracle::{self, certify_convexity, AuditConfig, Suite};
use elr_core::{
    classify, divergence_bounds, f_divergence, make_generator, ratio_extrema, zm_divergence_bounds,
    DiscreteFunctional, FunctionModel, GeneratorKind, GeneratorSpec, Interval, ProbabilityVector, ZipfMandelbrot,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut outcome = run();
    let elapsed = start.elapsed();
    outcome.detail = format!("{} [{:.2} s]", outcome.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            outcome.pass = false;
            outcome.detail = format!("{} exceeds {:.0} s", outcome.detail, limit.as_secs_f64());
        }
    }
    outcome
}

fn expansion_exactness() -> Outcome {
    let report = oracle::audit_identities(&AuditConfig::for_suite(Suite::Identities));
    check(
        report.passed() && report.cases == 200 && report.skipped == 0 && report.max_residual <= 1e-9,
        format!(
            "{} configurations, both anchors, max residual/(1+|lr|) = {:.3e}, {} failures",
            report.cases,
            report.max_residual,
            report.failures.len()
        ),
    )
}

fn polynomial_tightness() -> Outcome {
    let report = oracle::audit_tightness(&AuditConfig::for_suite(Suite::Tightness));
    check(
        report.passed() && report.tight == 50 && report.max_residual <= 1e-9,
        format!(
            "{} polynomials of degree < n, all five statements, max |bound - lr| = {:.3e}",
            report.tight, report.max_residual
        ),
    )
}

fn bracket_containment() -> Outcome {
    let report = oracle::audit_brackets(&AuditConfig::for_suite(Suite::Brackets));
    check(
        report.passed() && report.cases == 500 && report.skipped == 0,
        format!(
            "{} certified configurations (100 per statement), {} violations, {} tight",
            report.cases - report.skipped,
            report.failures.len(),
            report.tight
        ),
    )
}

fn worked_bracket() -> Outcome {
    let domain = Interval::new(0.0, 2.0).unwrap();
    let f = FunctionModel::polynomial(&[0.0, 0.0, 0.0, 1.0], domain).unwrap();
    let a = DiscreteFunctional::new(vec![0.5, 1.5], vec![0.5, 0.5], domain).unwrap();
    let tm23 = bracket_tm23(&f, &a, 3, Convexity::Convex).unwrap();
    let tm24 = bracket_tm24(&f, &a, 3, Convexity::Convex).unwrap();
    let (closed_lower, closed_upper) = n3_closed_form(&f, &a).unwrap();
    let near = |x: f64, y: f64| (x - y).abs() <= 1e-12;
    let mut pass = true;
    for r in [&tm23, &tm24] {
        pass &= near(r.lr, -2.25) && near(r.lower.unwrap(), -3.0) && near(r.upper.unwrap(), -1.5);
    }
    pass &= near(tm23.lower.unwrap(), tm24.lower.unwrap()) && near(tm23.upper.unwrap(), tm24.upper.unwrap());
    pass &= near(closed_lower, -3.0) && near(closed_upper, -1.5);
    check(
        pass,
        format!(
            "t^3 on [0,2]: lr = {}, a-anchored [{}, {}], b-anchored [{}, {}], closed form lower {}",
            tm23.lr,
            tm23.lower.unwrap(),
            tm23.upper.unwrap(),
            tm24.lower.unwrap(),
            tm24.upper.unwrap(),
            closed_lower
        ),
    )
}

fn divergence_values() -> Outcome {
    let p = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
    let q = ProbabilityVector::new(vec![0.25, 0.75]).unwrap();
    let domain = Interval::new(0.5, 2.0).unwrap();
    let value = |kind| f_divergence(&make_generator(&GeneratorSpec::new(kind, domain)).unwrap(), &p, &q).unwrap();
    let hellinger = value(GeneratorKind::Hellinger);
    let kl = value(GeneratorKind::Kl);
    check(
        (hellinger - 0.03407417).abs() <= 1e-8 && (kl - 0.1438410).abs() <= 1e-6,
        format!("hellinger = {hellinger:.17}, kl = {kl:.17}"),
    )
}

fn classification_agreement() -> Outcome {
    let domain = Interval::new(0.5, 2.0).unwrap();
    let kinds = [
        GeneratorKind::Kl,
        GeneratorKind::Hellinger,
        GeneratorKind::Harmonic,
        GeneratorKind::Jeffreys,
        GeneratorKind::Exp,
        GeneratorKind::Power(-1.5),
        GeneratorKind::Power(2.5),
        // truncated exponential series: every derivative up to order 6 is positive on t > 0
        GeneratorKind::Poly(vec![1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0, 1.0 / 720.0]),
    ];
    let mut contradictions = Vec::new();
    let mut checked = 0;
    for kind in kinds {
        let spec = GeneratorSpec::new(kind.clone(), domain);
        let f = make_generator(&spec).unwrap();
        for n in 2..=6 {
            let stated = classify(&spec, n).unwrap();
            let certificate = certify_convexity(&f, n, 500, 42).unwrap();
            checked += 1;
            if stated != certificate.verdict {
                contradictions.push(format!("{kind} n={n}: {stated} vs {}", certificate.verdict));
            }
        }
    }
    check(
        contradictions.is_empty(),
        format!(
            "{checked} (generator, n) pairs on [0.5, 2], 500 samples each, {} contradictions {contradictions:?}",
            contradictions.len()
        ),
    )
}

fn zipf_mandelbrot() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let zm = ZipfMandelbrot::new(rng.gen_range(1..=10_000), rng.gen_range(0.0..20.0), rng.gen_range(0.1..5.0)).unwrap();
        worst = worst.max((zm.pmf_vector().iter().sum::<f64>() - 1.0).abs());
    }
    let p = ZipfMandelbrot::zipf(2, 1.0).unwrap();
    let q = ZipfMandelbrot::zipf(2, 2.0).unwrap();
    let r = ratio_extrema(&p, &q).unwrap();
    let extrema_ok = (r.a - 5.0 / 6.0).abs() <= 1e-12 && (r.b - 5.0 / 3.0).abs() <= 1e-12;

    let mut identical = true;
    let pairs = [
        (p, q, GeneratorKind::Poly(vec![0.0, 0.0, 0.0, 1.0]), 3),
        (
            ZipfMandelbrot::new(100, 0.0, 1.2).unwrap(),
            ZipfMandelbrot::new(100, 2.7, 1.5).unwrap(),
            GeneratorKind::Jeffreys,
            3,
        ),
        (
            ZipfMandelbrot::new(40, 1.0, 0.8).unwrap(),
            ZipfMandelbrot::new(40, 0.5, 1.1).unwrap(),
            GeneratorKind::Kl,
            5,
        ),
    ];
    for (zp, zq, kind, n) in pairs {
        for theorem in [Theorem::Tm23, Theorem::Tm24, Theorem::Tm21, Theorem::Tm22] {
            let m = theorem.uses_m().then_some(3);
            if m.is_some() && n < 4 {
                continue;
            }
            let via_zm = zm_divergence_bounds(&zp, &zq, &kind, n, m, theorem, None).unwrap();
            let pv = zp.distribution().unwrap();
            let qv = zq.distribution().unwrap();
            let interval = elr_core::ratio_range(&pv, &qv).unwrap().to_interval().unwrap();
            let spec = GeneratorSpec::new(kind.clone(), interval);
            let direct = divergence_bounds(
                &make_generator(&spec).unwrap(),
                &pv,
                &qv,
                n,
                m,
                theorem,
                classify(&spec, n).unwrap(),
                None,
            )
            .unwrap();
            identical &= via_zm == direct && via_zm.bounds.direction_valid && via_zm.bounds.holds();
        }
    }
    check(
        worst <= 1e-12 && extrema_ok && identical,
        format!(
            "max |sum pmf - 1| = {worst:.2e} over 50 laws, ratio extrema ({}, {}), pipeline bit-identical: {identical}",
            r.a, r.b
        ),
    )
}

fn delegation_cross_check() -> Outcome {
    let report = oracle::audit_delegation(&AuditConfig::for_suite(Suite::Delegation));
    check(
        report.passed() && report.skipped == 0 && report.max_residual <= 1e-12,
        format!(
            "{} random distribution pairs, max relative gap {:.3e}, {} failures",
            report.cases,
            report.max_residual,
            report.failures.len()
        ),
    )
}

fn negative_control() -> Outcome {
    let config = AuditConfig {
        inject_wrong_parity: true,
        ..AuditConfig::for_suite(Suite::Brackets)
    };
    let report = oracle::audit_brackets(&config);
    let expected = report.cases - report.skipped - report.tight;
    check(
        expected > 0 && report.failures.len() == expected,
        format!(
            "reversed orientation: {} of {} non-tight configurations reported",
            report.failures.len(),
            expected
        ),
    )
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 9] = [
        ("expansion exactness", secs(5), expansion_exactness),
        ("polynomial tightness", secs(2), polynomial_tightness),
        ("bracket containment", secs(5), bracket_containment),
        ("worked cubic bracket", None, worked_bracket),
        ("divergence values", None, divergence_values),
        ("generator classification vs certification", None, classification_agreement),
        ("zipf-mandelbrot pipeline", None, zipf_mandelbrot),
        ("direct vs delegated divergence bounds", None, delegation_cross_check),
        ("wrong-parity negative control", None, negative_control),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let outcome = timed(limit, run);
        failed += !outcome.pass as usize;
        println!(
            "criterion {} {}: {} -- {}",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            name,
            outcome.detail
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

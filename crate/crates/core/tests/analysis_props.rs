//! Derivatives and continuity probes checked against plain real arithmetic.

use bcontinuum::analysis::{
    cauchy_continuous_at, cauchy_continuous_on_default, derivative, functions, ContinuityProbe,
    HFunction, Interval, PointKind, ProbeFamily,
};
use bcontinuum::filter::{FilterSemantics, ParityChoice};
use bcontinuum::hyperreal::Hyperreal;
use bcontinuum::value::{rational, Value};
use proptest::prelude::*;

fn fs() -> FilterSemantics {
    FilterSemantics::default()
}

type WithReal = (HFunction, fn(f64) -> f64);

fn smooth() -> Vec<WithReal> {
    vec![
        (functions::square(), |x| x * x),
        (functions::cube(), |x| x * x * x),
        (functions::sin(), f64::sin),
        (functions::exp(), f64::exp),
    ]
}

fn central_difference(f: fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-6;
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[test]
fn derivatives_match_central_differences_on_a_grid() {
    let eps = Hyperreal::harmonic(fs());
    for (f, real) in smooth() {
        for j in 0..25 {
            let x0 = rational(-3 * 8 + j * 2, 8);
            let xf = Value::Exact(x0.clone()).to_f64();
            let d = derivative(&f, &Value::Exact(x0), &eps).unwrap().to_f64();
            let fd = central_difference(real, xf);
            assert!(
                (d - fd).abs() < 1e-4 * fd.abs().max(1.0),
                "{} at {xf}: {d} vs {fd}",
                f.name()
            );
        }
    }
}

#[test]
fn exact_polynomials_have_exact_derivatives() {
    let eps = Hyperreal::harmonic(fs());
    let x0 = rational(7, 3);
    let d2 = derivative(&functions::square(), &Value::Exact(x0.clone()), &eps).unwrap();
    assert_eq!(d2, Value::Exact(rational(14, 3)));
    let d3 = derivative(&functions::cube(), &Value::Exact(x0), &eps).unwrap();
    assert_eq!(d3, Value::Exact(rational(49, 3)));
}

#[test]
fn non_infinitesimal_increments_are_rejected() {
    let one = Hyperreal::from_real(Value::int(1), fs());
    let e = derivative(&functions::square(), &Value::int(1), &one).unwrap_err();
    assert!(matches!(e, bcontinuum::Error::NotInfinitesimal(_)), "{e}");
    let corner = derivative(
        &functions::exp(),
        &Value::int(20),
        &Hyperreal::harmonic(fs()),
    )
    .unwrap_err();
    assert!(
        matches!(corner, bcontinuum::Error::DomainViolation(_)),
        "{corner}"
    );
}

#[test]
fn jumps_fail_on_one_side_only() {
    let f = functions::step_at(rational(1, 2));
    let plus = Hyperreal::harmonic(fs());
    let minus = plus.neg();
    let at = || Value::ratio(1, 2);
    let right = cauchy_continuous_at(&f, &ContinuityProbe::a_point(at(), plus, "+")).unwrap();
    let left = cauchy_continuous_at(&f, &ContinuityProbe::a_point(at(), minus, "-")).unwrap();
    assert!(right.is_holds());
    assert!(left.is_fails());
}

#[test]
fn b_point_failures_persist_as_the_horizon_grows() {
    let f = functions::sin_recip();
    for h in [5_000u64, 10_000, 20_000, 40_000, 100_000] {
        let fs = FilterSemantics::new(h, 64, ParityChoice::EvensInFilter).unwrap();
        let x = Hyperreal::harmonic(fs);
        let v = cauchy_continuous_at(&f, &ContinuityProbe::b_point(x.clone(), x, "1/n")).unwrap();
        assert!(v.is_fails(), "horizon {h}: {v:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifting_commutes_with_embedding(p in -40i64..40, q in 2i64..9, which in 0usize..4) {
        let (f, real) = smooth().swap_remove(which);
        let x = Value::Exact(rational(p, q));
        let lifted = f.lift(&Hyperreal::from_real(x.clone(), fs())).unwrap();
        let expected = Hyperreal::from_real(f.apply(&x), fs());
        prop_assert!(lifted.provably_equal(&expected).is_holds());
        prop_assert!((f.apply(&x).to_f64() - real(x.to_f64())).abs() <= 1e-12 * real(x.to_f64()).abs().max(1.0));
    }

    #[test]
    fn derivative_is_linear(a in -6i64..6, b in -6i64..6, p in -12i64..12, i in 0usize..4, j in 0usize..4) {
        let fns = smooth();
        let (f, g) = (&fns[i].0, &fns[j].0);
        let (ra, rb) = (rational(a, 1), rational(b, 1));
        let h = HFunction::linear_combination(&ra, f, &rb, g);
        let eps = Hyperreal::harmonic(fs());
        let x0 = Value::ratio(p, 4);
        let dh = derivative(&h, &x0, &eps).unwrap().to_f64();
        let df = derivative(f, &x0, &eps).unwrap().to_f64();
        let dg = derivative(g, &x0, &eps).unwrap().to_f64();
        let want = a as f64 * df + b as f64 * dg;
        prop_assert!((dh - want).abs() <= 1e-8 * want.abs().max(1.0), "{} vs {}", dh, want);
    }

    #[test]
    fn continuous_functions_pass_every_a_point(lo in -4i64..4, w in 1i64..6, which in 0usize..4) {
        let (f, _) = smooth().swap_remove(which);
        let interval = Interval::closed(lo as f64 / 2.0, (lo + w) as f64 / 2.0);
        let fs = FilterSemantics::new(20_000, 64, ParityChoice::EvensInFilter).unwrap();
        let report = cauchy_continuous_on_default(&f, &interval, ProbeFamily::AOnly, fs).unwrap();
        prop_assert_eq!(report.failures(PointKind::A).count(), 0);
        prop_assert!(report.probes.iter().all(|p| p.verdict.is_holds()));
    }
}

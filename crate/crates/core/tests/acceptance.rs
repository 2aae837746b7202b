//! Acceptance criteria, one test per criterion.
//!
//! The tests share a lock so each runtime limit is measured without
//! competition from the others.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use bcontinuum::analysis::{
    cauchy_continuous_at, cauchy_continuous_on_default, derivative_robust, functions,
    ContinuityProbe, Interval, ProbeFamily,
};
use bcontinuum::casebook::{emit_report, list_cases, run_case, Config, OutputFormat};
use bcontinuum::decay::decimal_ladder;
use bcontinuum::filter::{FilterSemantics, ParityChoice};
use bcontinuum::hyperreal::{classify, wallis_area_detailed, Hyperreal, Kind};
use bcontinuum::seq::{gen, Seq};
use bcontinuum::sumtheorem::{
    corpus, default_b_probes, default_fixed_points, diagonal_verdict, diagonal_window,
    hypothesis_1821, hypothesis_1853, integral_comparison_bound, uniform_cauchy_oracle,
};
use bcontinuum::value::{rational, Value};
use bcontinuum::{Truth, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn fs() -> FilterSemantics {
    FilterSemantics::default()
}

fn within(limit_ms: u64, t: Instant) -> bool {
    t.elapsed() < Duration::from_millis(limit_ms)
}

#[test]
fn ac1_parabola_derivative_is_two_along_every_generator() {
    let _g = serial();
    let t = Instant::now();
    let fs = fs();
    let gens = [
        Hyperreal::harmonic(fs),
        Hyperreal::new(gen::inverse_power(2), fs),
        Hyperreal::new(gen::alternating_harmonic(), fs),
    ];
    let d = derivative_robust(&functions::square(), &Value::int(1), &gens, 1e-6);
    let value = d.value.as_ref().map(Value::to_f64).unwrap_or(f64::NAN);
    assert!(d.uniform, "{:?}", d.witness);
    assert!((value - 2.0).abs() <= 1e-9, "{value}");
    assert!(within(1_000, t), "{:?}", t.elapsed());
}

#[test]
fn ac2_wallis_area_is_exactly_six() {
    let _g = serial();
    let t = Instant::now();
    let w = wallis_area_detailed(&rational(3, 1), &rational(4, 1), fs()).unwrap();
    assert_eq!(w.area, rational(6, 1));
    assert!(w.unit_product.is_holds(), "{:?}", w.unit_product);
    assert!(w.area_equality.is_holds());
    assert!(within(1_000, t), "{:?}", t.elapsed());
}

/// `∫₁² sin t / t dt` by composite Simpson quadrature.
fn sine_integral_oracle() -> f64 {
    let m = 20_000;
    let h = 1.0 / m as f64;
    let f = |t: f64| t.sin() / t;
    let inner: f64 = (1..m)
        .map(|j| if j % 2 == 1 { 4.0 } else { 2.0 } * f(1.0 + j as f64 * h))
        .sum();
    (f(1.0) + f(2.0) + inner) * h / 3.0
}

#[test]
fn ac3_abel_series_separates_pointwise_from_diagonal_convergence() {
    let _g = serial();
    let t = Instant::now();
    let fs = fs();
    let s = corpus::abel();
    let grid = default_fixed_points(s.interval());
    assert_eq!(grid.len(), 9);
    assert!(grid.iter().all(|&x| (x * 8.0).fract() == 0.0));
    let fixed = hypothesis_1821(&s, &grid, &fs).unwrap();
    assert!(fixed.iter().all(|(_, v)| v.is_holds()), "{fixed:?}");

    let probe = Hyperreal::harmonic(fs);
    let diag = diagonal_verdict(&s, &probe, 2).unwrap();
    assert!(diag.is_fails(), "{diag:?}");
    if let Witness::Recurring { bound, .. } = diag.witness {
        assert!(bound >= 0.5);
    }

    for k in [100u64, 101, 500, 1_000, 10_000, 100_000] {
        let b = integral_comparison_bound(&s, k).unwrap();
        assert!(b >= 0.5, "k={k}: {b}");
        assert!(diagonal_window(&s, &probe, k, 2).value >= b);
    }
    let oracle = sine_integral_oracle();
    assert!((oracle - 0.6593).abs() < 5e-5);
    let d = diagonal_window(&s, &probe, 10_000, 2).value;
    assert!((d - oracle).abs() <= 1e-3, "{d} vs {oracle}");

    let report = run_case("abel", &Config::default()).unwrap();
    assert!(report.bounds["abel_diagonal_bound"] >= 0.5);
    assert!(within(10_000, t), "{:?}", t.elapsed());
}

#[test]
fn ac4_sin_recip_fails_only_at_b_points() {
    let _g = serial();
    let t = Instant::now();
    let fs = fs();
    let f = functions::sin_recip();
    let x = Hyperreal::harmonic(fs);
    let v = cauchy_continuous_at(&f, &ContinuityProbe::b_point(x.clone(), x, "1/n")).unwrap();
    assert!(v.is_fails(), "{v:?}");
    let Witness::Recurring { indices, .. } = &v.witness else {
        panic!("{:?}", v.witness)
    };
    let confirmed = indices
        .iter()
        .filter(|&&n| n <= 100_000)
        .filter(|&&n| ((n as f64 / 2.0).sin() - (n as f64).sin()).abs() > 0.5)
        .count();
    assert!(confirmed >= 100, "{confirmed}");

    let report =
        cauchy_continuous_on_default(&f, &Interval::closed(0.1, 1.0), ProbeFamily::AOnly, fs)
            .unwrap();
    assert!(!report.probes.is_empty());
    assert!(
        report.probes.iter().all(|p| p.verdict.is_holds()),
        "{:?}",
        report.probes
    );
    assert!(within(5_000, t), "{:?}", t.elapsed());
}

#[test]
fn ac5_parity_oracle_decides_the_sign() {
    let _g = serial();
    let mut signs = vec![];
    let mut reports = vec![];
    for parity in [
        ParityChoice::EvensInFilter,
        ParityChoice::OddsInFilter,
        ParityChoice::None,
    ] {
        let cfg = Config {
            parity_choice: parity,
            ..Config::default()
        };
        let a = run_case("signed-infinitesimal", &cfg)
            .unwrap()
            .without_timing();
        let b = run_case("signed-infinitesimal", &cfg)
            .unwrap()
            .without_timing();
        let json = emit_report(&a, OutputFormat::Json);
        assert_eq!(json, emit_report(&b, OutputFormat::Json));
        let sign = a.verdict("sign").unwrap();
        signs.push(match (&sign.value, &sign.witness) {
            (Truth::Holds, Witness::Relation { relation, .. }) => relation.clone(),
            (Truth::Undetermined, _) => "undetermined".to_string(),
            other => panic!("{other:?}"),
        });
        reports.push(json);
    }
    assert_eq!(signs, [">", "<", "undetermined"]);
    assert!(reports[0] != reports[1] && reports[1] != reports[2] && reports[0] != reports[2]);
}

/// A random limited hyperreal `c + d·t` with `t` an infinitesimal generator.
fn random_limited(rng: &mut ChaCha8Rng, fs: FilterSemantics) -> Hyperreal {
    let c = rational(rng.gen_range(-30..=30), rng.gen_range(1..=9));
    let d = rational(rng.gen_range(-30..=30), rng.gen_range(1..=9));
    let base = Hyperreal::from_rational(c, fs);
    let scale = Hyperreal::from_rational(d, fs);
    let tail = match rng.gen_range(0..6) {
        0 => Hyperreal::harmonic(fs),
        1 => Hyperreal::new(gen::inverse_power(2), fs),
        2 => Hyperreal::new(gen::alternating_harmonic(), fs),
        3 => Hyperreal::new(gen::swapped_reciprocals(), fs),
        4 => Hyperreal::new(Seq::float(|n| (-(n as f64) / 500.0).exp()), fs),
        _ => Hyperreal::new(
            Seq::float(|n| (1.0 + 1.0 / n as f64).powf(n as f64) - std::f64::consts::E),
            fs,
        ),
    };
    &base + &(&scale * &tail)
}

#[test]
fn ac6_standard_part_is_additive_on_random_limited_hyperreals() {
    let _g = serial();
    let fs = fs();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let (mut checked, mut violations) = (0, vec![]);
    for _ in 0..200 {
        let a = random_limited(&mut rng, fs);
        let b = if rng.gen_bool(0.5) {
            random_limited(&mut rng, fs)
        } else {
            &random_limited(&mut rng, fs) * &random_limited(&mut rng, fs)
        };
        let (Ok(sa), Ok(sb), Ok(sab)) = (a.st(), b.st(), (&a + &b).st()) else {
            continue;
        };
        checked += 1;
        let gap = (sab.to_f64() - (sa.to_f64() + sb.to_f64())).abs();
        if gap > 2e-9 {
            violations.push(gap);
        }
    }
    assert!(violations.is_empty(), "{violations:?}");
    assert!(checked >= 150, "only {checked} pairs converged");
}

#[test]
fn ac7_diagonal_probes_agree_with_the_uniform_oracle() {
    let _g = serial();
    let fs = fs();
    let corpus = corpus::all();
    assert!(corpus.len() >= 6);
    let mut mismatches = vec![];
    for s in &corpus {
        let probes = default_b_probes(s.interval(), fs).unwrap();
        let rep = hypothesis_1853(s, &default_fixed_points(s.interval()), &probes, &fs).unwrap();
        let uniform = uniform_cauchy_oracle(s, 101, &decimal_ladder(4), &fs).unwrap();
        if rep.aggregate != uniform.value || rep.aggregate == Truth::Undetermined {
            mismatches.push((s.label().to_string(), rep.aggregate, uniform.value));
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn ac8_swapped_reciprocals_are_infinitesimal() {
    let _g = serial();
    let t = Instant::now();
    let a = Hyperreal::new(gen::swapped_reciprocals(), fs());
    let head: Vec<Value> = (1..=6).map(|n| a.term(n)).collect();
    let want: Vec<Value> = [4, 3, 6, 5, 8, 7]
        .iter()
        .map(|&d| Value::ratio(1, d))
        .collect();
    assert_eq!(head, want);
    assert!((1..1000).any(|n| a.term(n + 1).to_f64() > a.term(n).to_f64()));
    assert_eq!(classify(&a).kind, Kind::Infinitesimal);
    assert!(within(1_000, t), "{:?}", t.elapsed());
}

#[test]
fn ac9_reports_are_reproducible_byte_for_byte() {
    let _g = serial();
    let cfg = Config::default();
    for case in list_cases() {
        let a = run_case(case.name, &cfg).unwrap();
        let b = run_case(case.name, &cfg).unwrap();
        assert_eq!(
            emit_report(&a.without_timing(), OutputFormat::Json),
            emit_report(&b.without_timing(), OutputFormat::Json),
            "{}",
            case.name
        );
    }
}

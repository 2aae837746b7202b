//! Series of functions: partial sums, the pointwise and the "always"
//! convergence hypotheses, the integral-comparison bound for the sine series,
//! a sup-norm uniform-convergence oracle, and continuity of the sum.
//!
//! Indexing starts at 1: `s_n(x) = u_1(x) + … + u_n(x)`. The Cauchy window at
//! scale `n` is `|s_{f·n}(x) − s_n(x)|` with `f = 2` unless stated otherwise.
//! Sums are Neumaier-compensated.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::analysis::Interval;
use crate::decay::{decimal_ladder, tends_to_zero};
use crate::error::{Error, Result};
use crate::expr::{self, pow_i};
use crate::filter::{eventually, tail_start, FilterSemantics, Lattice, Plan};
use crate::hyperreal::{Hyperreal, CLASSIFY_DEPTH};
use crate::seq::{gen, Seq};
use crate::value::{rational, Value};
use crate::verdict::{Truth, Verdict3, Witness};

pub const DEFAULT_WINDOW_FACTOR: u64 = 2;
/// Depth of the `10^-k` null ladder used by the convergence hypotheses.
pub const NULL_DEPTH: u32 = 8;
/// Pointwise window size below which a truncation counts as certified.
pub const TRUNCATION_TOLERANCE: f64 = 1e-3;

/// `∫₁² sin t / t dt = Si(2) − Si(1)`.
pub const SINE_INTEGRAL_1_2: f64 = 0.659_329_906_435_512;

type TermFn = Arc<dyn Fn(u64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Series {
    term: TermFn,
    interval: Interval,
    label: String,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series")
            .field("label", &self.label)
            .field("interval", &self.interval)
            .finish()
    }
}

impl Series {
    pub fn new<F>(label: impl Into<String>, interval: Interval, term: F) -> Series
    where
        F: Fn(u64, f64) -> f64 + Send + Sync + 'static,
    {
        Series {
            term: Arc::new(term),
            interval,
            label: label.into(),
        }
    }

    /// A series whose `i`-th term is the expression in `i` and `x`.
    pub fn from_expr(src: &str, interval: Interval) -> Result<Series> {
        let e = expr::parse(src)?;
        Ok(Series::new(src.trim(), interval, move |i, x| {
            e.eval(i as f64, x)
        }))
    }

    pub fn term(&self, i: u64, x: f64) -> f64 {
        (self.term)(i, x)
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct Running {
    sum: f64,
    comp: f64,
}

impl Running {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `s_0(x), s_1(x), …, s_len(x)`.
fn prefix_sums(s: &Series, x: f64, len: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len as usize + 1);
    let mut acc = Running::default();
    out.push(0.0);
    for i in 1..=len {
        acc.add(s.term(i, x));
        out.push(acc.value());
    }
    out
}

/// `(s_n(x), s_m(x))` for `n <= m`.
fn two_partial_sums(s: &Series, n: u64, m: u64, x: f64) -> (f64, f64) {
    let mut acc = Running::default();
    let mut at_n = 0.0;
    for i in 1..=m {
        acc.add(s.term(i, x));
        if i == n {
            at_n = acc.value();
        }
    }
    (at_n, acc.value())
}

/// `s_n(x) = Σ_{i=1}^{n} u_i(x)`.
pub fn partial_sum(s: &Series, n: u64, x: f64) -> f64 {
    two_partial_sums(s, n, n, x).1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderWindow {
    pub n: u64,
    pub n_prime: u64,
    pub x: f64,
    /// `|s_{n'}(x) − s_n(x)|`
    pub value: f64,
}

pub fn remainder_window(s: &Series, n: u64, n_prime: u64, x: f64) -> Result<RemainderWindow> {
    if n == 0 || n_prime <= n {
        return Err(Error::InvalidArgument(format!(
            "window needs 1 <= n < n' (got {n}, {n_prime})"
        )));
    }
    let (a, b) = two_partial_sums(s, n, n_prime, x);
    Ok(RemainderWindow {
        n,
        n_prime,
        x,
        value: (b - a).abs(),
    })
}

/// Diagonal window at scale `k`: `|Σ_{i=k+1}^{f·k} u_i(x_k)|`.
pub fn diagonal_window(s: &Series, point: &Hyperreal, k: u64, factor: u64) -> RemainderWindow {
    let x = point.term(k).to_f64();
    let mut acc = Running::default();
    for i in k + 1..=factor * k {
        acc.add(s.term(i, x));
    }
    RemainderWindow {
        n: k,
        n_prime: factor * k,
        x,
        value: acc.value().abs(),
    }
}

fn null_ladder() -> Vec<f64> {
    decimal_ladder(NULL_DEPTH)
}

fn check_factor(factor: u64) -> Result<()> {
    if factor < 2 {
        return Err(Error::InvalidArgument(format!(
            "window factor must be at least 2 (got {factor})"
        )));
    }
    Ok(())
}

fn pointwise_verdict(s: &Series, x: f64, factor: u64, fs: &FilterSemantics) -> Result<Verdict3> {
    if !s.interval.contains(x) {
        return Err(Error::DomainViolation(format!(
            "{x} is outside {}",
            s.interval
        )));
    }
    let h = fs.horizon();
    let p = prefix_sums(s, x, factor * h);
    let mag = |n: u64| (p[(factor * n) as usize] - p[n as usize]).abs();
    Ok(tends_to_zero(&mag, &null_ladder(), fs))
}

/// Convergence at each given real: the Cauchy windows at `x` form a null sequence.
pub fn hypothesis_1821(
    s: &Series,
    fixed_points: &[f64],
    fs: &FilterSemantics,
) -> Result<Vec<(f64, Verdict3)>> {
    hypothesis_1821_with(s, fixed_points, DEFAULT_WINDOW_FACTOR, fs)
}

pub fn hypothesis_1821_with(
    s: &Series,
    fixed_points: &[f64],
    factor: u64,
    fs: &FilterSemantics,
) -> Result<Vec<(f64, Verdict3)>> {
    check_factor(factor)?;
    fixed_points
        .par_iter()
        .map(|&x| pointwise_verdict(s, x, factor, fs).map(|v| (x, v)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report1853 {
    pub fixed: Vec<(f64, Verdict3)>,
    /// Sorted by probe label.
    pub probes: Vec<(String, Verdict3)>,
    pub aggregate: Truth,
}

impl Report1853 {
    pub fn probe(&self, label: &str) -> Option<&Verdict3> {
        self.probes.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }
}

/// Is the diagonal window sequence `⟨|s_{2k}(x_k) − s_k(x_k)|⟩` infinitesimal?
/// A constant probe is the pointwise test at its value.
pub fn diagonal_verdict(s: &Series, probe: &Hyperreal, factor: u64) -> Result<Verdict3> {
    check_factor(factor)?;
    let fs = *probe.fs();
    if let Some(c) = probe.rep().constant_value() {
        return pointwise_verdict(s, c.to_f64(), factor, &fs);
    }
    let inside = eventually(|k| s.interval.contains(probe.term(k).to_f64()), &fs);
    if !inside.is_holds() {
        return Err(Error::DomainViolation(format!(
            "{} is not certified to stay in {}",
            probe.label(),
            s.interval
        )));
    }
    let (series, point) = (s.clone(), probe.clone());
    let d = Seq::float(move |k| diagonal_window(&series, &point, k, factor).value);
    Ok(tends_to_zero(&|k| d.eval_f64(k), &null_ladder(), &fs))
}

/// The "always" hypothesis: windows vanish at every fixed point and along
/// every probe, each probe evaluated on the diagonal.
pub fn hypothesis_1853(
    s: &Series,
    fixed_points: &[f64],
    probes: &[Hyperreal],
    fs: &FilterSemantics,
) -> Result<Report1853> {
    hypothesis_1853_with(s, fixed_points, probes, DEFAULT_WINDOW_FACTOR, fs)
}

pub fn hypothesis_1853_with(
    s: &Series,
    fixed_points: &[f64],
    probes: &[Hyperreal],
    factor: u64,
    fs: &FilterSemantics,
) -> Result<Report1853> {
    let fixed = hypothesis_1821_with(s, fixed_points, factor, fs)?;
    let mut by_probe: Vec<(String, Verdict3)> = probes
        .par_iter()
        .map(|p| diagonal_verdict(s, p, factor).map(|v| (p.label(), v)))
        .collect::<Result<_>>()?;
    by_probe.sort_by(|a, b| a.0.cmp(&b.0));
    let aggregate = Truth::all(
        fixed
            .iter()
            .map(|(_, v)| v.value)
            .chain(by_probe.iter().map(|(_, v)| v.value)),
    );
    Ok(Report1853 {
        fixed,
        probes: by_probe,
        aggregate,
    })
}

/// Nine equally spaced points covering the interval, endpoints included when closed.
pub fn default_fixed_points(interval: &Interval) -> Vec<f64> {
    (0..=8)
        .map(|j| interval.lo + interval.width() * j as f64 / 8.0)
        .filter(|&x| interval.contains(x))
        .collect()
}

/// `z + c/n` for `c ∈ {1, 1/2, 2}`, `z + 1/n²`, `a + 1/n` and `b − 1/n`, where
/// `z` is `0` when the interval straddles it and the left end `a` otherwise.
pub fn default_b_probes(interval: &Interval, fs: FilterSemantics) -> Result<Vec<Hyperreal>> {
    if !interval.is_bounded() {
        return Err(Error::InvalidArgument(format!(
            "probes need a bounded interval, got {interval}"
        )));
    }
    let exact = |x: f64| Value::from_f64_exact(x).unwrap_or(Value::Float(x));
    let (a, b) = (exact(interval.lo), exact(interval.hi));
    let z = if interval.lo <= 0.0 && 0.0 < interval.hi {
        Value::int(0)
    } else {
        a.clone()
    };
    let around = |base: &Value, seq: Seq, tail: &str| -> Hyperreal {
        let label = if base.is_zero() {
            tail.trim_start_matches('+').to_string()
        } else {
            format!("{base}{tail}")
        };
        (&Hyperreal::from_real(base.clone(), fs) + &Hyperreal::new(seq, fs)).with_label(label)
    };
    let mut out = vec![
        around(&z, gen::harmonic(), "+1/n"),
        around(&z, gen::reciprocal(rational(1, 2)), "+1/(2n)"),
        around(&z, gen::reciprocal(rational(2, 1)), "+2/n"),
        around(&z, gen::inverse_power(2), "+1/n^2"),
    ];
    if a != z {
        out.push(around(&a, gen::harmonic(), "+1/n"));
    }
    out.push(around(&b, gen::reciprocal(rational(-1, 1)), "-1/n"));
    Ok(out)
}

/// Lower bound for the diagonal window of the sine series at `x = 1/k`.
///
/// `d_k = Σ_{i=k+1}^{2k} sin(i/k)/i` is the right Riemann sum of `sin t / t`
/// on `[1, 2]` with step `1/k`. The integrand decreases there, so the sum is
/// at least the integral minus `(f(1) − f(2))/k`.
pub fn integral_comparison_bound(s: &Series, k: u64) -> Result<f64> {
    if s.label != corpus::ABEL {
        return Err(Error::UnsupportedSeries(s.label.clone()));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 2 (got {k})"
        )));
    }
    let drop = 1f64.sin() - 2f64.sin() / 2.0;
    let integral_floor = SINE_INTEGRAL_1_2 - 1e-12;
    Ok((integral_floor - drop / k as f64).max(0.0))
}

/// Sup-norm windows over the sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformTable {
    pub points: Vec<f64>,
    /// `sup[n]` for `n = 1..=horizon` (index 0 unused).
    pub sup: Vec<f64>,
    /// Grid point attaining `sup[n]`.
    pub argmax: Vec<f64>,
}

/// `grid_density` equally spaced points, plus `max(4, grid_density/10)` points
/// per decade approaching each endpoint geometrically, down to a distance of
/// `width/(10·horizon)`.
pub fn uniform_grid(interval: &Interval, grid_density: u64, horizon: u64) -> Vec<f64> {
    let (a, b, w) = (interval.lo, interval.hi, interval.width());
    let mut pts: Vec<f64> = (0..grid_density)
        .map(|j| a + w * j as f64 / (grid_density - 1) as f64)
        .collect();
    let per_decade = (grid_density / 10).max(4);
    let decades = (horizon as f64).log10().ceil() as u64 + 1;
    for j in 1..=per_decade * decades {
        let d = w * 10f64.powf(-(j as f64) / per_decade as f64);
        pts.push(a + d);
        pts.push(b - d);
    }
    pts.retain(|&x| interval.contains(x));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

pub fn uniform_table(
    s: &Series,
    grid_density: u64,
    factor: u64,
    horizon: u64,
) -> Result<UniformTable> {
    if grid_density < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid_density must be at least 2 (got {grid_density})"
        )));
    }
    if !s.interval.is_bounded() {
        return Err(Error::InvalidArgument(format!(
            "uniform oracle needs a bounded interval, got {}",
            s.interval
        )));
    }
    check_factor(factor)?;
    let points = uniform_grid(&s.interval, grid_density, horizon);
    let h = horizon as usize;
    let blank = || (vec![f64::NEG_INFINITY; h + 1], vec![usize::MAX; h + 1]);
    let merge = |mut acc: (Vec<f64>, Vec<usize>), other: (Vec<f64>, Vec<usize>)| {
        for n in 1..=h {
            let better = other.0[n] > acc.0[n] || (other.0[n] == acc.0[n] && other.1[n] < acc.1[n]);
            if better {
                acc.0[n] = other.0[n];
                acc.1[n] = other.1[n];
            }
        }
        acc
    };
    let (sup, arg) = points
        .par_iter()
        .enumerate()
        .fold(blank, |mut acc, (j, &x)| {
            let p = prefix_sums(s, x, factor * horizon);
            for n in 1..=h {
                let v = (p[factor as usize * n] - p[n]).abs();
                let v = if v.is_nan() { f64::INFINITY } else { v };
                if v > acc.0[n] || (v == acc.0[n] && j < acc.1[n]) {
                    acc.0[n] = v;
                    acc.1[n] = j;
                }
            }
            acc
        })
        .reduce(blank, merge);
    let argmax = arg
        .iter()
        .map(|&j| points.get(j).copied().unwrap_or(f64::NAN))
        .collect();
    Ok(UniformTable {
        points,
        sup,
        argmax,
    })
}

/// Uniform Cauchy criterion on a refined grid: for each `eps` the sup-norm
/// window stays below `eps` on a tail of at least `tail_window` consecutive
/// scales ending at the horizon. Fails when `eps` is reached in every block
/// of `tail_window` scales across the later half, witnessing the last such
/// scale and its grid point.
pub fn uniform_cauchy_oracle(
    s: &Series,
    grid_density: u64,
    eps_ladder: &[f64],
    fs: &FilterSemantics,
) -> Result<Verdict3> {
    let t = uniform_table(s, grid_density, DEFAULT_WINDOW_FACTOR, fs.horizon())?;
    Ok(uniform_verdict(&t, eps_ladder, fs))
}

pub fn uniform_verdict(t: &UniformTable, eps_ladder: &[f64], fs: &FilterSemantics) -> Verdict3 {
    let h = fs.horizon();
    let w = fs.tail_window();
    let mut from = 1u64;
    for &eps in eps_ladder {
        let last_bad = (1..=h).rev().find(|&n| t.sup[n as usize] >= eps);
        let start = last_bad.map_or(1, |n| n + 1);
        if start + w - 1 <= h {
            from = from.max(start);
            continue;
        }
        let half = h / 2 + 1;
        let recurs = (half..=h)
            .step_by(w as usize)
            .all(|lo| (lo..=(lo + w - 1).min(h)).any(|n| t.sup[n as usize] >= eps));
        if recurs {
            let n = last_bad.expect("recurrence implies a violation");
            return Verdict3::fails(
                Witness::GridPoint {
                    eps,
                    point: t.argmax[n as usize],
                    index: n,
                },
                h,
            );
        }
        return Verdict3::undetermined(h);
    }
    Verdict3::holds(Witness::Index(from), h)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumContinuity {
    pub x0: f64,
    pub verdict: Verdict3,
    /// Pointwise-certified truncation floor `N₀`.
    pub truncation_floor: u64,
    /// At index `k` the sum is approximated by `s_{N_k}` with this rule.
    pub truncation_rule: String,
    pub probes: Vec<(String, Verdict3)>,
}

/// Continuity of the sum at `x0`, seen through truncations `s_{N_k}` with
/// `N_k = max(N₀, 2k)` growing along the index. `N₀` is where the pointwise
/// windows at `x0` drop below [`TRUNCATION_TOLERANCE`] for good. Probes move
/// `x0` by `1/k`, `−1/k` and `1/k²`; at an endpoint only the probes that
/// stay inside the interval are run.
pub fn sum_continuity_check(s: &Series, x0: f64, fs: &FilterSemantics) -> Result<SumContinuity> {
    if !s.interval.contains(x0) {
        return Err(Error::DomainViolation(format!(
            "{x0} is outside {}",
            s.interval
        )));
    }
    let pointwise = pointwise_verdict(s, x0, DEFAULT_WINDOW_FACTOR, fs)?;
    if !pointwise.is_holds() {
        return Err(Error::TailNotCertified { x: x0 });
    }
    let h = fs.horizon();
    let p = prefix_sums(s, x0, DEFAULT_WINDOW_FACTOR * h);
    let below = |n: u64| (p[2 * n as usize] - p[n as usize]).abs() < TRUNCATION_TOLERANCE;
    let n0 = tail_start(&below, &Plan::new(Lattice::All, fs))
        .ok_or(Error::TailNotCertified { x: x0 })?;
    let trunc = move |k: u64| n0.max(2 * k);

    type Step = (&'static str, fn(u64) -> f64);
    let steps: [Step; 3] = [
        ("+1/n", |k| 1.0 / k as f64),
        ("-1/n", |k| -1.0 / k as f64),
        ("+1/n^2", |k| 1.0 / (k as f64 * k as f64)),
    ];
    let mut probes = Vec::new();
    for (label, step) in steps {
        if !eventually(|k| s.interval.contains(x0 + step(k)), fs).is_holds() {
            continue;
        }
        let (series, base) = (s.clone(), p.clone());
        let base_at = move |m: u64| -> f64 {
            if (m as usize) < base.len() {
                base[m as usize]
            } else {
                partial_sum(&series, m, x0)
            }
        };
        let series = s.clone();
        let diff = Seq::float(move |k| {
            let m = trunc(k);
            partial_sum(&series, m, x0 + step(k)) - base_at(m)
        });
        let v = tends_to_zero(
            &|k| diff.eval_f64(k).abs(),
            &decimal_ladder(CLASSIFY_DEPTH),
            fs,
        );
        probes.push((format!("x0{label}"), v));
    }
    if probes.is_empty() {
        return Err(Error::DomainViolation(format!(
            "no probe around {x0} stays in {}",
            s.interval
        )));
    }
    let value = Truth::all(probes.iter().map(|(_, v)| v.value));
    let verdict = match value {
        Truth::Holds => Verdict3::holds(Witness::Index(n0), h),
        _ => probes
            .iter()
            .find(|(_, v)| v.value == value)
            .map(|(_, v)| v.clone())
            .expect("some probe carries the aggregate value"),
    };
    Ok(SumContinuity {
        x0,
        verdict,
        truncation_floor: n0,
        truncation_rule: format!("N_k = max({n0}, 2k)"),
        probes,
    })
}

/// Named series.
pub mod corpus {
    use super::*;

    pub const ABEL: &str = "abel";
    pub const GEOMETRIC: &str = "geometric";
    pub const ZERO: &str = "zero";
    pub const POWER_SQUARE: &str = "power-square";
    pub const SINE_SQUARE: &str = "sine-square";
    pub const POWER_GAP: &str = "power-gap";

    /// `Σ sin(ix)/i` on `[0, 1]`.
    pub fn abel() -> Series {
        Series::new(ABEL, Interval::closed(0.0, 1.0), |i, x| {
            (i as f64 * x).sin() / i as f64
        })
    }

    /// `Σ xⁱ` on `[−1/2, 1/2]`.
    pub fn geometric() -> Series {
        Series::new(GEOMETRIC, Interval::closed(-0.5, 0.5), |i, x| pow_i(x, i))
    }

    /// `Σ 0` on `[0, 1]`.
    pub fn zero() -> Series {
        Series::new(ZERO, Interval::closed(0.0, 1.0), |_, _| 0.0)
    }

    /// `Σ xⁱ/i²` on `[−1, 1]`.
    pub fn power_square() -> Series {
        Series::new(POWER_SQUARE, Interval::closed(-1.0, 1.0), |i, x| {
            pow_i(x, i) / (i as f64 * i as f64)
        })
    }

    /// `Σ sin(ix)/i²` on `[0, 1]`.
    pub fn sine_square() -> Series {
        Series::new(SINE_SQUARE, Interval::closed(0.0, 1.0), |i, x| {
            (i as f64 * x).sin() / (i as f64 * i as f64)
        })
    }

    /// `Σ xⁱ(1 − x)` on `[0, 1]`: converges everywhere to a sum that jumps at 1.
    pub fn power_gap() -> Series {
        Series::new(POWER_GAP, Interval::closed(0.0, 1.0), |i, x| {
            pow_i(x, i) * (1.0 - x)
        })
    }

    pub fn all() -> Vec<Series> {
        vec![
            abel(),
            geometric(),
            zero(),
            power_square(),
            sine_square(),
            power_gap(),
        ]
    }

    pub fn by_label(label: &str) -> Option<Series> {
        all().into_iter().find(|s| s.label == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::ParityChoice;

    fn fs() -> FilterSemantics {
        FilterSemantics::new(100_000, 64, ParityChoice::EvensInFilter).unwrap()
    }

    fn small() -> FilterSemantics {
        FilterSemantics::new(10_000, 64, ParityChoice::EvensInFilter).unwrap()
    }

    #[test]
    fn partial_sums() {
        assert_eq!(partial_sum(&corpus::geometric(), 3, 0.5), 0.875);
        let abel = corpus::abel();
        assert!((partial_sum(&abel, 1, std::f64::consts::FRAC_PI_2) - 1.0).abs() < 1e-15);
        let direct: f64 = (1..=100).map(|i| (i as f64).sin() / i as f64).sum();
        assert!((partial_sum(&abel, 100, 1.0) - direct).abs() < 1e-12);
    }

    #[test]
    fn windows_need_order() {
        let g = corpus::geometric();
        assert!(remainder_window(&g, 3, 3, 0.5).is_err());
        let w = remainder_window(&g, 1, 2, 0.5).unwrap();
        assert_eq!(w.value, 0.25);
    }

    #[test]
    fn pointwise_hypothesis() {
        let f = fs();
        let g = hypothesis_1821(&corpus::geometric(), &[0.5], &f).unwrap();
        assert!(g[0].1.is_holds());
        let a = hypothesis_1821(&corpus::abel(), &[1.0, 0.0], &f).unwrap();
        assert!(a.iter().all(|(_, v)| v.is_holds()), "{a:?}");
        assert!(hypothesis_1821(&corpus::geometric(), &[0.9], &f).is_err());
    }

    #[test]
    fn integral_bound() {
        let abel = corpus::abel();
        let b100 = integral_comparison_bound(&abel, 100).unwrap();
        assert!((0.5..=0.66).contains(&b100), "{b100}");
        let b = integral_comparison_bound(&abel, 10_000).unwrap();
        assert!((b - 0.6593).abs() < 1e-3);
        assert!(integral_comparison_bound(&abel, 2).unwrap() >= 0.0);
        assert!(integral_comparison_bound(&abel, 1).is_err());
        assert!(matches!(
            integral_comparison_bound(&corpus::geometric(), 100),
            Err(Error::UnsupportedSeries(_))
        ));
    }

    #[test]
    fn abel_diagonal_fails() {
        let f = small();
        let probe = Hyperreal::harmonic(f);
        let v = diagonal_verdict(&corpus::abel(), &probe, 2).unwrap();
        assert!(v.is_fails());
        assert!(matches!(v.witness, Witness::Recurring { bound, .. } if bound == 0.5));
    }

    #[test]
    fn geometric_diagonal_holds() {
        let f = small();
        let v = diagonal_verdict(&corpus::geometric(), &Hyperreal::harmonic(f), 2).unwrap();
        assert!(v.is_holds());
    }

    #[test]
    fn constant_probe_matches_pointwise() {
        let f = small();
        let abel = corpus::abel();
        let x = 0.25;
        let pointwise = hypothesis_1821(&abel, &[x], &f).unwrap();
        let constant = Hyperreal::from_real(Value::Float(x), f);
        let diag = diagonal_verdict(&abel, &constant, 2).unwrap();
        assert_eq!(pointwise[0].1, diag);
    }

    #[test]
    fn default_probes_are_inside() {
        let f = small();
        for s in corpus::all() {
            for p in default_b_probes(s.interval(), f).unwrap() {
                assert!(
                    eventually(|k| s.interval().contains(p.term(k).to_f64()), &f).is_holds(),
                    "{}",
                    p.label()
                );
            }
        }
        let labels: Vec<String> = default_b_probes(&Interval::closed(-1.0, 1.0), f)
            .unwrap()
            .iter()
            .map(|p| p.label())
            .collect();
        assert_eq!(labels, ["1/n", "1/(2n)", "2/n", "1/n^2", "-1+1/n", "1-1/n"]);
    }

    #[test]
    fn uniform_oracle_verdicts() {
        let f = small();
        let ladder = decimal_ladder(4);
        assert!(
            uniform_cauchy_oracle(&corpus::geometric(), 101, &ladder, &f)
                .unwrap()
                .is_holds()
        );
        assert!(uniform_cauchy_oracle(&corpus::zero(), 101, &ladder, &f)
            .unwrap()
            .is_holds());
        let v = uniform_cauchy_oracle(&corpus::abel(), 101, &ladder, &f).unwrap();
        assert!(v.is_fails());
        match v.witness {
            Witness::GridPoint { point, index, .. } => {
                assert!(point < 10.0 / index as f64, "{point} {index}")
            }
            w => panic!("{w:?}"),
        }
        assert!(uniform_cauchy_oracle(&corpus::abel(), 1, &ladder, &f).is_err());
    }

    #[test]
    fn sum_continuity() {
        let f = small();
        let g = sum_continuity_check(&corpus::geometric(), 0.0, &f).unwrap();
        assert!(g.verdict.is_holds(), "{g:?}");
        let a = sum_continuity_check(&corpus::abel(), 0.0, &f).unwrap();
        assert!(a.verdict.is_fails(), "{a:?}");
        assert_eq!(a.probes.len(), 2);
        let wide = Series::new("abel-wide", Interval::closed(-1.0, 1.0), |i, x| {
            (i as f64 * x).sin() / i as f64
        });
        let a = sum_continuity_check(&wide, 0.0, &f).unwrap();
        assert!(a.verdict.is_fails(), "{a:?}");
        let s = sum_continuity_check(&corpus::sine_square(), 0.5, &f).unwrap();
        assert!(s.verdict.is_holds(), "{s:?}");
    }

    #[test]
    fn expression_series() {
        let s = Series::from_expr("x^i", Interval::closed(-0.5, 0.5)).unwrap();
        assert_eq!(partial_sum(&s, 3, 0.5), 0.875);
        assert!(Series::from_expr("x^", Interval::closed(0.0, 1.0)).is_err());
    }
}

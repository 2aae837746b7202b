//! Derivatives as standard parts of difference quotients, and continuity
//! probes at standard points (A-points) and sequence-generated points (B-points).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decay::{decimal_ladder, tends_to_zero};
use crate::error::{Error, Result};
use crate::filter::{eventually, FilterSemantics};
use crate::hyperreal::{classify, st, Hyperreal, Kind, CLASSIFY_DEPTH};
use crate::seq::{gen, Seq};
use crate::value::{integer, rational, Value, ValueKind};
use crate::verdict::{Truth, Verdict3, Witness};

/// Default agreement tolerance for derivatives taken along different infinitesimals.
pub const DEFAULT_DERIVATIVE_TOLERANCE: f64 = 1e-6;

/// A real interval; infinite ends are always open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Interval {
        Interval {
            lo,
            hi,
            lo_closed: lo.is_finite(),
            hi_closed: hi.is_finite(),
        }
    }

    pub fn open(lo: f64, hi: f64) -> Interval {
        Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// `(lo, hi]`
    pub fn left_open(lo: f64, hi: f64) -> Interval {
        Interval {
            lo_closed: false,
            ..Interval::closed(lo, hi)
        }
    }

    pub fn real_line() -> Interval {
        Interval::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }

    pub fn is_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Accepts `a,b` (closed) or bracketed forms such as `(0,1]`.
impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Interval> {
        let s = s.trim();
        let bad = || {
            Error::InvalidArgument(format!(
                "interval must look like `a,b` or `(a,b]` (got `{s}`)"
            ))
        };
        let (lo_closed, rest) = match s.chars().next() {
            Some('[') => (Some(true), &s[1..]),
            Some('(') => (Some(false), &s[1..]),
            _ => (None, s),
        };
        let (hi_closed, body) = match rest.chars().last() {
            Some(']') => (Some(true), &rest[..rest.len() - 1]),
            Some(')') => (Some(false), &rest[..rest.len() - 1]),
            _ => (None, rest),
        };
        let (a, b) = body.split_once(',').ok_or_else(bad)?;
        let parse = |t: &str| -> Result<f64> {
            match t.trim() {
                "-inf" => Ok(f64::NEG_INFINITY),
                "inf" | "+inf" => Ok(f64::INFINITY),
                t => t.parse::<f64>().map_err(|_| bad()),
            }
        };
        let (lo, hi) = (parse(a)?, parse(b)?);
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidArgument(format!("empty interval `{s}`")));
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed: lo_closed.unwrap_or(true) && lo.is_finite(),
            hi_closed: hi_closed.unwrap_or(true) && hi.is_finite(),
        })
    }
}

/// Where a function is defined: an interval minus finitely many points.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub interval: Interval,
    pub excluded: Vec<f64>,
}

impl Domain {
    pub fn interval(interval: Interval) -> Domain {
        Domain {
            interval,
            excluded: vec![],
        }
    }

    pub fn real_line() -> Domain {
        Domain::interval(Interval::real_line())
    }

    pub fn excluding(mut self, x: f64) -> Domain {
        self.excluded.push(x);
        self
    }

    pub fn contains(&self, x: f64) -> bool {
        self.interval.contains(x) && !self.excluded.contains(&x)
    }

    pub fn is_interior(&self, x: f64) -> bool {
        self.interval.is_interior(x) && !self.excluded.contains(&x)
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type ExactFn = Arc<dyn Fn(&BigRational) -> BigRational + Send + Sync>;

/// A real function on a domain, lifted to hyperreals termwise.
#[derive(Clone)]
pub struct HFunction {
    name: String,
    real: RealFn,
    exact: Option<ExactFn>,
    domain: Domain,
}

impl fmt::Debug for HFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HFunction")
            .field("name", &self.name)
            .field("exact", &self.exact.is_some())
            .field("domain", &self.domain)
            .finish()
    }
}

impl HFunction {
    pub fn new<F>(name: impl Into<String>, f: F, domain: Domain) -> HFunction
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        HFunction {
            name: name.into(),
            real: Arc::new(f),
            exact: None,
            domain,
        }
    }

    /// Rational-to-rational form, used whenever the argument is exact.
    pub fn with_exact<G>(mut self, g: G) -> HFunction
    where
        G: Fn(&BigRational) -> BigRational + Send + Sync + 'static,
    {
        self.exact = Some(Arc::new(g));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.real)(x)
    }

    pub fn apply(&self, x: &Value) -> Value {
        match (x, &self.exact) {
            (Value::Exact(q), Some(g)) => Value::Exact(g(q)),
            _ => Value::Float((self.real)(x.to_f64())),
        }
    }

    fn output_kind(&self, input: ValueKind) -> ValueKind {
        if self.exact.is_some() {
            input
        } else {
            ValueKind::Float
        }
    }

    /// Is the representative eventually inside the domain?
    pub fn certify_domain(&self, x: &Hyperreal) -> Result<()> {
        let v = eventually(|n| self.domain.contains(x.term(n).to_f64()), x.fs());
        if v.is_holds() {
            Ok(())
        } else {
            Err(Error::DomainViolation(format!(
                "{} is not certified to stay in the domain of {} ({})",
                x.label(),
                self.name,
                v.value
            )))
        }
    }

    /// Termwise image. Terms outside the domain become the placeholder `0`.
    pub fn lift(&self, x: &Hyperreal) -> Result<Hyperreal> {
        self.certify_domain(x)?;
        Ok(self.lift_unchecked(x))
    }

    fn lift_unchecked(&self, x: &Hyperreal) -> Hyperreal {
        let f = self.clone();
        let kind = self.output_kind(x.kind());
        let rep = x.rep().map(kind, move |_, v| {
            if f.domain.contains(v.to_f64()) {
                f.apply(&v)
            } else {
                Value::zero(kind)
            }
        });
        Hyperreal::new(rep, *x.fs())
    }

    /// `a·self + b·other` on the intersection of the domains.
    pub fn linear_combination(
        a: &BigRational,
        f: &HFunction,
        b: &BigRational,
        g: &HFunction,
    ) -> HFunction {
        let (fa, fb) = (a.clone(), b.clone());
        let (af, bf) = (ratio_f64(a), ratio_f64(b));
        let (f1, g1) = (f.real.clone(), g.real.clone());
        let domain = Domain {
            interval: intersect(&f.domain.interval, &g.domain.interval),
            excluded: f
                .domain
                .excluded
                .iter()
                .chain(&g.domain.excluded)
                .copied()
                .collect(),
        };
        let mut h = HFunction::new(
            format!("{a}*{}+{b}*{}", f.name, g.name),
            move |x| af * f1(x) + bf * g1(x),
            domain,
        );
        if let (Some(fe), Some(ge)) = (f.exact.clone(), g.exact.clone()) {
            h = h.with_exact(move |q| &fa * fe(q) + &fb * ge(q));
        }
        h
    }
}

fn ratio_f64(q: &BigRational) -> f64 {
    Value::Exact(q.clone()).to_f64()
}

fn intersect(a: &Interval, b: &Interval) -> Interval {
    let (lo, lo_closed) = if a.lo > b.lo {
        (a.lo, a.lo_closed)
    } else if b.lo > a.lo {
        (b.lo, b.lo_closed)
    } else {
        (a.lo, a.lo_closed && b.lo_closed)
    };
    let (hi, hi_closed) = if a.hi < b.hi {
        (a.hi, a.hi_closed)
    } else if b.hi < a.hi {
        (b.hi, b.hi_closed)
    } else {
        (a.hi, a.hi_closed && b.hi_closed)
    };
    Interval {
        lo,
        hi,
        lo_closed,
        hi_closed,
    }
}

/// Built-in functions.
pub mod functions {
    use super::*;

    pub fn identity() -> HFunction {
        HFunction::new("x", |x| x, Domain::real_line()).with_exact(|q| q.clone())
    }

    pub fn constant(c: BigRational) -> HFunction {
        let cf = ratio_f64(&c);
        HFunction::new(format!("{c}"), move |_| cf, Domain::real_line())
            .with_exact(move |_| c.clone())
    }

    pub fn square() -> HFunction {
        HFunction::new("x^2", |x| x * x, Domain::real_line()).with_exact(|q| q * q)
    }

    pub fn cube() -> HFunction {
        HFunction::new("x^3", |x| x * x * x, Domain::real_line()).with_exact(|q| q * q * q)
    }

    pub fn abs() -> HFunction {
        HFunction::new("|x|", f64::abs, Domain::real_line()).with_exact(|q| q.abs())
    }

    pub fn sin() -> HFunction {
        HFunction::new("sin(x)", f64::sin, Domain::real_line())
    }

    /// `exp` on `[-20, 20]`.
    pub fn exp() -> HFunction {
        HFunction::new(
            "exp(x)",
            f64::exp,
            Domain::interval(Interval::closed(-20.0, 20.0)),
        )
    }

    /// `sin(1/x)` on ℝ∖{0}.
    pub fn sin_recip() -> HFunction {
        HFunction::new(
            "sin(1/x)",
            |x| (1.0 / x).sin(),
            Domain::real_line().excluding(0.0),
        )
    }

    /// `0` left of `c`, `1` from `c` on.
    pub fn step_at(c: BigRational) -> HFunction {
        let cf = ratio_f64(&c);
        HFunction::new(
            format!("step@{c}"),
            move |x| if x >= cf { 1.0 } else { 0.0 },
            Domain::real_line(),
        )
        .with_exact(move |q| {
            if q >= &c {
                integer(1)
            } else {
                BigRational::zero()
            }
        })
    }
}

/// `st((F(x0 + ε) − F(x0)) / ε)`.
pub fn derivative(f: &HFunction, x0: &Value, eps: &Hyperreal) -> Result<Value> {
    if !f.domain.is_interior(x0.to_f64()) {
        return Err(Error::DomainViolation(format!(
            "{x0} is not interior to the domain of {}",
            f.name
        )));
    }
    let class = classify(eps);
    if class.kind != Kind::Infinitesimal {
        return Err(Error::NotInfinitesimal(format!(
            "{} classifies as {:?}",
            eps.label(),
            class.kind
        )));
    }
    let fs = *eps.fs();
    let x = &Hyperreal::from_real(x0.clone(), fs) + eps;
    let dy = &f.lift(&x)? - &Hyperreal::from_real(f.apply(x0), fs);
    let q = dy.try_div(eps).map_err(|e| match e {
        Error::DivisionByProvableZero { .. } | Error::DivisionUndetermined { .. } => {
            Error::NotInfinitesimal(format!("{} is not certified nonzero: {e}", eps.label()))
        }
        e => e,
    })?;
    st(&q).map_err(|e| match e {
        Error::StNotConverged { oscillation, .. } | Error::QuotientNotAdequal { oscillation } => {
            Error::QuotientNotAdequal { oscillation }
        }
        e => e,
    })
}

/// Derivatives along several infinitesimals, and whether they agree.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustDerivative {
    /// Present iff `uniform`.
    pub value: Option<Value>,
    pub uniform: bool,
    pub per_generator: Vec<(String, Result<Value>)>,
    /// `Divergent` with every computed value when they disagree.
    pub witness: Witness,
}

pub fn derivative_robust(
    f: &HFunction,
    x0: &Value,
    generators: &[Hyperreal],
    tolerance: f64,
) -> RobustDerivative {
    let per_generator: Vec<(String, Result<Value>)> = generators
        .iter()
        .map(|g| (g.label(), derivative(f, x0, g)))
        .collect();
    let values: Vec<&Value> = per_generator
        .iter()
        .filter_map(|(_, r)| r.as_ref().ok())
        .collect();
    let floats: Vec<f64> = values.iter().map(|v| v.to_f64()).collect();
    let all_ok = values.len() == per_generator.len() && !values.is_empty();
    let agree = floats
        .iter()
        .all(|&v| floats.iter().all(|&w| (v - w).abs() <= tolerance));
    if all_ok && agree {
        let value = values[0].clone();
        RobustDerivative {
            witness: Witness::Value(value.to_f64()),
            value: Some(value),
            uniform: true,
            per_generator,
        }
    } else {
        let witness = if all_ok {
            Witness::Divergent(floats)
        } else {
            let errs: Vec<String> = per_generator
                .iter()
                .filter_map(|(l, r)| r.as_ref().err().map(|e| format!("{l}: {e}")))
                .collect();
            Witness::Error(errs.join("; "))
        };
        RobustDerivative {
            value: None,
            uniform: false,
            per_generator,
            witness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointKind {
    /// A standard point.
    A,
    /// A point generated by a non-constant sequence.
    B,
}

#[derive(Debug, Clone)]
pub struct ContinuityProbe {
    pub point: Hyperreal,
    pub increment: Hyperreal,
    pub label: String,
    pub kind: PointKind,
}

impl ContinuityProbe {
    pub fn new(
        point: Hyperreal,
        increment: Hyperreal,
        label: impl Into<String>,
        kind: PointKind,
    ) -> Self {
        ContinuityProbe {
            point,
            increment,
            label: label.into(),
            kind,
        }
    }

    pub fn a_point(x: Value, increment: Hyperreal, label: impl Into<String>) -> Self {
        let fs = *increment.fs();
        ContinuityProbe::new(Hyperreal::from_real(x, fs), increment, label, PointKind::A)
    }

    pub fn b_point(point: Hyperreal, increment: Hyperreal, label: impl Into<String>) -> Self {
        ContinuityProbe::new(point, increment, label, PointKind::B)
    }
}

/// Does an infinitesimal increment of the argument produce an infinitesimal
/// increment of `F`?
///
/// Fails only with a certified positive lower bound on the lim sup of the
/// absolute difference and the indices where it is exceeded.
pub fn cauchy_continuous_at(f: &HFunction, probe: &ContinuityProbe) -> Result<Verdict3> {
    let fs = *probe.point.fs();
    let inc = &probe.increment;
    if classify(inc).kind != Kind::Infinitesimal {
        return Err(Error::NotInfinitesimal(inc.label()));
    }
    if !eventually(|n| !inc.term(n).is_zero(), &fs).is_holds() {
        return Err(Error::NotInfinitesimal(format!(
            "{} is not eventually nonzero",
            inc.label()
        )));
    }
    let moved = probe.point.arith(crate::hyperreal::ArithOp::Add, inc)?;
    f.certify_domain(&probe.point)?;
    f.certify_domain(&moved)?;
    let diff = &f.lift_unchecked(&moved) - &f.lift_unchecked(&probe.point);
    let mag = |n: u64| diff.term(n).to_f64().abs();
    Ok(tends_to_zero(&mag, &decimal_ladder(CLASSIFY_DEPTH), &fs))
}

/// Which points the default family quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeFamily {
    /// Standard points only.
    AOnly,
    /// Standard points and sequence-generated points.
    AAndB,
}

fn exact_or_float(x: f64) -> Value {
    Value::from_f64_exact(x).unwrap_or(Value::Float(x))
}

fn shifted(base: &Value, seq: Seq, fs: FilterSemantics, label: String) -> Hyperreal {
    let h = Hyperreal::new(seq, fs);
    (&Hyperreal::from_real(base.clone(), fs) + &h).with_label(label)
}

/// A-points: nine interior grid points with increments `±1/n`, plus one-sided
/// probes at closed endpoints. B-points: `a + (b−a)/n`, and `1/n` when `0` is
/// an excluded left endpoint, each with increments `1/n` and `1/n²`.
pub fn default_probes(
    interval: &Interval,
    family: ProbeFamily,
    fs: FilterSemantics,
) -> Result<Vec<ContinuityProbe>> {
    if !interval.is_bounded() {
        return Err(Error::InvalidArgument(format!(
            "probe family needs a bounded interval, got {interval}"
        )));
    }
    let a = exact_or_float(interval.lo);
    let b = exact_or_float(interval.hi);
    let width = b.sub(&a);
    let plus = Hyperreal::harmonic(fs);
    let minus = plus.neg().with_label("-1/n");
    let mut probes = Vec::new();
    for j in 1..=9 {
        let x = a.add(&width.mul(&Value::ratio(j, 10)));
        probes.push(ContinuityProbe::a_point(
            x.clone(),
            plus.clone(),
            format!("A x={x} +1/n"),
        ));
        probes.push(ContinuityProbe::a_point(
            x.clone(),
            minus.clone(),
            format!("A x={x} -1/n"),
        ));
    }
    if interval.lo_closed {
        probes.push(ContinuityProbe::a_point(
            a.clone(),
            plus.clone(),
            format!("A x={a} +1/n"),
        ));
    }
    if interval.hi_closed {
        probes.push(ContinuityProbe::a_point(
            b.clone(),
            minus.clone(),
            format!("A x={b} -1/n"),
        ));
    }
    if family == ProbeFamily::AAndB {
        let wq = width.clone();
        let mut points = vec![shifted(
            &a,
            Seq::from_values(width.kind(), move |n| wq.mul(&Value::ratio(1, n as i64))),
            fs,
            if a.is_zero() {
                format!("{width}/n")
            } else {
                format!("{a}+{width}/n")
            },
        )];
        let zero_is_open_end = interval.lo == 0.0 && !interval.lo_closed;
        if zero_is_open_end && width != Value::int(1) {
            points.push(Hyperreal::harmonic(fs));
        }
        let increments = [plus.clone(), Hyperreal::new(gen::inverse_power(2), fs)];
        for p in &points {
            for inc in &increments {
                probes.push(ContinuityProbe::b_point(
                    p.clone(),
                    inc.clone(),
                    format!("B x={} +{}", p.label(), inc.label()),
                ));
            }
        }
    }
    Ok(probes)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeOutcome {
    pub label: String,
    pub kind: PointKind,
    pub verdict: Verdict3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub function: String,
    pub interval: Interval,
    pub aggregate: Truth,
    /// Sorted by label.
    pub probes: Vec<ProbeOutcome>,
    /// Every A-point probe holds and some B-point probe fails.
    pub b_only_failure: bool,
}

impl ContinuityReport {
    pub fn failures(&self, kind: PointKind) -> impl Iterator<Item = &ProbeOutcome> {
        self.probes
            .iter()
            .filter(move |p| p.kind == kind && p.verdict.is_fails())
    }
}

/// Continuity of `F` across a probe family. Probe errors are recorded as
/// undetermined entries carrying the error text.
pub fn cauchy_continuous_on(
    f: &HFunction,
    interval: &Interval,
    probes: &[ContinuityProbe],
) -> ContinuityReport {
    let mut outcomes: Vec<ProbeOutcome> = probes
        .par_iter()
        .map(|p| {
            let verdict = cauchy_continuous_at(f, p).unwrap_or_else(|e| Verdict3 {
                value: Truth::Undetermined,
                witness: Witness::Error(e.to_string()),
                horizon_used: p.point.fs().horizon(),
            });
            ProbeOutcome {
                label: p.label.clone(),
                kind: p.kind,
                verdict,
            }
        })
        .collect();
    outcomes.sort_by(|x, y| x.label.cmp(&y.label));
    let aggregate = Truth::all(outcomes.iter().map(|o| o.verdict.value));
    let a_fails = outcomes
        .iter()
        .any(|o| o.kind == PointKind::A && !o.verdict.is_holds());
    let b_fails = outcomes
        .iter()
        .any(|o| o.kind == PointKind::B && o.verdict.is_fails());
    ContinuityReport {
        function: f.name.clone(),
        interval: *interval,
        aggregate,
        probes: outcomes,
        b_only_failure: b_fails && !a_fails,
    }
}

/// [`cauchy_continuous_on`] with [`default_probes`].
pub fn cauchy_continuous_on_default(
    f: &HFunction,
    interval: &Interval,
    family: ProbeFamily,
    fs: FilterSemantics,
) -> Result<ContinuityReport> {
    let probes = default_probes(interval, family, fs)?;
    Ok(cauchy_continuous_on(f, interval, &probes))
}

/// `⟨c/n⟩` as an exact hyperreal.
pub fn scaled_harmonic(c: BigRational, fs: FilterSemantics) -> Hyperreal {
    let label = format!("{c}/n");
    Hyperreal::new(gen::reciprocal(c), fs).with_label(label)
}

/// `⟨-1/n⟩`
pub fn negative_harmonic(fs: FilterSemantics) -> Hyperreal {
    scaled_harmonic(rational(-1, 1), fs)
}

#[cfg(test)]
mod tests {
    use super::functions::*;
    use super::*;
    use crate::filter::ParityChoice;

    fn fs() -> FilterSemantics {
        FilterSemantics::new(100_000, 64, ParityChoice::EvensInFilter).unwrap()
    }

    #[test]
    fn interval_parsing() {
        let i: Interval = "(0,1]".parse().unwrap();
        assert!(!i.contains(0.0) && i.contains(1.0));
        let j: Interval = "-0.5, 0.5".parse().unwrap();
        assert!(j.contains(-0.5) && j.contains(0.5));
        assert!("1,0".parse::<Interval>().is_err());
        assert!("x".parse::<Interval>().is_err());
    }

    #[test]
    fn parabola_derivative() {
        let h = Hyperreal::harmonic(fs());
        assert_eq!(
            derivative(&square(), &Value::int(1), &h).unwrap(),
            Value::int(2)
        );
        assert_eq!(
            derivative(&square(), &Value::int(0), &h).unwrap(),
            Value::int(0)
        );
    }

    #[test]
    fn absolute_value_one_sided() {
        let f = fs();
        let abs = abs();
        assert_eq!(
            derivative(&abs, &Value::int(0), &Hyperreal::harmonic(f)).unwrap(),
            Value::int(1)
        );
        assert_eq!(
            derivative(&abs, &Value::int(0), &negative_harmonic(f)).unwrap(),
            Value::int(-1)
        );
    }

    #[test]
    fn robust_derivatives() {
        let f = fs();
        let gens = [
            Hyperreal::harmonic(f),
            Hyperreal::new(gen::inverse_power(2), f),
            Hyperreal::new(gen::alternating_harmonic(), f),
        ];
        let r = derivative_robust(
            &square(),
            &Value::int(1),
            &gens,
            DEFAULT_DERIVATIVE_TOLERANCE,
        );
        assert!(r.uniform);
        assert_eq!(r.value, Some(Value::int(2)));

        let two = [Hyperreal::harmonic(f), negative_harmonic(f)];
        let r = derivative_robust(&abs(), &Value::int(0), &two, DEFAULT_DERIVATIVE_TOLERANCE);
        assert!(!r.uniform);
        assert_eq!(r.witness, Witness::Divergent(vec![1.0, -1.0]));

        let r = derivative_robust(&cube(), &Value::int(0), &two, DEFAULT_DERIVATIVE_TOLERANCE);
        assert!(r.uniform);
        assert_eq!(r.value, Some(Value::int(0)));
    }

    #[test]
    fn derivative_rejects_appreciable_increment() {
        let one = Hyperreal::from_real(Value::int(1), fs());
        assert!(matches!(
            derivative(&square(), &Value::int(1), &one),
            Err(Error::NotInfinitesimal(_))
        ));
    }

    #[test]
    fn float_derivative() {
        let v = derivative(&sin(), &Value::ratio(1, 2), &Hyperreal::harmonic(fs())).unwrap();
        assert!((v.to_f64() - 0.5f64.cos()).abs() < 1e-8, "{v}");
    }

    #[test]
    fn step_derivative_not_adequal() {
        let f = fs().with_parity(ParityChoice::None);
        let e = Hyperreal::new(gen::alternating_harmonic(), f);
        let r = derivative(&step_at(rational(0, 1)), &Value::int(0), &e);
        assert!(matches!(r, Err(Error::QuotientNotAdequal { .. })), "{r:?}");
    }

    #[test]
    fn a_point_probes() {
        let f = fs();
        let h = Hyperreal::harmonic(f);
        let p = ContinuityProbe::a_point(Value::int(1), h.clone(), "x=1");
        assert!(cauchy_continuous_at(&square(), &p).unwrap().is_holds());
        assert!(cauchy_continuous_at(&sin_recip(), &p).unwrap().is_holds());
    }

    #[test]
    fn sin_recip_fails_at_harmonic_point() {
        let f = fs();
        let h = Hyperreal::harmonic(f);
        let p = ContinuityProbe::b_point(h.clone(), h, "1/n");
        let v = cauchy_continuous_at(&sin_recip(), &p).unwrap();
        assert!(v.is_fails());
        match v.witness {
            Witness::Recurring {
                bound,
                count,
                indices,
            } => {
                assert_eq!(bound, 0.5);
                assert!(count >= 100);
                for n in indices {
                    let d = ((n as f64) / 2.0).sin() - (n as f64).sin();
                    assert!(d.abs() > 0.5);
                }
            }
            w => panic!("{w:?}"),
        }
    }

    #[test]
    fn domain_violation() {
        let f = fs();
        let zero = Hyperreal::from_real(Value::int(0), f);
        let p = ContinuityProbe::b_point(zero, Hyperreal::harmonic(f), "0");
        assert!(matches!(
            cauchy_continuous_at(&sin_recip(), &p),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn interval_reports() {
        let f = fs();
        let r = cauchy_continuous_on_default(
            &square(),
            &Interval::closed(0.0, 2.0),
            ProbeFamily::AAndB,
            f,
        )
        .unwrap();
        assert_eq!(r.aggregate, Truth::Holds, "{:?}", r.probes);

        let r = cauchy_continuous_on_default(
            &sin_recip(),
            &Interval::left_open(0.0, 1.0),
            ProbeFamily::AAndB,
            f,
        )
        .unwrap();
        assert_eq!(r.aggregate, Truth::Fails);
        assert!(r.b_only_failure);
        assert!(r.failures(PointKind::A).next().is_none());
        let a_only = cauchy_continuous_on_default(
            &sin_recip(),
            &Interval::left_open(0.0, 1.0),
            ProbeFamily::AOnly,
            f,
        )
        .unwrap();
        assert_eq!(a_only.aggregate, Truth::Holds);

        let r = cauchy_continuous_on_default(
            &step_at(rational(1, 2)),
            &Interval::closed(0.0, 1.0),
            ProbeFamily::AAndB,
            f,
        )
        .unwrap();
        assert_eq!(r.aggregate, Truth::Fails);
        let failed: Vec<&str> = r.failures(PointKind::A).map(|p| p.label.as_str()).collect();
        assert_eq!(failed, vec!["A x=1/2 -1/n"]);
    }
}

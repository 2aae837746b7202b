//! Hyperreals as sequence representatives modulo the filter semantics.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::decay::{decimal_ladder, growth_exponent, tends_to_zero, STALL_EXPONENT};
use crate::error::{Error, Result};
use crate::filter::{eventually, FilterSemantics, Lattice, Plan};
use crate::seq::{gen, Seq};
use crate::value::{Value, ValueKind};
use crate::verdict::{Truth, Verdict3, Witness};

/// Depth of the `10^-k` / `10^k` classification ladders.
pub const CLASSIFY_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone)]
pub struct Hyperreal {
    rep: Seq,
    fs: FilterSemantics,
}

impl fmt::Debug for Hyperreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hyperreal")
            .field("rep", &self.rep)
            .field("parity", &self.fs.parity_choice())
            .finish()
    }
}

impl Hyperreal {
    pub fn new(rep: Seq, fs: FilterSemantics) -> Hyperreal {
        Hyperreal { rep, fs }
    }

    /// The constant embedding of a real.
    pub fn from_real(r: impl Into<Value>, fs: FilterSemantics) -> Hyperreal {
        Hyperreal::new(Seq::constant(r.into()), fs)
    }

    pub fn from_rational(q: BigRational, fs: FilterSemantics) -> Hyperreal {
        Hyperreal::from_real(Value::Exact(q), fs)
    }

    /// ⟨n⟩
    pub fn unlimited(fs: FilterSemantics) -> Hyperreal {
        Hyperreal::new(gen::identity(), fs)
    }

    /// ⟨1/n⟩
    pub fn harmonic(fs: FilterSemantics) -> Hyperreal {
        Hyperreal::new(gen::harmonic(), fs)
    }

    pub fn rep(&self) -> &Seq {
        &self.rep
    }

    pub fn fs(&self) -> &FilterSemantics {
        &self.fs
    }

    pub fn kind(&self) -> ValueKind {
        self.rep.kind()
    }

    pub fn term(&self, n: u64) -> Value {
        self.rep.eval(n)
    }

    /// The same class viewed under other semantics.
    pub fn with_semantics(&self, fs: FilterSemantics) -> Hyperreal {
        Hyperreal::new(self.rep.clone(), fs)
    }

    pub fn label(&self) -> String {
        self.rep.tag().unwrap_or("<seq>").to_string()
    }

    pub fn with_label(&self, label: impl Into<String>) -> Hyperreal {
        Hyperreal::new(self.rep.clone().with_tag(label), self.fs)
    }

    fn termwise(&self, other: &Hyperreal, f: fn(&Value, &Value) -> Value) -> Hyperreal {
        let kind = self.kind().join(other.kind());
        Hyperreal::new(
            self.rep.zip(&other.rep, kind, move |_, a, b| f(&a, &b)),
            self.fs,
        )
    }

    pub fn neg(&self) -> Hyperreal {
        Hyperreal::new(self.rep.map(self.kind(), |_, v| v.neg()), self.fs)
    }

    pub fn abs(&self) -> Hyperreal {
        Hyperreal::new(self.rep.map(self.kind(), |_, v| v.abs()), self.fs)
    }

    /// Termwise arithmetic. Division first certifies the divisor eventually
    /// nonzero; at the finitely many (or filter-negligible) indices where it
    /// vanishes the quotient term is a placeholder `0`.
    pub fn arith(&self, op: ArithOp, other: &Hyperreal) -> Result<Hyperreal> {
        if self.fs != other.fs {
            return Err(Error::SemanticsMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.termwise(other, Value::add),
            ArithOp::Sub => self.termwise(other, Value::sub),
            ArithOp::Mul => self.termwise(other, Value::mul),
            ArithOp::Div => {
                let nonzero = eventually(|n| !other.term(n).is_zero(), &self.fs);
                match (nonzero.value, nonzero.witness) {
                    (Truth::Holds, _) => {}
                    (Truth::Fails, Witness::Index(from)) => {
                        return Err(Error::DivisionByProvableZero { from })
                    }
                    _ => {
                        return Err(Error::DivisionUndetermined {
                            horizon: self.fs.horizon(),
                        })
                    }
                }
                let kind = self.kind().join(other.kind());
                let rep = self.rep.zip(&other.rep, kind, move |_, a, b| {
                    a.checked_div(&b).unwrap_or_else(|| Value::zero(kind))
                });
                Hyperreal::new(rep, self.fs)
            }
        })
    }

    pub fn try_div(&self, other: &Hyperreal) -> Result<Hyperreal> {
        self.arith(ArithOp::Div, other)
    }

    /// Are the representatives equal on a filter member?
    pub fn provably_equal(&self, other: &Hyperreal) -> Verdict3 {
        eventually(|n| self.term(n).same(&other.term(n)), &self.fs)
    }

    pub fn compare(&self, other: &Hyperreal) -> Comparison {
        hr_compare(self, other)
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }

    pub fn st(&self) -> Result<Value> {
        st(self)
    }
}

fn binop(a: &Hyperreal, b: &Hyperreal, op: ArithOp) -> Hyperreal {
    a.arith(op, b)
        .expect("hyperreal operands must share filter semantics")
}

impl std::ops::Add for &Hyperreal {
    type Output = Hyperreal;

    /// # Panics
    /// If the operands carry different semantics; use [`Hyperreal::arith`] to get an error instead.
    fn add(self, rhs: &Hyperreal) -> Hyperreal {
        binop(self, rhs, ArithOp::Add)
    }
}

impl std::ops::Sub for &Hyperreal {
    type Output = Hyperreal;

    fn sub(self, rhs: &Hyperreal) -> Hyperreal {
        binop(self, rhs, ArithOp::Sub)
    }
}

impl std::ops::Mul for &Hyperreal {
    type Output = Hyperreal;

    fn mul(self, rhs: &Hyperreal) -> Hyperreal {
        binop(self, rhs, ArithOp::Mul)
    }
}

impl std::ops::Neg for &Hyperreal {
    type Output = Hyperreal;

    fn neg(self) -> Hyperreal {
        Hyperreal::neg(self)
    }
}

pub fn hr_from_real(r: impl Into<Value>, fs: FilterSemantics) -> Hyperreal {
    Hyperreal::from_real(r, fs)
}

pub fn hr_arith(a: &Hyperreal, b: &Hyperreal, op: ArithOp) -> Result<Hyperreal> {
    a.arith(op, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">")]
    Greater,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::Equal => "=",
            Relation::Greater => ">",
        }
    }

    fn of(ord: Ordering) -> Relation {
        match ord {
            Ordering::Less => Relation::Less,
            Ordering::Equal => Relation::Equal,
            Ordering::Greater => Relation::Greater,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.symbol())
    }
}

/// Outcome of comparing two hyperreals: the certified relation, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub relation: Option<Relation>,
    pub verdict: Verdict3,
    /// Per-relation verdicts in the order `>`, `<`, `=`.
    pub by_relation: Vec<(Relation, Verdict3)>,
}

pub fn hr_compare(a: &Hyperreal, b: &Hyperreal) -> Comparison {
    let fs = a.fs;
    let mut by_relation = Vec::with_capacity(3);
    for want in [Ordering::Greater, Ordering::Less, Ordering::Equal] {
        let v = eventually(
            |n| a.term(n).partial_cmp_value(&b.term(n)) == Some(want),
            &fs,
        );
        by_relation.push((Relation::of(want), v));
    }
    let found = by_relation.iter().find(|(_, v)| v.is_holds()).cloned();
    match found {
        Some((rel, v)) => {
            let index = match v.witness {
                Witness::Index(n) => n,
                _ => 1,
            };
            Comparison {
                relation: Some(rel),
                verdict: Verdict3::holds(
                    Witness::Relation {
                        relation: rel.symbol().to_string(),
                        index,
                    },
                    fs.horizon(),
                ),
                by_relation,
            }
        }
        None => Comparison {
            relation: None,
            verdict: Verdict3::undetermined(fs.horizon()),
            by_relation,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Infinitesimal,
    Appreciable,
    Unlimited,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub kind: Kind,
    /// Standard part: `0` for infinitesimals; the limit estimate for
    /// appreciable elements whose tail stabilizes.
    pub st_estimate: Option<Value>,
    /// The verdict that decided the kind.
    pub witness: Witness,
}

fn magnitude(a: &Hyperreal) -> impl Fn(u64) -> f64 + '_ {
    move |n| a.term(n).to_f64().abs()
}

/// Infinitesimal: below every `10^-k`. Unlimited: the reciprocal magnitude is
/// infinitesimal. Appreciable: neither, eventually between `10^-k` and `10^k`
/// for some `k`, with no drift in either magnitude or its reciprocal.
pub fn classify(a: &Hyperreal) -> Classification {
    let fs = a.fs;
    let ladder = decimal_ladder(CLASSIFY_DEPTH);
    let mag = magnitude(a);
    let small = tends_to_zero(&mag, &ladder, &fs);
    if small.is_holds() {
        return Classification {
            kind: Kind::Infinitesimal,
            st_estimate: Some(Value::zero(a.kind())),
            witness: small.witness,
        };
    }
    let recip = |n: u64| 1.0 / mag(n);
    let large = tends_to_zero(&recip, &ladder, &fs);
    if large.is_holds() {
        return Classification {
            kind: Kind::Unlimited,
            st_estimate: None,
            witness: large.witness,
        };
    }
    if small.is_fails() && large.is_fails() {
        let set = fs.parity_set().unwrap_or(Lattice::All);
        let flat = growth_exponent(&mag, set, &fs) < STALL_EXPONENT
            && growth_exponent(&recip, set, &fs) < STALL_EXPONENT;
        if flat {
            for k in 1..=CLASSIFY_DEPTH as i32 {
                let (lo, hi) = (10f64.powi(-k), 10f64.powi(k));
                let v = eventually(|n| lo < mag(n) && mag(n) < hi, &fs);
                if v.is_holds() {
                    return Classification {
                        kind: Kind::Appreciable,
                        st_estimate: st_estimate(a).ok(),
                        witness: Witness::Bound(lo),
                    };
                }
            }
        }
    }
    Classification {
        kind: Kind::Undetermined,
        st_estimate: None,
        witness: Witness::Exhausted(fs.horizon()),
    }
}

/// Partner index near `k / d` with the parity of `k` (and so in the same lattice).
fn partner(k: u64, d: u64) -> u64 {
    let mut m = (k + d / 2) / d;
    if m % 2 != k % 2 {
        m = if m > 1 { m - 1 } else { m + 1 };
    }
    m.max(1)
}

/// Value at `1/n = 0` of the quadratic in `1/n` through three samples.
fn extrapolate(points: &[(u64, Value); 3]) -> Value {
    let exact = points.iter().all(|(_, v)| v.kind() == ValueKind::Exact);
    let mut acc = Value::zero(if exact {
        ValueKind::Exact
    } else {
        ValueKind::Float
    });
    for (j, (nj, vj)) in points.iter().enumerate() {
        // weight_j = Π_{l≠j} n_j / (n_j − n_l)
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for (l, (nl, _)) in points.iter().enumerate() {
            if l != j {
                num *= *nj as i128;
                den *= *nj as i128 - *nl as i128;
            }
        }
        let w = if exact {
            Value::Exact(BigRational::new(num.into(), den.into()))
        } else {
            Value::Float(num as f64 / den as f64)
        };
        acc = acc.add(&w.mul(vj));
    }
    acc
}

fn spread(values: &[Value]) -> f64 {
    let xs: Vec<f64> = values.iter().map(Value::to_f64).collect();
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    if xs.iter().any(|x| x.is_nan()) {
        f64::INFINITY
    } else {
        hi - lo
    }
}

struct TailStats {
    estimate: Option<Value>,
    mean: f64,
    spread: f64,
}

fn window_stats(a: &Hyperreal, indices: &[u64], tol: f64) -> TailStats {
    let raw: Vec<Value> = indices.iter().map(|&k| a.term(k)).collect();
    let accelerated: Vec<Value> = indices
        .iter()
        .zip(&raw)
        .map(|(&k, v)| {
            let (m2, m4) = (partner(k, 2), partner(k, 4));
            extrapolate(&[(k, v.clone()), (m2, a.term(m2)), (m4, a.term(m4))])
        })
        .collect();
    let osc_acc = spread(&accelerated);
    let osc_raw = spread(&raw);
    let mean = accelerated.iter().map(Value::to_f64).sum::<f64>() / accelerated.len() as f64;
    let estimate = if osc_acc < tol {
        accelerated.last().cloned()
    } else if osc_raw < tol {
        raw.last().cloned()
    } else {
        None
    };
    TailStats {
        estimate,
        mean,
        spread: osc_acc.min(osc_raw),
    }
}

/// Limit estimate on one lattice. `Err` carries the smallest tail oscillation seen.
///
/// Windows in the later half of the plan are tried from the horizon down;
/// an earlier window is accepted only if every later one is centred on its
/// estimate to within that window's own spread (rounding noise grows with
/// the index in float quotients).
fn st_estimate_in(a: &Hyperreal, set: Lattice) -> std::result::Result<Value, f64> {
    let fs = a.fs;
    let plan = Plan::new(set, &fs);
    let tol = fs.st_tolerance();
    let w = plan.window;
    if plan.max_pos < w || plan.max_pos < 16 {
        return Err(f64::INFINITY);
    }
    let last: Vec<u64> = ((plan.max_pos + 1 - w)..=plan.max_pos)
        .map(|p| plan.index(p))
        .collect();
    let raw_last: Vec<Value> = last.iter().map(|&k| a.term(k)).collect();
    if raw_last.windows(2).all(|p| p[0] == p[1]) {
        return Ok(raw_last[0].clone());
    }

    let windows = plan.windows();
    let from = windows.len() / 2;
    let mut later: Vec<TailStats> = Vec::new();
    let mut best = f64::INFINITY;
    for &(lo, hi) in windows[from..].iter().rev() {
        if hi + 1 - lo < w {
            continue;
        }
        let indices: Vec<u64> = (lo..=hi).map(|p| plan.index(p)).collect();
        let stats = window_stats(a, &indices, tol);
        best = best.min(stats.spread);
        if let Some(v) = &stats.estimate {
            let x = v.to_f64();
            if later.iter().all(|t| (t.mean - x).abs() <= t.spread + tol) {
                return Ok(v.clone());
            }
        }
        later.push(stats);
    }
    Err(best)
}

fn st_estimate(a: &Hyperreal) -> std::result::Result<Value, f64> {
    match st_estimate_in(a, Lattice::All) {
        Ok(v) => Ok(v),
        Err(osc) => match a.fs.parity_set() {
            Some(set) => st_estimate_in(a, set).map_err(|o| o.min(osc)),
            None => Err(osc),
        },
    }
}

/// Standard part: the real infinitely close to a limited hyperreal.
///
/// A window of `tail_window` terms late in the horizon (on ℕ⁺, then on the
/// oracle's parity class) must stabilize below the st tolerance, either as they stand or after
/// extrapolating each term's quadratic-in-`1/n` fit through `n`, `n/2`, `n/4`
/// (same-parity partners) to `1/n = 0`. Eventually-constant tails are
/// returned as is; estimates within tolerance of `0` become exactly `0` when
/// the hyperreal is infinitesimal.
pub fn st(a: &Hyperreal) -> Result<Value> {
    match st_estimate(a) {
        Ok(v) if !v.is_zero() && v.to_f64().abs() <= a.fs.st_tolerance() => {
            let ladder = decimal_ladder(CLASSIFY_DEPTH);
            if tends_to_zero(&magnitude(a), &ladder, &a.fs).is_holds() {
                Ok(Value::zero(a.kind()))
            } else {
                Ok(v)
            }
        }
        Ok(v) => Ok(v),
        Err(oscillation) => {
            let ladder = decimal_ladder(CLASSIFY_DEPTH);
            let mag = magnitude(a);
            if tends_to_zero(&|n| 1.0 / mag(n), &ladder, &a.fs).is_holds() {
                Err(Error::StUnlimited)
            } else {
                Err(Error::StNotConverged {
                    oscillation,
                    tolerance: a.fs.st_tolerance(),
                })
            }
        }
    }
}

/// Largest `2^-j` with `|a| > 2^-j` on a filter member.
fn separation_bound(a: &Hyperreal) -> Option<f64> {
    let mag = magnitude(a);
    (1..=40)
        .map(|j| 0.5f64.powi(j))
        .find(|&b| eventually(|n| mag(n) > b, &a.fs).is_holds())
}

/// Adequality: `a − b` is infinitesimal.
pub fn adequal(a: &Hyperreal, b: &Hyperreal) -> Result<Verdict3> {
    let d = a.arith(ArithOp::Sub, b)?;
    let c = classify(&d);
    let h = a.fs.horizon();
    Ok(match c.kind {
        Kind::Infinitesimal => Verdict3::holds(c.witness, h),
        Kind::Appreciable | Kind::Unlimited => {
            let bound = separation_bound(&d).unwrap_or(0.0);
            Verdict3::fails(Witness::Bound(bound), h)
        }
        Kind::Undetermined => Verdict3::undetermined(h),
    })
}

/// Certificates produced along the way by [`wallis_area_detailed`].
#[derive(Debug, Clone, PartialEq)]
pub struct WallisArea {
    pub area: BigRational,
    /// ⟨n⟩ × ⟨1/n⟩ provably equal to 1.
    pub unit_product: Verdict3,
    /// (A ÷ H) × ((B × H) ÷ 2) provably equal to the constant AB/2.
    pub area_equality: Verdict3,
}

/// Area of a triangle of altitude `a` and base `b` as `H` slices of width
/// `a/H` whose bases add up to `(b/2)·H`, with `H = ⟨n⟩` unlimited.
pub fn wallis_area_detailed(
    a: &BigRational,
    b: &BigRational,
    fs: FilterSemantics,
) -> Result<WallisArea> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "altitude and base must be positive (got {a}, {b})"
        )));
    }
    let h = Hyperreal::unlimited(fs);
    let one = Hyperreal::from_real(Value::int(1), fs);
    let two = Hyperreal::from_real(Value::int(2), fs);
    let altitude = Hyperreal::from_rational(a.clone(), fs);
    let base = Hyperreal::from_rational(b.clone(), fs);

    let unit_product = (&h * &one.try_div(&h)?).provably_equal(&one);

    let width = altitude.try_div(&h)?;
    let bases = (&base * &h).try_div(&two)?;
    let area = &width * &bases;

    let half_ab = a * b / BigRational::from_integer(2.into());
    let target = Hyperreal::from_rational(half_ab.clone(), fs);
    let area_equality = area.provably_equal(&target);
    let from = match (&area_equality.value, &area_equality.witness) {
        (Truth::Holds, Witness::Index(from)) => *from,
        _ => {
            return Err(Error::InvalidArgument(
                "area could not be certified constant".into(),
            ))
        }
    };
    debug_assert_eq!(area.term(from).as_exact(), Some(&half_ab));
    Ok(WallisArea {
        area: half_ab,
        unit_product,
        area_equality,
    })
}

pub fn wallis_area(a: &BigRational, b: &BigRational, fs: FilterSemantics) -> Result<BigRational> {
    wallis_area_detailed(a, b, fs).map(|w| w.area)
}

//! Semi-decision of "tends to zero" for magnitude sequences.
//!
//! A ladder level `r` is certified either directly (a tail below `r` inside
//! the horizon) or by projection: when the upper envelope of the examined
//! windows decays at least like `n^-1/2` over the last two decades, the index
//! at which it crosses `r` is projected past the horizon. A sequence whose
//! envelope has stalled and which exceeds a fixed bound in every late window
//! is certified *not* to tend to zero; the bound is a lower bound on the
//! lim sup.

use crate::filter::{recurrences, tail_start, FilterSemantics, Lattice, Plan};
use crate::verdict::{Verdict3, Witness};

/// Minimum envelope decay exponent for projecting below the horizon.
pub const CERTIFY_EXPONENT: f64 = 0.5;
/// Envelope decay exponent below which the envelope counts as stalled.
pub const STALL_EXPONENT: f64 = 0.1;

/// `10^-k` for `k = 1..=depth`.
pub fn decimal_ladder(depth: u32) -> Vec<f64> {
    (1..=depth as i32).map(|k| 10f64.powi(-k)).collect()
}

/// Lim-sup candidates `1/2, 1/4, …, 2^-40`.
fn halving_ladder() -> impl Iterator<Item = f64> {
    (1..=40).map(|k| 0.5f64.powi(k))
}

fn sanitize(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x.abs()
    }
}

/// Largest `b` in `1/2, 1/4, …` such that `mag > b` recurs in every late
/// window of the lattice.
pub(crate) fn recurrence_bound_in(mag: &dyn Fn(u64) -> f64, plan: &Plan) -> Option<Witness> {
    for b in halving_ladder() {
        if let Some(hits) = recurrences(&|n| sanitize(mag(n)) > b, plan) {
            return Some(Witness::Recurring {
                bound: b,
                count: hits.len() as u64,
                indices: hits,
            });
        }
    }
    None
}

/// Certified positive lower bound on the lim sup of `mag`, decided on the
/// parity class when the oracle names one.
pub fn recurrence_bound(mag: &dyn Fn(u64) -> f64, fs: &FilterSemantics) -> Option<Witness> {
    let set = fs.parity_set().unwrap_or(Lattice::All);
    recurrence_bound_in(mag, &Plan::new(set, fs))
}

#[derive(Debug, Clone)]
struct Envelope {
    starts: Vec<f64>,
    suffix_max: Vec<f64>,
}

impl Envelope {
    fn measure(mag: &dyn Fn(u64) -> f64, plan: &Plan) -> Option<Envelope> {
        let windows = plan.windows();
        if windows.is_empty() {
            return None;
        }
        let maxima: Vec<f64> = windows
            .iter()
            .map(|&(a, b)| {
                (a..=b)
                    .map(|pos| sanitize(mag(plan.index(pos))))
                    .fold(0.0, f64::max)
            })
            .collect();
        let mut suffix_max = maxima.clone();
        for j in (0..suffix_max.len().saturating_sub(1)).rev() {
            suffix_max[j] = suffix_max[j].max(suffix_max[j + 1]);
        }
        let starts = windows.iter().map(|&(a, _)| plan.index(a) as f64).collect();
        Some(Envelope { starts, suffix_max })
    }

    fn last(&self) -> usize {
        self.starts.len() - 1
    }

    /// Log-log decay rate of the suffix envelope between two windows.
    fn slope(&self, a: usize, b: usize) -> f64 {
        if a >= b {
            return 0.0;
        }
        let (sa, sb) = (self.suffix_max[a], self.suffix_max[b]);
        if sb == 0.0 {
            return f64::INFINITY;
        }
        if !sa.is_finite() {
            return 0.0;
        }
        (sa / sb).ln() / (self.starts[b] / self.starts[a]).ln()
    }

    fn window_at_or_below(&self, x: f64) -> usize {
        self.starts.iter().rposition(|&c| c <= x).unwrap_or(0)
    }

    /// (early half rate, late half rate, whole span rate) over the last two decades.
    fn rates(&self) -> (f64, f64, f64) {
        let last = self.last();
        let c_last = self.starts[last];
        let first = self.window_at_or_below(c_last / 100.0);
        let full = self.slope(first, last);
        let mid = self.window_at_or_below((self.starts[first] * c_last).sqrt());
        if mid <= first || mid >= last {
            return (full, full, full);
        }
        (self.slope(first, mid), self.slope(mid, last), full)
    }
}

/// Growth rate of the window maxima of `mag` over the last two decades of
/// the plan for `set` (negative when decaying).
pub fn growth_exponent(mag: &dyn Fn(u64) -> f64, set: Lattice, fs: &FilterSemantics) -> f64 {
    let plan = Plan::new(set, fs);
    let windows = plan.windows();
    if windows.len() < 2 {
        return 0.0;
    }
    let maxima: Vec<f64> = windows
        .iter()
        .map(|&(a, b)| {
            (a..=b)
                .map(|pos| sanitize(mag(plan.index(pos))))
                .fold(0.0, f64::max)
        })
        .collect();
    let starts: Vec<f64> = windows.iter().map(|&(a, _)| plan.index(a) as f64).collect();
    let last = starts.len() - 1;
    let first = starts
        .iter()
        .rposition(|&c| c <= starts[last] / 100.0)
        .unwrap_or(0);
    if first == last {
        return 0.0;
    }
    let (ea, eb) = (maxima[first], maxima[last]);
    if !ea.is_finite() || !eb.is_finite() {
        return f64::INFINITY;
    }
    if ea == 0.0 || eb == 0.0 {
        return if ea == eb {
            0.0
        } else if eb == 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    (eb / ea).ln() / (starts[last] / starts[first]).ln()
}

fn tends_to_zero_in(
    mag: &dyn Fn(u64) -> f64,
    ladder: &[f64],
    plan: &Plan,
    horizon: u64,
) -> Verdict3 {
    let Some(env) = Envelope::measure(mag, plan) else {
        return Verdict3::undetermined(horizon);
    };
    let (early, late, whole) = env.rates();
    let decaying = early >= CERTIFY_EXPONENT && late >= CERTIFY_EXPONENT;
    let stalled = whole < STALL_EXPONENT;
    let tail_env = env.suffix_max[env.last()];
    let c_last = env.starts[env.last()];

    let mut tail_from = 1u64;
    let mut projected: Option<f64> = None;
    for &r in ladder {
        if let Some(n) = tail_start(&|k| sanitize(mag(k)) < r, plan) {
            tail_from = tail_from.max(n);
            continue;
        }
        if decaying && tail_env > 0.0 && tail_env.is_finite() {
            let at = c_last * (tail_env / r).powf(1.0 / late.min(early));
            projected = Some(projected.map_or(at, |p: f64| p.max(at)));
            continue;
        }
        if stalled {
            if let Some(w) = recurrence_bound_in(mag, plan) {
                return Verdict3::fails(w, horizon);
            }
        }
        return Verdict3::undetermined(horizon);
    }
    let witness = match projected {
        Some(p) => Witness::ProjectedIndex(p.ceil()),
        None => Witness::Index(tail_from),
    };
    Verdict3::holds(witness, horizon)
}

/// Is `⟨mag(n)⟩` eventually below every level of `ladder`?
///
/// Decided on ℕ⁺ first; if that does not certify the tail and the oracle
/// names a parity class, the verdict on that class is returned instead.
pub fn tends_to_zero(mag: &dyn Fn(u64) -> f64, ladder: &[f64], fs: &FilterSemantics) -> Verdict3 {
    let h = fs.horizon();
    let on_all = tends_to_zero_in(mag, ladder, &Plan::new(Lattice::All, fs), h);
    if on_all.is_holds() {
        return on_all;
    }
    match fs.parity_set() {
        Some(set) => {
            let on_class = tends_to_zero_in(mag, ladder, &Plan::new(set, fs), h);
            if on_class.is_undetermined() {
                on_all
            } else {
                on_class
            }
        }
        None => on_all,
    }
}

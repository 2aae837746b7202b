//! Index-set semantics and the semi-decision procedures built on it.
//!
//! A nonprincipal ultrafilter cannot be computed, so membership is decided by
//! a horizon-bounded Fréchet ("cofinite") policy plus one explicit bit: which
//! parity class counts as large. Every procedure examines a fixed, deterministic
//! set of indices: a contiguous window of `tail_window` indices at each of a
//! geometric ladder of checkpoints, plus the window that ends at the horizon.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{Verdict3, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityChoice {
    #[serde(rename = "evens")]
    EvensInFilter,
    #[serde(rename = "odds")]
    OddsInFilter,
    None,
}

impl FromStr for ParityChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "evens" | "even" | "evensinfilter" => Ok(ParityChoice::EvensInFilter),
            "odds" | "odd" | "oddsinfilter" => Ok(ParityChoice::OddsInFilter),
            "none" | "frechet" => Ok(ParityChoice::None),
            other => Err(Error::InvalidConfig(format!(
                "parity must be evens, odds or none (got `{other}`)"
            ))),
        }
    }
}

impl fmt::Display for ParityChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ParityChoice::EvensInFilter => "evens",
            ParityChoice::OddsInFilter => "odds",
            ParityChoice::None => "none",
        })
    }
}

/// The ambient decision policy shared by every hyperreal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSemantics {
    horizon: u64,
    tail_window: u64,
    parity_choice: ParityChoice,
    st_tolerance: f64,
}

pub const DEFAULT_HORIZON: u64 = 100_000;
pub const DEFAULT_TAIL_WINDOW: u64 = 64;
pub const DEFAULT_ST_TOLERANCE: f64 = 1e-9;

impl Default for FilterSemantics {
    fn default() -> Self {
        FilterSemantics {
            horizon: DEFAULT_HORIZON,
            tail_window: DEFAULT_TAIL_WINDOW,
            parity_choice: ParityChoice::EvensInFilter,
            st_tolerance: DEFAULT_ST_TOLERANCE,
        }
    }
}

impl FilterSemantics {
    pub fn new(horizon: u64, tail_window: u64, parity_choice: ParityChoice) -> Result<Self> {
        FilterSemantics::default()
            .with_parity(parity_choice)
            .with_window(horizon, tail_window)
    }

    pub fn with_window(self, horizon: u64, tail_window: u64) -> Result<Self> {
        if tail_window < 1 || horizon < tail_window {
            return Err(Error::InvalidSemantics(format!(
                "need horizon >= tail_window >= 1 (horizon {horizon}, tail_window {tail_window})"
            )));
        }
        Ok(FilterSemantics {
            horizon,
            tail_window,
            ..self
        })
    }

    pub fn with_parity(self, parity_choice: ParityChoice) -> Self {
        FilterSemantics {
            parity_choice,
            ..self
        }
    }

    pub fn with_st_tolerance(self, st_tolerance: f64) -> Result<Self> {
        if !(st_tolerance > 0.0 && st_tolerance.is_finite()) {
            return Err(Error::InvalidSemantics(format!(
                "st tolerance must be positive (got {st_tolerance})"
            )));
        }
        Ok(FilterSemantics {
            st_tolerance,
            ..self
        })
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn tail_window(&self) -> u64 {
        self.tail_window
    }

    pub fn parity_choice(&self) -> ParityChoice {
        self.parity_choice
    }

    pub fn st_tolerance(&self) -> f64 {
        self.st_tolerance
    }

    /// The parity class deemed a filter member, if any.
    pub fn parity_set(&self) -> Option<Lattice> {
        match self.parity_choice {
            ParityChoice::EvensInFilter => Some(Lattice::Evens),
            ParityChoice::OddsInFilter => Some(Lattice::Odds),
            ParityChoice::None => None,
        }
    }

    /// Index sets tried by decision procedures, most general first.
    pub fn decision_sets(&self) -> Vec<Lattice> {
        let mut sets = vec![Lattice::All];
        sets.extend(self.parity_set());
        sets
    }
}

/// An index set that decision procedures can range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    All,
    Evens,
    Odds,
}

impl Lattice {
    /// Index of the `pos`-th member, `pos >= 1`.
    pub fn index(self, pos: u64) -> u64 {
        match self {
            Lattice::All => pos,
            Lattice::Evens => 2 * pos,
            Lattice::Odds => 2 * pos - 1,
        }
    }

    /// Number of members not exceeding `horizon`.
    pub fn count(self, horizon: u64) -> u64 {
        match self {
            Lattice::All => horizon,
            Lattice::Evens => horizon / 2,
            Lattice::Odds => horizon.div_ceil(2),
        }
    }

    pub fn contains(self, n: u64) -> bool {
        match self {
            Lattice::All => true,
            Lattice::Evens => n.is_multiple_of(2),
            Lattice::Odds => n % 2 == 1,
        }
    }
}

/// Index-set descriptors accepted by [`filter_member`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexClass {
    /// ℕ⁺ minus the listed exceptions.
    Cofinite(Vec<u64>),
    Finite(Vec<u64>),
    Evens,
    Odds,
    /// `{ n : n ≡ residue (mod modulus) }`.
    Residue {
        modulus: u64,
        residue: u64,
    },
}

impl IndexClass {
    /// Complement within ℕ⁺, when it is again in the supported family.
    pub fn complement(&self) -> Option<IndexClass> {
        Some(match self {
            IndexClass::Cofinite(ex) => IndexClass::Finite(ex.clone()),
            IndexClass::Finite(s) => IndexClass::Cofinite(s.clone()),
            IndexClass::Evens => IndexClass::Odds,
            IndexClass::Odds => IndexClass::Evens,
            IndexClass::Residue {
                modulus: 2,
                residue,
            } => IndexClass::Residue {
                modulus: 2,
                residue: 1 - residue % 2,
            },
            IndexClass::Residue { modulus: 1, .. } => IndexClass::Finite(vec![]),
            IndexClass::Residue { .. } => return None,
        })
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::UnsupportedIndexClass(format!("bad index `{t}`")))
        })
        .collect()
}

impl FromStr for IndexClass {
    type Err = Error;

    /// `evens`, `odds`, `finite:1,2,3`, `cofinite:1,2,3`, `mod:m:r`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "evens" => Ok(IndexClass::Evens),
            "odds" => Ok(IndexClass::Odds),
            "finite" => parse_list(rest).map(IndexClass::Finite),
            "cofinite" => parse_list(rest).map(IndexClass::Cofinite),
            "mod" => {
                let (m, r) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::UnsupportedIndexClass(s.to_string()))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::UnsupportedIndexClass(s.to_string()))
                };
                Ok(IndexClass::Residue {
                    modulus: parse(m)?,
                    residue: parse(r)?,
                })
            }
            _ => Err(Error::UnsupportedIndexClass(s.to_string())),
        }
    }
}

/// Is the index set a member of the filter?
///
/// Cofinite sets always are, finite sets never are, and the two parity
/// classes are decided by the parity oracle. Residue classes other than
/// modulus 1 and 2 are outside the supported family.
pub fn filter_member(class: &IndexClass, fs: &FilterSemantics) -> Result<Verdict3> {
    let h = fs.horizon();
    match class {
        IndexClass::Cofinite(ex) => {
            let from = ex.iter().copied().max().map_or(1, |m| m + 1);
            Ok(Verdict3::holds(Witness::Index(from), h))
        }
        IndexClass::Finite(members) => {
            let from = members.iter().copied().max().map_or(1, |m| m + 1);
            Ok(Verdict3::fails(Witness::Index(from), h))
        }
        IndexClass::Evens => Ok(parity_member(Lattice::Evens, fs)),
        IndexClass::Odds => Ok(parity_member(Lattice::Odds, fs)),
        IndexClass::Residue { modulus: 1, .. } => Ok(Verdict3::holds(Witness::Index(1), h)),
        IndexClass::Residue {
            modulus: 2,
            residue,
        } => {
            let set = if residue % 2 == 0 {
                Lattice::Evens
            } else {
                Lattice::Odds
            };
            Ok(parity_member(set, fs))
        }
        IndexClass::Residue { modulus, residue } => Err(Error::UnsupportedIndexClass(format!(
            "residue class {residue} mod {modulus}"
        ))),
    }
}

fn parity_member(set: Lattice, fs: &FilterSemantics) -> Verdict3 {
    let h = fs.horizon();
    match fs.parity_set() {
        None => Verdict3::undetermined(h),
        Some(chosen) if chosen == set => Verdict3::holds(Witness::Index(set.index(1)), h),
        Some(_) => Verdict3::fails(Witness::Index(set.index(1)), h),
    }
}

/// The examined positions of a lattice under a semantics.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    pub set: Lattice,
    pub max_pos: u64,
    pub window: u64,
}

impl Plan {
    pub fn new(set: Lattice, fs: &FilterSemantics) -> Plan {
        Plan {
            set,
            max_pos: set.count(fs.horizon()),
            window: fs.tail_window(),
        }
    }

    pub fn index(&self, pos: u64) -> u64 {
        self.set.index(pos)
    }

    /// Inclusive position ranges, ascending and disjoint.
    pub fn windows(&self) -> Vec<(u64, u64)> {
        let w = self.window;
        if self.max_pos < w {
            return vec![];
        }
        let mut out = Vec::new();
        let mut start = 1u64;
        while start + w - 1 <= self.max_pos {
            out.push((start, start + w - 1));
            let next = (start + w).max((start as f64 * 1.5).ceil() as u64);
            start = next;
        }
        let last_end = out.last().map_or(0, |&(_, e)| e);
        if last_end < self.max_pos {
            let s = (self.max_pos + 1 - w).max(last_end + 1);
            out.push((s, self.max_pos));
        }
        out
    }

    pub fn positions(&self) -> Vec<u64> {
        self.windows()
            .into_iter()
            .flat_map(|(a, b)| a..=b)
            .collect()
    }
}

/// First index of a certified tail on which `p` holds: `p` holds at every
/// examined index from there to the horizon and on `tail_window` consecutive
/// lattice members starting there.
pub(crate) fn tail_start(p: &dyn Fn(u64) -> bool, plan: &Plan) -> Option<u64> {
    let positions = plan.positions();
    if positions.is_empty() {
        return None;
    }
    let last_fail = positions.iter().rev().find(|&&pos| !p(plan.index(pos)));
    let mut start = match last_fail {
        None => positions[0],
        Some(&f) => f + 1,
    };
    loop {
        if start + plan.window - 1 > plan.max_pos {
            return None;
        }
        let bad = (start..start + plan.window)
            .rev()
            .find(|&pos| !p(plan.index(pos)));
        match bad {
            None => return Some(plan.index(start)),
            Some(b) => start = b + 1,
        }
    }
}

/// Indices where `p` holds, if it holds somewhere in every window of the
/// later half of the plan (always including the window at the horizon).
pub(crate) fn recurrences(p: &dyn Fn(u64) -> bool, plan: &Plan) -> Option<Vec<u64>> {
    let windows = plan.windows();
    if windows.is_empty() {
        return None;
    }
    let from = if windows.len() >= 2 {
        windows.len() / 2
    } else {
        0
    };
    let mut hits = Vec::new();
    for &(a, b) in &windows[from..] {
        let before = hits.len();
        hits.extend((a..=b).map(|pos| plan.index(pos)).filter(|&n| p(n)));
        if hits.len() == before {
            return None;
        }
    }
    Some(hits)
}

/// Does `p` hold on a filter member? Holds with the tail start, Fails with the
/// start of a tail where `p` is false, Undetermined when neither tail can be
/// certified on ℕ⁺ nor on the parity class chosen by the oracle.
pub fn eventually(p: impl Fn(u64) -> bool, fs: &FilterSemantics) -> Verdict3 {
    for set in fs.decision_sets() {
        let v = eventually_in(&p, set, fs);
        if !v.is_undetermined() {
            return v;
        }
    }
    Verdict3::undetermined(fs.horizon())
}

/// [`eventually`] restricted to one lattice, without parity fallback.
pub fn eventually_in(p: &dyn Fn(u64) -> bool, set: Lattice, fs: &FilterSemantics) -> Verdict3 {
    let plan = Plan::new(set, fs);
    let h = fs.horizon();
    if let Some(n) = tail_start(p, &plan) {
        return Verdict3::holds(Witness::Index(n), h);
    }
    if let Some(n) = tail_start(&|k| !p(k), &plan) {
        return Verdict3::fails(Witness::Index(n), h);
    }
    Verdict3::undetermined(h)
}

/// Does `p` recur to the horizon? Holds with the recurring indices; Fails when
/// `p` is eventually false. Decided on the parity class when the oracle names
/// one, on ℕ⁺ otherwise.
pub fn frequently(p: impl Fn(u64) -> bool, fs: &FilterSemantics) -> Verdict3 {
    let set = fs.parity_set().unwrap_or(Lattice::All);
    let plan = Plan::new(set, fs);
    let h = fs.horizon();
    let hits = recurrences(&p, &plan).or_else(|| {
        let from = tail_start(&p, &plan)?;
        Some(
            plan.positions()
                .into_iter()
                .map(|pos| plan.index(pos))
                .filter(|&n| n >= from)
                .collect(),
        )
    });
    if let Some(hits) = hits {
        return Verdict3::holds(
            Witness::Recurring {
                bound: 0.0,
                count: hits.len() as u64,
                indices: hits,
            },
            h,
        );
    }
    if let Some(n) = tail_start(&|k| !p(k), &plan) {
        return Verdict3::fails(Witness::Index(n), h);
    }
    Verdict3::undetermined(h)
}

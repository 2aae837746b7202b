//! Three-valued verdicts with witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    Holds,
    Fails,
    Undetermined,
}

impl Truth {
    /// Kleene conjunction.
    pub fn and(self, other: Truth) -> Truth {
        use Truth::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Undetermined, _) | (_, Undetermined) => Undetermined,
            _ => Holds,
        }
    }

    pub fn all<I: IntoIterator<Item = Truth>>(it: I) -> Truth {
        it.into_iter().fold(Truth::Holds, Truth::and)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth::Holds => "holds",
            Truth::Fails => "fails",
            Truth::Undetermined => "undetermined",
        }
    }
}

impl std::ops::Not for Truth {
    type Output = Truth;

    fn not(self) -> Truth {
        match self {
            Truth::Holds => Truth::Fails,
            Truth::Fails => Truth::Holds,
            Truth::Undetermined => Truth::Undetermined,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// What substantiates a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Tail start: the property holds (or fails) from this index on.
    Index(u64),
    /// Tail start projected beyond the horizon from the observed decay rate.
    ProjectedIndex(f64),
    /// A numeric bound.
    Bound(f64),
    /// The bound is exceeded at these examined indices, recurring up to the horizon.
    Recurring {
        bound: f64,
        count: u64,
        indices: Vec<u64>,
    },
    /// Order relation certified from `index` on.
    Relation { relation: String, index: u64 },
    /// A tolerance still exceeded, recurring to the horizon, at a sample point.
    GridPoint { eps: f64, point: f64, index: u64 },
    /// A computed real value.
    Value(f64),
    /// An exact rational, rendered `p/q`.
    Exact(String),
    /// Values that disagree.
    Divergent(Vec<f64>),
    /// Horizon exhausted without a decision.
    Exhausted(u64),
    /// A module error encountered while producing the verdict.
    Error(String),
}

impl Witness {
    /// Flat `key=value` rendering.
    pub fn flatten(&self) -> String {
        match self {
            Witness::Index(n) => format!("index={n}"),
            Witness::ProjectedIndex(x) => format!("projected_index={x:e}"),
            Witness::Bound(b) => format!("bound={b}"),
            Witness::Recurring {
                bound,
                count,
                indices,
            } => format!(
                "bound={bound};count={count};first={};last={}",
                indices.first().copied().unwrap_or(0),
                indices.last().copied().unwrap_or(0)
            ),
            Witness::Relation { relation, index } => format!("relation={relation};index={index}"),
            Witness::GridPoint { eps, point, index } => {
                format!("eps={eps};point={point};index={index}")
            }
            Witness::Value(v) => format!("value={v}"),
            Witness::Exact(s) => format!("exact={s}"),
            Witness::Divergent(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                format!("divergent={}", parts.join("|"))
            }
            Witness::Exhausted(h) => format!("horizon={h}"),
            Witness::Error(e) => format!("error={e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict3 {
    pub value: Truth,
    pub witness: Witness,
    pub horizon_used: u64,
}

impl Verdict3 {
    pub fn holds(witness: Witness, horizon: u64) -> Self {
        Verdict3 {
            value: Truth::Holds,
            witness,
            horizon_used: horizon,
        }
    }

    pub fn fails(witness: Witness, horizon: u64) -> Self {
        Verdict3 {
            value: Truth::Fails,
            witness,
            horizon_used: horizon,
        }
    }

    pub fn undetermined(horizon: u64) -> Self {
        Verdict3 {
            value: Truth::Undetermined,
            witness: Witness::Exhausted(horizon),
            horizon_used: horizon,
        }
    }

    pub fn is_holds(&self) -> bool {
        self.value == Truth::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.value == Truth::Fails
    }

    pub fn is_undetermined(&self) -> bool {
        self.value == Truth::Undetermined
    }

    /// Swap Holds and Fails, keeping the witness.
    pub fn negate(self) -> Self {
        Verdict3 {
            value: !self.value,
            ..self
        }
    }
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.witness.flatten())
    }
}

//! Lazily evaluated, memoized sequences indexed from 1.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;

use crate::value::{Value, ValueKind};

type Generator = dyn Fn(u64) -> Value + Send + Sync;

struct Inner {
    kind: ValueKind,
    tag: Option<String>,
    constant: Option<Value>,
    gen: Box<Generator>,
    cache: RwLock<HashMap<u64, Value>>,
}

/// A variable quantity: a total generator `n -> value` on the positive integers.
///
/// Cloning is cheap and shares the memo table. Evaluation is safe from
/// multiple threads; a term is computed at most a handful of times under
/// contention and the first stored value wins.
#[derive(Clone)]
pub struct Seq(Arc<Inner>);

impl Seq {
    fn build(kind: ValueKind, gen: Box<Generator>) -> Seq {
        Seq(Arc::new(Inner {
            kind,
            tag: None,
            constant: None,
            gen,
            cache: RwLock::new(HashMap::new()),
        }))
    }

    /// A sequence of exact rational terms.
    pub fn exact<F>(gen: F) -> Seq
    where
        F: Fn(u64) -> BigRational + Send + Sync + 'static,
    {
        Seq::build(ValueKind::Exact, Box::new(move |n| Value::Exact(gen(n))))
    }

    /// A sequence of floating terms.
    pub fn float<F>(gen: F) -> Seq
    where
        F: Fn(u64) -> f64 + Send + Sync + 'static,
    {
        Seq::build(ValueKind::Float, Box::new(move |n| Value::Float(gen(n))))
    }

    /// A sequence whose generator yields [`Value`]s of the declared kind.
    /// Exact values produced under a `Float` declaration are converted.
    pub fn from_values<F>(kind: ValueKind, gen: F) -> Seq
    where
        F: Fn(u64) -> Value + Send + Sync + 'static,
    {
        match kind {
            ValueKind::Exact => Seq::build(kind, Box::new(gen)),
            ValueKind::Float => Seq::build(
                kind,
                Box::new(move |n| match gen(n) {
                    Value::Exact(q) => Value::Float(Value::Exact(q).to_f64()),
                    v => v,
                }),
            ),
        }
    }

    pub fn constant(v: Value) -> Seq {
        let kind = v.kind();
        Seq(Arc::new(Inner {
            kind,
            tag: None,
            constant: Some(v.clone()),
            gen: Box::new(move |_| v.clone()),
            cache: RwLock::new(HashMap::new()),
        }))
    }

    /// The value of a sequence built by [`Seq::constant`].
    pub fn constant_value(&self) -> Option<&Value> {
        self.0.constant.as_ref()
    }

    pub fn with_tag(self, tag: impl Into<String>) -> Seq {
        let inner = Arc::try_unwrap(self.0).unwrap_or_else(|shared| {
            // Shared: rebuild around the existing sequence so the memo stays valid.
            let s = Seq(shared);
            let kind = s.kind();
            let inner_seq = s.clone();
            Inner {
                kind,
                tag: None,
                constant: s.constant_value().cloned(),
                gen: Box::new(move |n| inner_seq.eval(n)),
                cache: RwLock::new(HashMap::new()),
            }
        });
        Seq(Arc::new(Inner {
            tag: Some(tag.into()),
            ..inner
        }))
    }

    pub fn kind(&self) -> ValueKind {
        self.0.kind
    }

    pub fn tag(&self) -> Option<&str> {
        self.0.tag.as_deref()
    }

    /// The `n`-th term, `n >= 1`.
    pub fn eval(&self, n: u64) -> Value {
        assert!(n >= 1, "sequences are indexed from 1");
        if let Some(v) = self.0.cache.read().expect("seq cache poisoned").get(&n) {
            return v.clone();
        }
        let v = (self.0.gen)(n);
        let mut cache = self.0.cache.write().expect("seq cache poisoned");
        cache.entry(n).or_insert(v).clone()
    }

    pub fn eval_f64(&self, n: u64) -> f64 {
        self.eval(n).to_f64()
    }

    /// Number of memoized terms.
    pub fn cached_len(&self) -> usize {
        self.0.cache.read().expect("seq cache poisoned").len()
    }

    pub fn map<F>(&self, kind: ValueKind, f: F) -> Seq
    where
        F: Fn(u64, Value) -> Value + Send + Sync + 'static,
    {
        let s = self.clone();
        Seq::from_values(kind, move |n| f(n, s.eval(n)))
    }

    pub fn zip<F>(&self, other: &Seq, kind: ValueKind, f: F) -> Seq
    where
        F: Fn(u64, Value, Value) -> Value + Send + Sync + 'static,
    {
        let (a, b) = (self.clone(), other.clone());
        Seq::from_values(kind, move |n| f(n, a.eval(n), b.eval(n)))
    }

    pub fn ptr_eq(&self, other: &Seq) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Seq")
            .field("kind", &self.kind())
            .field("tag", &self.tag())
            .field("cached", &self.cached_len())
            .finish()
    }
}

/// Common generators.
pub mod gen {
    use super::*;
    use crate::value::{integer, rational};

    /// ⟨n⟩
    pub fn identity() -> Seq {
        Seq::exact(|n| integer(n as i64)).with_tag("n")
    }

    /// ⟨c/n⟩
    pub fn reciprocal(c: BigRational) -> Seq {
        Seq::exact(move |n| &c / integer(n as i64))
    }

    /// ⟨1/n⟩
    pub fn harmonic() -> Seq {
        Seq::exact(|n| rational(1, n as i64)).with_tag("1/n")
    }

    /// ⟨1/n^k⟩
    pub fn inverse_power(k: u32) -> Seq {
        Seq::exact(move |n| {
            let d = num_bigint::BigInt::from(n).pow(k);
            BigRational::new(1.into(), d)
        })
        .with_tag(format!("1/n^{k}"))
    }

    /// ⟨(−1)ⁿ/n⟩
    pub fn alternating_harmonic() -> Seq {
        Seq::exact(|n| {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            rational(sign, n as i64)
        })
        .with_tag("(-1)^n/n")
    }

    /// ⟨(−1)ⁿ⟩
    pub fn alternating_sign() -> Seq {
        Seq::exact(|n| integer(if n % 2 == 0 { 1 } else { -1 })).with_tag("(-1)^n")
    }

    /// 1/4, 1/3, 1/6, 1/5, 1/8, 1/7, … : reciprocals with adjacent pairs swapped.
    pub fn swapped_reciprocals() -> Seq {
        Seq::exact(|n| {
            let den = if n % 2 == 1 { n + 3 } else { n + 1 };
            rational(1, den as i64)
        })
        .with_tag("1/4,1/3,1/6,1/5,...")
    }
}

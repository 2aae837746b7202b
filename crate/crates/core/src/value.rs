//! Term values: exact rationals where the generator allows, floats otherwise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Declared value kind of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Exact,
    Float,
}

impl ValueKind {
    /// Kind of a termwise combination.
    pub fn join(self, other: ValueKind) -> ValueKind {
        if self == ValueKind::Exact && other == ValueKind::Exact {
            ValueKind::Exact
        } else {
            ValueKind::Float
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Value {
    pub fn zero(kind: ValueKind) -> Value {
        match kind {
            ValueKind::Exact => Value::Exact(BigRational::zero()),
            ValueKind::Float => Value::Float(0.0),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Value {
        Value::Exact(rational(num, den))
    }

    pub fn int(n: i64) -> Value {
        Value::Exact(integer(n))
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Exact(_) => ValueKind::Exact,
            Value::Float(_) => ValueKind::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => ratio_to_f64(q),
            Value::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Float(x) => *x == 0.0,
        }
    }

    pub fn abs(&self) -> Value {
        match self {
            Value::Exact(q) => Value::Exact(q.abs()),
            Value::Float(x) => Value::Float(x.abs()),
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(q) => Value::Exact(-q),
            Value::Float(x) => Value::Float(-x),
        }
    }

    pub fn add(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Float(self.to_f64() + rhs.to_f64()),
        }
    }

    pub fn sub(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a - b),
            _ => Value::Float(self.to_f64() - rhs.to_f64()),
        }
    }

    pub fn mul(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Float(self.to_f64() * rhs.to_f64()),
        }
    }

    /// Division; `None` when the divisor is zero.
    pub fn checked_div(&self, rhs: &Value) -> Option<Value> {
        if rhs.is_zero() {
            return None;
        }
        Some(match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a / b),
            _ => Value::Float(self.to_f64() / rhs.to_f64()),
        })
    }

    pub fn scale(&self, k: i64) -> Value {
        self.mul(&Value::int(k))
    }

    /// Total order for exact pairs; floats compare through `f64` (NaN sorts as unordered).
    pub fn partial_cmp_value(&self, rhs: &Value) -> Option<Ordering> {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&rhs.to_f64()),
        }
    }

    pub fn same(&self, rhs: &Value) -> bool {
        self.partial_cmp_value(rhs) == Some(Ordering::Equal)
    }

    /// Exact value of a finite float, or the float itself when exactness is not wanted.
    pub fn from_f64_exact(x: f64) -> Option<Value> {
        BigRational::from_f64(x).map(Value::Exact)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::Exact(q)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::int(n)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// `BigRational::to_f64` returns `None` when numerator or denominator overflow
/// `f64`; fall back to shifting both down to a common scale.
fn ratio_to_f64(q: &BigRational) -> f64 {
    if let Some(x) = q.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    let (n, d) = (q.numer(), q.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Value::ratio(1, 3);
        let b = Value::ratio(1, 6);
        assert_eq!(a.add(&b), Value::ratio(1, 2));
        assert_eq!(a.mul(&b), Value::ratio(1, 18));
        assert_eq!(a.checked_div(&b), Some(Value::int(2)));
        assert_eq!(a.checked_div(&Value::int(0)), None);
    }

    #[test]
    fn mixed_arithmetic_is_float() {
        let v = Value::ratio(1, 2).add(&Value::Float(0.25));
        assert_eq!(v, Value::Float(0.75));
        assert_eq!(ValueKind::Exact.join(ValueKind::Float), ValueKind::Float);
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigRational::new(BigInt::from(1) << 2000u32, (BigInt::from(1) << 1999u32) * 3);
        assert!((ratio_to_f64(&big) - 2.0 / 3.0).abs() < 1e-12);
    }
}

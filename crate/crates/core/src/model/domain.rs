use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// 1-based feature index, `x1..xm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureId(pub u32);

impl FeatureId {
    pub fn from_index(index: usize) -> Self {
        FeatureId(index as u32 + 1)
    }

    /// Zero-based position in the schema.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    /// `{0, 1}`
    Boolean,
    Categorical(Vec<String>),
    /// Inclusive integer interval.
    OrdinalInt { lo: i64, hi: i64 },
    /// Inclusive real interval.
    OrdinalReal { lo: f64, hi: f64 },
}

impl Domain {
    /// Number of values, `None` for real intervals.
    pub fn size(&self) -> Option<u128> {
        match self {
            Domain::Boolean => Some(2),
            Domain::Categorical(values) => Some(values.len() as u128),
            Domain::OrdinalInt { lo, hi } => Some((*hi as i128 - *lo as i128 + 1) as u128),
            Domain::OrdinalReal { .. } => None,
        }
    }

    /// The `k`-th value in declared order (enumerable domains only).
    pub fn value_at(&self, k: usize) -> Option<Value> {
        match self {
            Domain::Boolean if k < 2 => Some(Value::Int(k as i64)),
            Domain::Categorical(values) => values.get(k).cloned().map(Value::Sym),
            Domain::OrdinalInt { lo, hi } => {
                let v = lo.checked_add(k as i64)?;
                (v <= *hi).then_some(Value::Int(v))
            }
            _ => None,
        }
    }

    /// Position of `value` in declared order (enumerable domains only).
    pub fn index_of(&self, value: &Value) -> Option<usize> {
        match (self, value) {
            (Domain::Boolean, Value::Int(v @ (0 | 1))) => Some(*v as usize),
            (Domain::Categorical(values), Value::Sym(s)) => values.iter().position(|v| v == s),
            (Domain::OrdinalInt { lo, hi }, Value::Int(v)) if v >= lo && v <= hi => {
                Some((*v - *lo) as usize)
            }
            _ => None,
        }
    }

    pub fn contains(&self, value: &Value) -> bool {
        match (self, value) {
            (Domain::OrdinalReal { lo, hi }, v) => match v.as_f64() {
                Some(x) => x >= *lo && x <= *hi,
                None => false,
            },
            _ => self.index_of(value).is_some(),
        }
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self, Domain::Boolean)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Domain::Boolean => "boolean",
            Domain::Categorical(_) => "categorical",
            Domain::OrdinalInt { .. } => "ordinal_int",
            Domain::OrdinalReal { .. } => "ordinal_real",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Feature {
    pub id: FeatureId,
    pub name: String,
    pub domain: Domain,
}

impl Feature {
    pub fn new(id: u32, name: impl Into<String>, domain: Domain) -> Self {
        Feature {
            id: FeatureId(id),
            name: name.into(),
            domain,
        }
    }
}

/// The feature space: features `1..=m` in id order.
#[derive(Clone, Debug, PartialEq)]
pub struct Schema {
    features: Vec<Feature>,
}

impl Schema {
    pub fn new(mut features: Vec<Feature>) -> Result<Self> {
        features.sort_by_key(|f| f.id);
        for (i, f) in features.iter().enumerate() {
            if f.id != FeatureId::from_index(i) {
                return Err(Error::Schema(format!(
                    "feature ids must be exactly 1..{}, found {} at position {}",
                    features.len(),
                    f.id.0,
                    i + 1
                )));
            }
            match &f.domain {
                Domain::Boolean => {}
                Domain::Categorical(values) => {
                    if values.is_empty() {
                        return Err(Error::Schema(format!("{}: empty categorical domain", f.id)));
                    }
                    for (k, v) in values.iter().enumerate() {
                        if values[..k].contains(v) {
                            return Err(Error::Schema(format!(
                                "{}: duplicate categorical value `{v}`",
                                f.id
                            )));
                        }
                    }
                }
                Domain::OrdinalInt { lo, hi } => {
                    if lo > hi {
                        return Err(Error::Schema(format!("{}: lo > hi", f.id)));
                    }
                }
                Domain::OrdinalReal { lo, hi } => {
                    if !lo.is_finite() || !hi.is_finite() || lo > hi {
                        return Err(Error::Schema(format!(
                            "{}: real interval must be finite with lo <= hi",
                            f.id
                        )));
                    }
                }
            }
        }
        Ok(Schema { features })
    }

    /// `m` boolean features named `x1..xm`.
    pub fn boolean(m: usize) -> Self {
        Schema {
            features: (0..m)
                .map(|i| Feature {
                    id: FeatureId::from_index(i),
                    name: format!("x{}", i + 1),
                    domain: Domain::Boolean,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn feature(&self, id: FeatureId) -> Result<&Feature> {
        if id.0 == 0 {
            return Err(Error::SchemaMismatch("feature id 0 is not valid".into()));
        }
        self.features
            .get(id.index())
            .ok_or_else(|| Error::SchemaMismatch(format!("unknown feature {id}")))
    }

    pub fn domain(&self, id: FeatureId) -> Result<&Domain> {
        self.feature(id).map(|f| &f.domain)
    }

    pub fn by_name(&self, name: &str) -> Option<&Feature> {
        self.features.iter().find(|f| f.name == name)
    }

    pub fn is_boolean(&self) -> bool {
        self.features.iter().all(|f| f.domain.is_boolean())
    }

    /// Number of complete points, `None` when some domain is real-valued or
    /// the product overflows.
    pub fn point_count(&self) -> Option<u128> {
        self.features
            .iter()
            .try_fold(1u128, |acc, f| acc.checked_mul(f.domain.size()?))
    }
}

/// A feature value. Booleans are `Int(0)` / `Int(1)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Sym(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(v) => Some(*v as f64),
            Value::Real(v) => Some(*v),
            Value::Sym(_) => None,
        }
    }

    /// Numeric ordering; symbols only compare equal to themselves.
    pub fn compare(&self, other: &Value) -> Option<Ordering> {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
            (Value::Sym(a), Value::Sym(b)) => (a == b).then_some(Ordering::Equal),
            (a, b) => a.as_f64()?.partial_cmp(&b.as_f64()?),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<i32> for Value {
    fn from(v: i32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Sym(v.to_string())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Real(v) => write!(f, "{v}"),
            Value::Sym(s) => f.write_str(s),
        }
    }
}

/// A complete point of feature space, one value per feature in id order.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(pub Vec<Value>);

impl Point {
    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn get(&self, id: FeatureId) -> Option<&Value> {
        self.0.get(id.index())
    }

    pub fn check(&self, schema: &Schema) -> Result<()> {
        if self.0.len() != schema.len() {
            return Err(Error::Incomplete(format!(
                "point has {} values, schema has {} features",
                self.0.len(),
                schema.len()
            )));
        }
        for (f, v) in schema.features().iter().zip(&self.0) {
            if !f.domain.contains(v) {
                return Err(Error::Literal {
                    feature: f.id,
                    reason: format!("value {v} outside the {} domain", f.domain.kind_name()),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

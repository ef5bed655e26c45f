use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::restriction::{RealInterval, Restriction, ValueMask};
use super::{Domain, DomainSubset, FeatureId, Point, Schema, Value};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    In,
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Op {
    pub fn token(self) -> &'static str {
        match self {
            Op::In => "in",
            Op::Eq => "eq",
            Op::Lt => "lt",
            Op::Le => "le",
            Op::Gt => "gt",
            Op::Ge => "ge",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Op::In => "∈",
            Op::Eq => "=",
            Op::Lt => "<",
            Op::Le => "≤",
            Op::Gt => ">",
            Op::Ge => "≥",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Operand {
    Set(Vec<Value>),
    Scalar(Value),
}

/// `(feature, op, operand)`: a constraint on one feature.
#[derive(Clone, Debug, PartialEq)]
pub struct Literal {
    pub feature: FeatureId,
    pub op: Op,
    pub operand: Operand,
}

impl Literal {
    pub fn new(feature: FeatureId, op: Op, operand: Operand) -> Self {
        Literal { feature, op, operand }
    }

    /// `x_i ∈ {v}`, the value-level literal used by points and explanations.
    pub fn eq(feature: u32, value: impl Into<Value>) -> Self {
        Literal::new(FeatureId(feature), Op::In, Operand::Set(vec![value.into()]))
    }

    pub fn one_of(feature: u32, values: impl IntoIterator<Item = Value>) -> Self {
        Literal::new(FeatureId(feature), Op::In, Operand::Set(values.into_iter().collect()))
    }

    pub fn cmp(feature: u32, op: Op, value: impl Into<Value>) -> Self {
        Literal::new(FeatureId(feature), op, Operand::Scalar(value.into()))
    }

    /// The single value this literal pins, if it is an `Eq` or singleton `In`.
    pub fn singleton(&self) -> Option<&Value> {
        match (&self.op, &self.operand) {
            (Op::Eq, Operand::Scalar(v)) => Some(v),
            (Op::In, Operand::Set(s)) if s.len() == 1 => Some(&s[0]),
            _ => None,
        }
    }

    fn invalid(&self, reason: impl Into<alloc::string::String>) -> Error {
        Error::Literal {
            feature: self.feature,
            reason: reason.into(),
        }
    }

    fn scalar(&self) -> Result<&Value> {
        match &self.operand {
            Operand::Scalar(v) => Ok(v),
            Operand::Set(_) => Err(self.invalid(format!("`{}` needs a scalar operand", self.op.token()))),
        }
    }

    /// Checks operand shape and that operand values lie in the domain.
    pub fn check(&self, schema: &Schema) -> Result<()> {
        self.restriction(schema).map(|_| ())
    }

    /// `Eq` on boolean/categorical features becomes a singleton `In`.
    pub fn normalized(self, schema: &Schema) -> Result<Literal> {
        self.check(schema)?;
        let domain = schema.domain(self.feature)?;
        match (self.op, self.operand, domain) {
            (Op::Eq, Operand::Scalar(v), Domain::Boolean | Domain::Categorical(_)) => {
                Ok(Literal::new(self.feature, Op::In, Operand::Set(vec![v])))
            }
            (op, operand, _) => Ok(Literal::new(self.feature, op, operand)),
        }
    }

    /// `dom(literal)` projected on its feature.
    pub fn restriction(&self, schema: &Schema) -> Result<Restriction> {
        let domain = schema
            .domain(self.feature)
            .map_err(|_| self.invalid("feature not in schema"))?;
        let check_member = |v: &Value| {
            if domain.contains(v) {
                Ok(())
            } else {
                Err(self.invalid(format!("value {v} outside the {} domain", domain.kind_name())))
            }
        };
        match domain {
            Domain::Boolean | Domain::Categorical(_) => {
                let n = domain.size().unwrap() as usize;
                let mut mask = ValueMask::empty(n);
                match (&self.op, &self.operand) {
                    (Op::In, Operand::Set(values)) => {
                        if values.is_empty() {
                            return Err(self.invalid("empty `in` set"));
                        }
                        for v in values {
                            check_member(v)?;
                            mask.insert(domain.index_of(v).unwrap());
                        }
                    }
                    (Op::Eq, Operand::Scalar(v)) => {
                        check_member(v)?;
                        mask.insert(domain.index_of(v).unwrap());
                    }
                    (Op::In | Op::Eq, _) => return Err(self.invalid("operand shape does not match operator")),
                    (op, _) => {
                        let v = self.scalar()?;
                        if let (Domain::Boolean, Value::Int(x)) = (domain, v) {
                            check_member(v)?;
                            for k in 0..2i64 {
                                let keep = match op {
                                    Op::Lt => k < *x,
                                    Op::Le => k <= *x,
                                    Op::Gt => k > *x,
                                    _ => k >= *x,
                                };
                                if keep {
                                    mask.insert(k as usize);
                                }
                            }
                        } else {
                            return Err(self.invalid(format!(
                                "`{}` is not defined on categorical features",
                                op.token()
                            )));
                        }
                    }
                }
                Ok(Restriction::Values(mask))
            }
            Domain::OrdinalInt { lo, hi } => {
                let ranges = match (&self.op, &self.operand) {
                    (Op::In, Operand::Set(values)) => {
                        if values.is_empty() {
                            return Err(self.invalid("empty `in` set"));
                        }
                        let mut r = Vec::new();
                        for v in values {
                            check_member(v)?;
                            let Value::Int(x) = v else { unreachable!() };
                            r.push((*x, *x));
                        }
                        return Ok(Restriction::Ints(r).union(&Restriction::Ints(Vec::new())));
                    }
                    (Op::In, _) => return Err(self.invalid("`in` needs a value set")),
                    (op, _) => {
                        let v = self.scalar()?;
                        check_member(v)?;
                        let Value::Int(x) = v else {
                            return Err(self.invalid(format!("value {v} is not an integer")));
                        };
                        let x = *x;
                        match op {
                            Op::Eq => (x, x),
                            Op::Lt => (*lo, x.saturating_sub(1)),
                            Op::Le => (*lo, x),
                            Op::Gt => (x.saturating_add(1), *hi),
                            _ => (x, *hi),
                        }
                    }
                };
                let (a, b) = (ranges.0.max(*lo), ranges.1.min(*hi));
                Ok(Restriction::Ints(if a <= b { vec![(a, b)] } else { Vec::new() }))
            }
            Domain::OrdinalReal { lo, hi } => {
                let full = RealInterval::closed(*lo, *hi);
                let iv = match (&self.op, &self.operand) {
                    (Op::In, Operand::Set(values)) => {
                        if values.is_empty() {
                            return Err(self.invalid("empty `in` set"));
                        }
                        let mut r = Restriction::Reals(Vec::new());
                        for v in values {
                            check_member(v)?;
                            let x = v.as_f64().unwrap();
                            r = r.union(&Restriction::Reals(vec![RealInterval::closed(x, x)]));
                        }
                        return Ok(r);
                    }
                    (Op::In, _) => return Err(self.invalid("`in` needs a value set")),
                    (op, _) => {
                        let v = self.scalar()?;
                        check_member(v)?;
                        let x = match v.as_f64() {
                            Some(x) if x.is_finite() => x,
                            _ => return Err(self.invalid(format!("value {v} is not a finite number"))),
                        };
                        let (l, lc, h, hc) = match op {
                            Op::Eq => (x, true, x, true),
                            Op::Lt => (f64::NEG_INFINITY, false, x, false),
                            Op::Le => (f64::NEG_INFINITY, false, x, true),
                            Op::Gt => (x, false, f64::INFINITY, false),
                            _ => (x, true, f64::INFINITY, false),
                        };
                        RealInterval {
                            lo: l,
                            lo_closed: lc,
                            hi: h,
                            hi_closed: hc,
                        }
                    }
                };
                let r = Restriction::Reals(vec![full]).intersect(&Restriction::Reals(vec![iv]));
                Ok(r)
            }
        }
    }

    /// Direct evaluation on a value, independent of [`Restriction`].
    pub fn satisfied_by(&self, value: &Value) -> bool {
        use core::cmp::Ordering::*;
        match (&self.op, &self.operand) {
            (Op::In, Operand::Set(values)) => values.iter().any(|v| v.compare(value) == Some(Equal)),
            (op, Operand::Scalar(v)) => match value.compare(v) {
                Some(ord) => match op {
                    Op::Eq => ord == Equal,
                    Op::Lt => ord == Less,
                    Op::Le => ord != Greater,
                    Op::Gt => ord == Greater,
                    Op::Ge => ord != Less,
                    Op::In => false,
                },
                None => false,
            },
            _ => false,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.singleton() {
            return write!(f, "({},{})", self.feature, v);
        }
        match &self.operand {
            Operand::Set(values) => {
                write!(f, "({},{{", self.feature)?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("},∈)")
            }
            Operand::Scalar(v) => write!(f, "({},{},{})", self.feature, v, self.op.symbol()),
        }
    }
}

/// A set of literals read as their conjunction. Literals are kept sorted by
/// feature (stable), several literals on one feature are allowed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialAssignment {
    literals: Vec<Literal>,
}

impl PartialAssignment {
    pub fn new(mut literals: Vec<Literal>) -> Self {
        literals.sort_by_key(|l| l.feature);
        literals.dedup();
        PartialAssignment { literals }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Value-level assignment from `(feature, value)` pairs.
    pub fn from_pairs<V: Into<Value>>(pairs: impl IntoIterator<Item = (u32, V)>) -> Self {
        Self::new(pairs.into_iter().map(|(f, v)| Literal::eq(f, v)).collect())
    }

    pub fn from_point(point: &Point) -> Self {
        PartialAssignment {
            literals: point
                .values()
                .iter()
                .enumerate()
                .map(|(i, v)| Literal::eq(i as u32 + 1, v.clone()))
                .collect(),
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Distinct features mentioned, ascending.
    pub fn features(&self) -> Vec<FeatureId> {
        let mut out: Vec<FeatureId> = self.literals.iter().map(|l| l.feature).collect();
        out.dedup();
        out
    }

    pub fn without_feature(&self, feature: FeatureId) -> Self {
        PartialAssignment {
            literals: self.literals.iter().filter(|l| l.feature != feature).cloned().collect(),
        }
    }

    /// Keeps only literals whose feature satisfies `keep`.
    pub fn retain_features(&self, keep: impl Fn(FeatureId) -> bool) -> Self {
        PartialAssignment {
            literals: self.literals.iter().filter(|l| keep(l.feature)).cloned().collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.literals.iter().chain(&other.literals).cloned().collect())
    }

    pub fn dom(&self, schema: &Schema) -> Result<DomainSubset> {
        DomainSubset::from_literals(schema, &self.literals)
    }

    /// `dom(A) ≠ ∅`.
    pub fn is_consistent(&self, schema: &Schema) -> Result<bool> {
        Ok(!self.dom(schema)?.is_empty())
    }

    /// Interprets a complete assignment (one pinned value per feature) as a point.
    pub fn to_point(&self, schema: &Schema) -> Result<Point> {
        let mut values: Vec<Option<Value>> = vec![None; schema.len()];
        for l in &self.literals {
            schema.feature(l.feature)?;
            let v = l.singleton().ok_or_else(|| {
                Error::Incomplete(format!("literal {l} does not pin a single value"))
            })?;
            let slot = &mut values[l.feature.index()];
            match slot {
                Some(prev) if prev != v => return Err(Error::Inconsistent),
                _ => *slot = Some(v.clone()),
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Incomplete(format!("no value for {}", FeatureId::from_index(i)))))
            .collect::<Result<Vec<_>>>()?;
        let p = Point(values);
        p.check(schema)?;
        Ok(p)
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<Literal> for PartialAssignment {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

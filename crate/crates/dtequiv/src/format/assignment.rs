use std::path::Path;

use dtequiv_core::{FeatureId, Literal, Op, Operand, PartialAssignment, Point, Schema, Value};
use serde::{Deserialize, Serialize};

use super::{
    check_version, parse_json, read_file, resolve_feature, value_from_json, value_from_text, value_to_json, FormatError,
    FORMAT_VERSION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpDoc {
    In,
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
}

impl From<Op> for OpDoc {
    fn from(op: Op) -> Self {
        match op {
            Op::In => OpDoc::In,
            Op::Eq => OpDoc::Eq,
            Op::Lt => OpDoc::Lt,
            Op::Le => OpDoc::Le,
            Op::Gt => OpDoc::Gt,
            Op::Ge => OpDoc::Ge,
        }
    }
}

impl From<OpDoc> for Op {
    fn from(op: OpDoc) -> Self {
        match op {
            OpDoc::In => Op::In,
            OpDoc::Eq => Op::Eq,
            OpDoc::Lt => Op::Lt,
            OpDoc::Le => Op::Le,
            OpDoc::Gt => Op::Gt,
            OpDoc::Ge => Op::Ge,
        }
    }
}

/// `{"feature": 2, "op": "in", "values": ["red"]}` or
/// `{"feature": 3, "op": "lt", "value": 2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiteralDoc {
    pub feature: u32,
    pub op: OpDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<serde_json::Value>>,
}

/// Extra fields are ignored, so witness documents read as assignments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub format_version: u32,
    pub literals: Vec<LiteralDoc>,
}

pub(crate) fn literal_to_doc(l: &Literal) -> LiteralDoc {
    let (value, values) = match &l.operand {
        Operand::Scalar(v) => (Some(value_to_json(v)), None),
        Operand::Set(vs) => (None, Some(vs.iter().map(value_to_json).collect())),
    };
    LiteralDoc {
        feature: l.feature.0,
        op: l.op.into(),
        value,
        values,
    }
}

pub(crate) fn literal_from_doc(schema: &Schema, doc: &LiteralDoc) -> Result<Literal, FormatError> {
    let f = FeatureId(doc.feature);
    schema.feature(f)?;
    let op: Op = doc.op.into();
    let operand = match (op, &doc.value, &doc.values) {
        (Op::In, None, Some(vs)) => Operand::Set(
            vs.iter()
                .map(|v| value_from_json(schema, f, v))
                .collect::<Result<_, _>>()?,
        ),
        (Op::In, _, _) => return Err(FormatError::Invalid("`in` needs `values` and no `value`".into())),
        (_, Some(v), None) => Operand::Scalar(value_from_json(schema, f, v)?),
        (op, _, _) => {
            return Err(FormatError::Invalid(format!("`{}` needs `value` and no `values`", op.token())));
        }
    };
    Ok(Literal::new(f, op, operand).normalized(schema)?)
}

pub fn assignment_to_doc(a: &PartialAssignment) -> AssignmentDoc {
    AssignmentDoc {
        format_version: FORMAT_VERSION,
        literals: a.literals().iter().map(literal_to_doc).collect(),
    }
}

pub fn assignment_to_json(a: &PartialAssignment) -> String {
    serde_json::to_string_pretty(&assignment_to_doc(a)).expect("assignment documents always serialize")
}

fn from_docs(schema: &Schema, docs: &[LiteralDoc]) -> Result<PartialAssignment, FormatError> {
    let literals = docs
        .iter()
        .enumerate()
        .map(|(k, d)| literal_from_doc(schema, d).map_err(|e| FormatError::Invalid(format!("literals[{k}]: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PartialAssignment::new(literals))
}

/// Accepts an assignment document, a bare array of literals, or a JSON
/// object mapping feature names (or `x<id>`) to values.
pub fn assignment_from_json(schema: &Schema, text: &str) -> Result<PartialAssignment, FormatError> {
    let value: serde_json::Value = parse_json(text)?;
    match &value {
        serde_json::Value::Array(_) => from_docs(schema, &parse_json::<Vec<LiteralDoc>>(text)?),
        serde_json::Value::Object(map) if map.contains_key("literals") => {
            let doc: AssignmentDoc = parse_json(text)?;
            check_version(doc.format_version)?;
            from_docs(schema, &doc.literals)
        }
        serde_json::Value::Object(map) => {
            let mut literals = Vec::with_capacity(map.len());
            for (k, v) in map {
                let f = resolve_feature(schema, k)?;
                literals.push(pin(schema, f, value_from_json(schema, f, v)?)?);
            }
            Ok(PartialAssignment::new(literals))
        }
        other => Err(FormatError::Invalid(format!("expected an assignment, found {other}"))),
    }
}

fn pin(schema: &Schema, f: FeatureId, v: Value) -> Result<Literal, FormatError> {
    let l = Literal::eq(f.0, v);
    l.check(schema)?;
    Ok(l)
}

/// Splits on commas outside brackets.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().filter(|p| !p.trim().is_empty()).collect()
}

/// `{x1:0,x2:1}`, `{colour:[red,blue], n:2}`: keys are feature names or
/// `x<id>`, a bracketed list pins the feature to a set of values.
pub fn parse_inline(schema: &Schema, text: &str) -> Result<PartialAssignment, FormatError> {
    let body = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| FormatError::Invalid(format!("`{text}` is not of the form {{x1:0,x2:1}}")))?;
    let mut literals = Vec::new();
    for part in split_top(body) {
        let (key, val) = part
            .split_once(':')
            .ok_or_else(|| FormatError::Invalid(format!("`{}` is not a key:value pair", part.trim())))?;
        let f = resolve_feature(schema, key)?;
        let val = val.trim();
        let literal = match val.strip_prefix('[').and_then(|v| v.strip_suffix(']')) {
            Some(list) => {
                let values = split_top(list)
                    .into_iter()
                    .map(|v| value_from_text(schema, f, v))
                    .collect::<Result<Vec<_>, _>>()?;
                let l = Literal::one_of(f.0, values);
                l.check(schema)?;
                l
            }
            None => pin(schema, f, value_from_text(schema, f, val)?)?,
        };
        literals.push(literal);
    }
    Ok(PartialAssignment::new(literals))
}

/// An inline JSON assignment, the `{x1:0}` shorthand, or a path to a document.
pub fn parse_assignment_arg(schema: &Schema, arg: &str) -> Result<PartialAssignment, FormatError> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        if serde_json::from_str::<serde_json::Value>(t).is_ok() {
            return assignment_from_json(schema, t);
        }
        if t.starts_with('{') {
            return parse_inline(schema, t);
        }
        return assignment_from_json(schema, t);
    }
    assignment_from_json(schema, &read_file(Path::new(arg))?)
}

/// A value tuple `(0,1)` in feature order, or a complete assignment.
pub fn parse_point_arg(schema: &Schema, arg: &str) -> Result<Point, FormatError> {
    let t = arg.trim();
    if let Some(body) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let parts = split_top(body);
        if parts.len() != schema.len() {
            return Err(FormatError::Invalid(format!(
                "point has {} values, schema has {} features",
                parts.len(),
                schema.len()
            )));
        }
        let values = parts
            .iter()
            .enumerate()
            .map(|(i, p)| value_from_text(schema, FeatureId::from_index(i), p))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Point(values));
    }
    Ok(parse_assignment_arg(schema, arg)?.to_point(schema)?)
}

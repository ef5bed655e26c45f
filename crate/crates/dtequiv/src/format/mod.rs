//! Versioned JSON documents for trees, assignments, DNFs and verdicts, plus
//! the inline assignment shorthand `{x1:0,x2:1}`.
//!
//! Every document carries `"format_version": 1`. Values are typed by the
//! feature they belong to: integers for boolean and ordinal-int features
//! (`true`/`false` are accepted for booleans), strings for categorical
//! features, numbers for ordinal-real features.

mod assignment;
mod dnf;
mod tree;
mod verdict;

use std::path::Path;

use dtequiv_core::{Domain, FeatureId, Schema, Value};
use serde::de::DeserializeOwned;

pub use assignment::{
    assignment_from_json, assignment_to_doc, assignment_to_json, parse_assignment_arg, parse_inline, parse_point_arg,
    AssignmentDoc, LiteralDoc, OpDoc,
};
pub use dnf::{dnf_from_json, dnf_to_doc, dnf_to_json, DnfDoc, DnfLiteralDoc};
pub use tree::{
    read_tree, tree_from_doc, tree_from_json, tree_to_doc, tree_to_json, DomainDoc, EdgeDoc, FeatureDoc, NodeDoc,
    TreeDoc,
};
pub use verdict::{verdict_to_doc, witness_from_json, VerdictDoc, WitnessDoc};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Model(#[from] dtequiv_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl FormatError {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            FormatError::Parse { .. } => "parse",
            FormatError::Version(_) => "version",
            FormatError::Invalid(_) => "invalid",
            FormatError::Model(_) => "model",
            FormatError::Io { .. } => "io",
        }
    }
}

pub(crate) fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        FormatError::Parse {
            path,
            message: e.into_inner().to_string(),
        }
    })
}

pub(crate) fn check_version(v: u32) -> Result<(), FormatError> {
    if v != FORMAT_VERSION {
        return Err(FormatError::Version(v));
    }
    Ok(())
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a JSON value as a value of `feature`'s domain.
pub fn value_from_json(schema: &Schema, feature: FeatureId, v: &serde_json::Value) -> Result<Value, FormatError> {
    let domain = schema.domain(feature)?;
    let bad = || FormatError::Invalid(format!("{v} is not a {} value of {feature}", domain.kind_name()));
    let value = match (domain, v) {
        (Domain::Boolean, serde_json::Value::Bool(b)) => Value::Int(*b as i64),
        (Domain::Boolean | Domain::OrdinalInt { .. }, serde_json::Value::Number(n)) => {
            Value::Int(n.as_i64().ok_or_else(bad)?)
        }
        (Domain::Categorical(_), serde_json::Value::String(s)) => Value::Sym(s.clone()),
        // integral literals stay `Int` so documents round-trip exactly
        (Domain::OrdinalReal { .. }, serde_json::Value::Number(n)) => match n.as_i64() {
            Some(i) => Value::Int(i),
            None => Value::Real(n.as_f64().ok_or_else(bad)?),
        },
        _ => return Err(bad()),
    };
    if !domain.contains(&value) {
        return Err(FormatError::Invalid(format!("{value} lies outside the domain of {feature}")));
    }
    Ok(value)
}

pub fn value_to_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Int(i) => serde_json::Value::from(*i),
        Value::Real(x) => serde_json::Value::from(*x),
        Value::Sym(s) => serde_json::Value::from(s.as_str()),
    }
}

/// Reads shorthand text (`0`, `true`, `red`, `2.5`) as a value of `feature`.
pub fn value_from_text(schema: &Schema, feature: FeatureId, text: &str) -> Result<Value, FormatError> {
    let domain = schema.domain(feature)?;
    let text = text.trim();
    let json = match domain {
        Domain::Categorical(_) => serde_json::Value::from(text.trim_matches('"')),
        _ => serde_json::from_str(text)
            .map_err(|_| FormatError::Invalid(format!("`{text}` is not a {} value of {feature}", domain.kind_name())))?,
    };
    value_from_json(schema, feature, &json)
}

/// Resolves a feature reference: a declared name, or `x<id>`.
pub fn resolve_feature(schema: &Schema, key: &str) -> Result<FeatureId, FormatError> {
    let key = key.trim().trim_matches('"');
    if let Some(f) = schema.by_name(key) {
        return Ok(f.id);
    }
    key.strip_prefix('x')
        .and_then(|n| n.parse::<u32>().ok())
        .map(FeatureId)
        .filter(|f| schema.feature(*f).is_ok())
        .ok_or_else(|| FormatError::Invalid(format!("unknown feature `{key}`")))
}

#[cfg(test)]
mod tests;

use dtequiv_core::qm::{ClassDnf, DnfKind, Polarity, Term};
use dtequiv_core::FeatureId;
use serde::{Deserialize, Serialize};

use super::{check_version, parse_json, FormatError, FORMAT_VERSION};

/// A boolean literal: `value` 1 is `x`, 0 is `~x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DnfLiteralDoc {
    pub feature: u32,
    pub value: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DnfDoc {
    pub format_version: u32,
    pub class: String,
    /// `raw`, `bcf` or `minimized`.
    pub kind: String,
    pub width: usize,
    pub terms: Vec<Vec<DnfLiteralDoc>>,
}

pub fn dnf_to_doc(dnf: &ClassDnf) -> DnfDoc {
    DnfDoc {
        format_version: FORMAT_VERSION,
        class: dnf.class.clone(),
        kind: dnf.kind.name().to_string(),
        width: dnf.width,
        terms: dnf
            .terms
            .iter()
            .map(|t| {
                t.literals()
                    .map(|(f, p)| DnfLiteralDoc {
                        feature: f.0,
                        value: (p == Polarity::Positive) as u8,
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn dnf_to_json(dnf: &ClassDnf) -> String {
    serde_json::to_string_pretty(&dnf_to_doc(dnf)).expect("dnf documents always serialize")
}

pub fn dnf_from_json(text: &str) -> Result<ClassDnf, FormatError> {
    let doc: DnfDoc = parse_json(text)?;
    check_version(doc.format_version)?;
    let kind = match doc.kind.as_str() {
        "raw" => DnfKind::Raw,
        "bcf" => DnfKind::Bcf,
        "minimized" => DnfKind::Minimized,
        other => return Err(FormatError::Invalid(format!("unknown dnf kind `{other}`"))),
    };
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (k, lits) in doc.terms.iter().enumerate() {
        let mut t = Term::top(doc.width);
        for l in lits {
            if l.feature == 0 || l.feature as usize > doc.width || l.value > 1 {
                return Err(FormatError::Invalid(format!(
                    "terms[{k}]: literal (x{}, {}) outside width {}",
                    l.feature, l.value, doc.width
                )));
            }
            let p = if l.value == 1 { Polarity::Positive } else { Polarity::Negative };
            t.set(FeatureId(l.feature), Some(p));
        }
        terms.push(t);
    }
    Ok(ClassDnf::new(doc.class, kind, doc.width, terms))
}

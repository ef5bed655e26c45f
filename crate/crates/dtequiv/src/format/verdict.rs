use dtequiv_core::equiv::{EquivStats, EquivVerdict, Witness};
use dtequiv_core::{PartialAssignment, Point, Schema};
use serde::{Deserialize, Serialize};

use super::assignment::{assignment_from_json, assignment_to_doc, LiteralDoc};
use super::{check_version, parse_json, FormatError, FORMAT_VERSION};

/// An assignment document pinning the counterexample point, annotated with
/// the two conflicting paths. Reads back as a plain assignment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub format_version: u32,
    pub literals: Vec<LiteralDoc>,
    pub path1: Vec<u32>,
    pub class1: String,
    pub path2: Vec<u32>,
    pub class2: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub format_version: u32,
    pub equivalent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_checked: Option<u64>,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        WitnessDoc {
            format_version: FORMAT_VERSION,
            literals: assignment_to_doc(&PartialAssignment::from_point(&w.point)).literals,
            path1: w.path1.nodes.iter().map(|n| n.0).collect(),
            class1: w.class1.clone(),
            path2: w.path2.nodes.iter().map(|n| n.0).collect(),
            class2: w.class2.clone(),
        }
    }
}

pub fn verdict_to_doc(v: &EquivVerdict, stats: Option<&EquivStats>) -> VerdictDoc {
    VerdictDoc {
        format_version: FORMAT_VERSION,
        equivalent: v.equivalent,
        witness: v.witness.as_ref().map(WitnessDoc::from),
        pairs_checked: stats.map(|s| s.pairs_checked),
    }
}

/// Parses a witness document and returns its point.
pub fn witness_from_json(schema: &Schema, text: &str) -> Result<(Point, WitnessDoc), FormatError> {
    let doc: WitnessDoc = parse_json(text)?;
    check_version(doc.format_version)?;
    let point = assignment_from_json(schema, text)?.to_point(schema)?;
    Ok((point, doc))
}

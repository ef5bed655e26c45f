use std::path::Path;

use dtequiv_core::{
    validate, ClassId, DecisionTree, Domain, Edge, Feature, FeatureId, Literal, Node, NodeId, NodeKind, Schema,
};
use serde::{Deserialize, Serialize};

use super::assignment::{literal_from_doc, literal_to_doc, LiteralDoc};
use super::{check_version, parse_json, read_file, FormatError, FORMAT_VERSION};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub format_version: u32,
    pub features: Vec<FeatureDoc>,
    pub classes: Vec<String>,
    pub nodes: Vec<NodeDoc>,
    pub root: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureDoc {
    pub id: u32,
    pub name: String,
    pub domain: DomainDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainDoc {
    Boolean,
    Categorical { values: Vec<String> },
    OrdinalInt { lo: i64, hi: i64 },
    OrdinalReal { lo: f64, hi: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeDoc {
    Internal { id: u32, feature: u32, edges: Vec<EdgeDoc> },
    Leaf { id: u32, class: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub literal: LiteralDoc,
    pub child: u32,
}

impl From<&Domain> for DomainDoc {
    fn from(d: &Domain) -> Self {
        match d {
            Domain::Boolean => DomainDoc::Boolean,
            Domain::Categorical(values) => DomainDoc::Categorical { values: values.clone() },
            Domain::OrdinalInt { lo, hi } => DomainDoc::OrdinalInt { lo: *lo, hi: *hi },
            Domain::OrdinalReal { lo, hi } => DomainDoc::OrdinalReal { lo: *lo, hi: *hi },
        }
    }
}

impl From<DomainDoc> for Domain {
    fn from(d: DomainDoc) -> Self {
        match d {
            DomainDoc::Boolean => Domain::Boolean,
            DomainDoc::Categorical { values } => Domain::Categorical(values),
            DomainDoc::OrdinalInt { lo, hi } => Domain::OrdinalInt { lo, hi },
            DomainDoc::OrdinalReal { lo, hi } => Domain::OrdinalReal { lo, hi },
        }
    }
}

pub fn tree_to_doc(tree: &DecisionTree) -> TreeDoc {
    let features = tree
        .schema()
        .features()
        .iter()
        .map(|f| FeatureDoc {
            id: f.id.0,
            name: f.name.clone(),
            domain: (&f.domain).into(),
        })
        .collect();
    let nodes = tree
        .nodes()
        .iter()
        .map(|n| match &n.kind {
            NodeKind::Leaf { class } => NodeDoc::Leaf {
                id: n.id.0,
                class: tree.class_label(*class).to_string(),
            },
            NodeKind::Internal { feature, edges } => NodeDoc::Internal {
                id: n.id.0,
                feature: feature.0,
                edges: edges
                    .iter()
                    .map(|e| EdgeDoc {
                        literal: literal_to_doc(&e.literal),
                        child: e.child.0,
                    })
                    .collect(),
            },
        })
        .collect();
    TreeDoc {
        format_version: FORMAT_VERSION,
        features,
        classes: tree.classes().to_vec(),
        nodes,
        root: tree.root().0,
    }
}

/// Builds the tree without semantic validation; see [`read_tree`].
pub fn tree_from_doc(doc: TreeDoc) -> Result<DecisionTree, FormatError> {
    check_version(doc.format_version)?;
    let schema = Schema::new(
        doc.features
            .into_iter()
            .map(|f| Feature::new(f.id, f.name, f.domain.into()))
            .collect(),
    )?;
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (k, n) in doc.nodes.into_iter().enumerate() {
        let node = match n {
            NodeDoc::Leaf { id, class } => {
                let c = doc
                    .classes
                    .iter()
                    .position(|l| *l == class)
                    .ok_or_else(|| FormatError::Invalid(format!("nodes[{k}]: leaf class `{class}` is not declared")))?;
                Node {
                    id: NodeId(id),
                    kind: NodeKind::Leaf { class: ClassId(c as u32) },
                }
            }
            NodeDoc::Internal { id, feature, edges } => {
                let edges = edges
                    .into_iter()
                    .enumerate()
                    .map(|(e, edge)| {
                        let literal: Literal = literal_from_doc(&schema, &edge.literal)
                            .map_err(|err| FormatError::Invalid(format!("nodes[{k}].edges[{e}].literal: {err}")))?;
                        if literal.feature.0 != feature {
                            return Err(FormatError::Invalid(format!(
                                "nodes[{k}].edges[{e}].literal tests {} but the node tests {}",
                                literal.feature,
                                FeatureId(feature)
                            )));
                        }
                        Ok(Edge {
                            literal,
                            child: NodeId(edge.child),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Node {
                    id: NodeId(id),
                    kind: NodeKind::Internal {
                        feature: FeatureId(feature),
                        edges,
                    },
                }
            }
        };
        nodes.push(node);
    }
    Ok(DecisionTree::new(schema, doc.classes, nodes, NodeId(doc.root))?)
}

pub fn tree_to_json(tree: &DecisionTree) -> String {
    serde_json::to_string_pretty(&tree_to_doc(tree)).expect("tree documents always serialize")
}

pub fn tree_from_json(text: &str) -> Result<DecisionTree, FormatError> {
    tree_from_doc(parse_json(text)?)
}

/// Reads, parses and validates a tree document.
pub fn read_tree(path: &Path) -> Result<DecisionTree, FormatError> {
    let tree = tree_from_json(&read_file(path)?).map_err(|e| match e {
        FormatError::Parse { path: field, message } => FormatError::Parse {
            path: format!("{}: {field}", path.display()),
            message,
        },
        other => other,
    })?;
    let report = validate(&tree);
    if !report.is_ok() {
        let list: Vec<String> = report.violations.iter().map(|v| format!("{v:?}")).collect();
        return Err(FormatError::Invalid(format!("{}: invalid tree: {}", path.display(), list.join("; "))));
    }
    Ok(tree)
}

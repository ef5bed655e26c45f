use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{DomainSubset, FeatureId, Literal, PartialAssignment, Point, Restriction, Schema};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index into [`DecisionTree::classes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub u32);

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub literal: Literal,
    pub child: NodeId,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    Internal { feature: FeatureId, edges: Vec<Edge> },
    Leaf { class: ClassId },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
}

impl Node {
    pub fn leaf(id: u32, class: u32) -> Self {
        Node {
            id: NodeId(id),
            kind: NodeKind::Leaf { class: ClassId(class) },
        }
    }

    pub fn internal(id: u32, feature: u32, edges: Vec<(Literal, u32)>) -> Self {
        Node {
            id: NodeId(id),
            kind: NodeKind::Internal {
                feature: FeatureId(feature),
                edges: edges
                    .into_iter()
                    .map(|(literal, child)| Edge {
                        literal,
                        child: NodeId(child),
                    })
                    .collect(),
            },
        }
    }
}

/// A univariate decision tree over a [`Schema`].
///
/// Construction only checks structure (ids, references, one parent per node,
/// operand validity). Semantic conditions are reported by [`validate`].
#[derive(Clone, Debug)]
pub struct DecisionTree {
    schema: Schema,
    classes: Vec<String>,
    nodes: Vec<Node>,
    root: NodeId,
    index: BTreeMap<NodeId, usize>,
}

impl PartialEq for DecisionTree {
    fn eq(&self, other: &Self) -> bool {
        self.schema == other.schema
            && self.classes == other.classes
            && self.nodes == other.nodes
            && self.root == other.root
    }
}

impl DecisionTree {
    pub fn new(schema: Schema, classes: Vec<String>, nodes: Vec<Node>, root: NodeId) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Structure("no classes declared".into()));
        }
        for (k, c) in classes.iter().enumerate() {
            if classes[..k].contains(c) {
                return Err(Error::Structure(format!("duplicate class label `{c}`")));
            }
        }
        let mut index = BTreeMap::new();
        for (k, n) in nodes.iter().enumerate() {
            if index.insert(n.id, k).is_some() {
                return Err(Error::Structure(format!("duplicate node id {}", n.id)));
            }
        }
        if !index.contains_key(&root) {
            return Err(Error::Structure(format!("root {root} is not a node")));
        }
        let mut parents = vec![0usize; nodes.len()];
        for n in &nodes {
            match &n.kind {
                NodeKind::Leaf { class } => {
                    if class.0 as usize >= classes.len() {
                        return Err(Error::Structure(format!("leaf {} has unknown class index {}", n.id, class.0)));
                    }
                }
                NodeKind::Internal { feature, edges } => {
                    schema
                        .feature(*feature)
                        .map_err(|_| Error::Structure(format!("node {} tests unknown feature {feature}", n.id)))?;
                    if edges.is_empty() {
                        return Err(Error::Structure(format!("internal node {} has no children", n.id)));
                    }
                    for e in edges {
                        if e.literal.feature != *feature {
                            return Err(Error::Structure(format!(
                                "edge {}->{} carries a literal on {} but the node tests {feature}",
                                n.id, e.child, e.literal.feature
                            )));
                        }
                        e.literal.check(&schema)?;
                        let k = *index
                            .get(&e.child)
                            .ok_or_else(|| Error::Structure(format!("node {} references missing child {}", n.id, e.child)))?;
                        parents[k] += 1;
                    }
                }
            }
        }
        for (k, n) in nodes.iter().enumerate() {
            let expected = usize::from(n.id != root);
            if parents[k] != expected {
                return Err(Error::Structure(format!(
                    "node {} has {} parents, expected {expected}",
                    n.id, parents[k]
                )));
            }
        }
        let tree = DecisionTree {
            schema,
            classes,
            nodes,
            root,
            index,
        };
        // one parent each + every node reachable from the root => a tree
        let mut seen = vec![false; tree.nodes.len()];
        let mut stack = vec![tree.root];
        while let Some(id) = stack.pop() {
            let k = tree.index[&id];
            if core::mem::replace(&mut seen[k], true) {
                return Err(Error::Structure(format!("cycle through node {id}")));
            }
            if let NodeKind::Internal { edges, .. } = &tree.nodes[k].kind {
                stack.extend(edges.iter().map(|e| e.child));
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::Structure(format!("node {} is unreachable from the root", tree.nodes[k].id)));
        }
        Ok(tree)
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn class_label(&self, class: ClassId) -> &str {
        &self.classes[class.0 as usize]
    }

    pub fn class_id(&self, label: &str) -> Result<ClassId> {
        self.classes
            .iter()
            .position(|c| c == label)
            .map(|k| ClassId(k as u32))
            .ok_or_else(|| Error::UnknownClass(label.into()))
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[self.index[&id]]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Replaces the nodes; used by generators that rewrite leaves.
    pub fn with_nodes(&self, nodes: Vec<Node>) -> Result<Self> {
        DecisionTree::new(self.schema.clone(), self.classes.clone(), nodes, self.root)
    }

    /// All root-to-leaf paths, depth first, children in stored order.
    pub fn paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root, 0usize)];
        let mut prefix: Vec<NodeId> = Vec::new();
        while let Some((id, depth)) = stack.pop() {
            prefix.truncate(depth);
            prefix.push(id);
            match &self.node(id).kind {
                NodeKind::Leaf { class } => out.push(Path {
                    nodes: prefix.clone(),
                    class: *class,
                }),
                NodeKind::Internal { edges, .. } => {
                    stack.extend(edges.iter().rev().map(|e| (e.child, depth + 1)));
                }
            }
        }
        out
    }

    /// Follows the unique edge satisfied by each value. `None` when no edge
    /// matches (only possible for trees that fail coverage).
    pub fn classify_point(&self, point: &Point) -> Option<ClassId> {
        let mut id = self.root;
        loop {
            match &self.node(id).kind {
                NodeKind::Leaf { class } => return Some(*class),
                NodeKind::Internal { feature, edges } => {
                    let v = point.get(*feature)?;
                    id = edges.iter().find(|e| e.literal.satisfied_by(v))?.child;
                }
            }
        }
    }

    /// `κ(point)` for a complete assignment.
    pub fn classify(&self, point: &PartialAssignment) -> Result<ClassId> {
        let p = point.to_point(&self.schema)?;
        self.classify_point(&p)
            .ok_or_else(|| Error::Precondition(format!("no path of the tree covers {p}")))
    }

    pub fn check_same_schema(&self, other: &DecisionTree) -> Result<()> {
        if self.schema != other.schema {
            return Err(Error::SchemaMismatch("the trees are defined over different feature schemas".into()));
        }
        Ok(())
    }
}

/// Root-to-leaf node sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub class: ClassId,
}

impl Path {
    pub fn leaf(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn literals<'a, 't: 'a>(&'a self, tree: &'t DecisionTree) -> impl Iterator<Item = &'t Literal> + 'a {
        self.nodes.windows(2).map(move |w| match &tree.node(w[0]).kind {
            NodeKind::Internal { edges, .. } => &edges.iter().find(|e| e.child == w[1]).unwrap().literal,
            NodeKind::Leaf { .. } => unreachable!("leaf in the middle of a path"),
        })
    }

    /// `Literals(P)`.
    pub fn assignment(&self, tree: &DecisionTree) -> PartialAssignment {
        PartialAssignment::new(self.literals(tree).cloned().collect())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("⟩")
    }
}

/// Paths of a tree with their precomputed domains.
#[derive(Clone, Debug)]
pub struct PathTable {
    pub paths: Vec<Path>,
    pub doms: Vec<DomainSubset>,
}

impl PathTable {
    pub fn new(tree: &DecisionTree) -> Self {
        let schema = tree.schema();
        let mut paths = Vec::new();
        let mut doms = Vec::new();
        let mut stack = vec![(tree.root(), 0usize, DomainSubset::full(schema))];
        let mut prefix: Vec<NodeId> = Vec::new();
        while let Some((id, depth, dom)) = stack.pop() {
            prefix.truncate(depth);
            prefix.push(id);
            match &tree.node(id).kind {
                NodeKind::Leaf { class } => {
                    paths.push(Path {
                        nodes: prefix.clone(),
                        class: *class,
                    });
                    doms.push(dom);
                }
                NodeKind::Internal { edges, .. } => {
                    for e in edges.iter().rev() {
                        let mut d = dom.clone();
                        // literals were checked at construction
                        d.restrict(schema, &e.literal).unwrap();
                        stack.push((e.child, depth + 1, d));
                    }
                }
            }
        }
        PathTable { paths, doms }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The path from the root to `node` has an empty domain.
    InconsistentPath { nodes: Vec<NodeId> },
    /// Two edges of `node` overlap on the path-restricted domain.
    Overlap { node: NodeId, first: NodeId, second: NodeId },
    /// The edges of `node` leave part of the path-restricted domain uncovered.
    Uncovered { node: NodeId },
    /// An internal node with fewer than two children.
    TooFewChildren { node: NodeId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Node-local disjointness and coverage of edge literals, restricted to the
/// domain reaching each node, plus consistency of every path.
pub fn validate(tree: &DecisionTree) -> ValidationReport {
    let schema = tree.schema();
    let mut violations = Vec::new();
    let mut stack = vec![(tree.root(), vec![tree.root()], DomainSubset::full(schema))];
    while let Some((id, prefix, dom)) = stack.pop() {
        let NodeKind::Internal { feature, edges } = &tree.node(id).kind else {
            continue;
        };
        if edges.len() < 2 {
            violations.push(Violation::TooFewChildren { node: id });
        }
        let reaching = dom.restriction(schema, *feature);
        let parts: Vec<Restriction> = edges
            .iter()
            .map(|e| e.literal.restriction(schema).unwrap().intersect(&reaching))
            .collect();
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                if parts[a].overlaps(&parts[b]) {
                    violations.push(Violation::Overlap {
                        node: id,
                        first: edges[a].child,
                        second: edges[b].child,
                    });
                }
            }
        }
        let covered = parts.iter().skip(1).fold(parts[0].clone(), |acc, r| acc.union(r));
        if !reaching.is_subset_of(&covered) {
            violations.push(Violation::Uncovered { node: id });
        }
        for e in edges.iter().rev() {
            let mut d = dom.clone();
            d.restrict(schema, &e.literal).unwrap();
            let mut p = prefix.clone();
            p.push(e.child);
            if d.is_empty() {
                violations.push(Violation::InconsistentPath { nodes: p });
                continue;
            }
            stack.push((e.child, p, d));
        }
    }
    ValidationReport { violations }
}

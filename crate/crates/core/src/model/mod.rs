//! Features, literals, partial assignments and decision trees.

mod domain;
mod literal;
mod restriction;
mod subset;
mod tree;

pub use domain::{Domain, Feature, FeatureId, Point, Schema, Value};
pub use literal::{Literal, Op, Operand, PartialAssignment};
pub use restriction::{RealInterval, Restriction, ValueMask};
pub use subset::DomainSubset;
pub use tree::{
    validate, ClassId, DecisionTree, Edge, Node, NodeId, NodeKind, Path, PathTable, ValidationReport, Violation,
};

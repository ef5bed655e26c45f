//! Decision-tree predictive equivalence, abductive explanations and the
//! consensus/Quine-McCluskey baseline.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable trees; IO, document formats, parallel drivers and the
//! command line live in the `dtequiv` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod equiv;
pub mod explain;
pub mod gen;
pub mod model;
pub mod oracle;
pub mod qm;
pub mod shapley;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use model::{
    validate, ClassId, DecisionTree, Domain, DomainSubset, Edge, Feature, FeatureId, Literal, Node,
    NodeId, NodeKind, Op, Operand, PartialAssignment, Path, PathTable, Point, Restriction, Schema,
    ValidationReport, Value, Violation,
};

//! Polynomial-time reasoning over tree paths: path consistency, WAXp checks
//! for some class or a fixed class, prediction under missing data, and
//! extraction of one AXp by linear deletion.
//!
//! Every query compiles the partial assignment into a [`DomainSubset`] and
//! intersects it with the precompiled domain of each path. A pair is
//! consistent iff, feature by feature, the conjunction of the assignment's
//! literals with the path's literals is satisfiable.

use alloc::format;
use alloc::vec::Vec;

use crate::model::{ClassId, DecisionTree, DomainSubset, FeatureId, PartialAssignment, Path, PathTable};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaxpVerdict {
    pub is_waxp: bool,
    /// The entailed class when `is_waxp`.
    pub class: Option<ClassId>,
    /// First consistent path predicting another class (fixed-class queries).
    pub witness_path: Option<Path>,
}

/// A tree with its compiled path table, reusable across queries.
#[derive(Clone, Debug)]
pub struct Explainer<'t> {
    tree: &'t DecisionTree,
    table: PathTable,
}

impl<'t> Explainer<'t> {
    pub fn new(tree: &'t DecisionTree) -> Self {
        Explainer {
            tree,
            table: PathTable::new(tree),
        }
    }

    pub fn tree(&self) -> &'t DecisionTree {
        self.tree
    }

    pub fn paths(&self) -> &[Path] {
        &self.table.paths
    }

    fn compile(&self, a: &PartialAssignment) -> Result<DomainSubset> {
        let dom = a.dom(self.tree.schema())?;
        if dom.is_empty() {
            return Err(Error::Inconsistent);
        }
        Ok(dom)
    }

    /// Path consistency against the `k`-th path of the table.
    pub fn consistent_with(&self, dom: &DomainSubset, k: usize) -> bool {
        dom.intersects(&self.table.doms[k])
    }

    pub fn is_waxp_some_class(&self, a: &PartialAssignment) -> Result<WaxpVerdict> {
        let dom = self.compile(a)?;
        let mut class = None;
        for (k, p) in self.table.paths.iter().enumerate() {
            if !self.consistent_with(&dom, k) {
                continue;
            }
            match class {
                None => class = Some(p.class),
                Some(c) if c != p.class => {
                    return Ok(WaxpVerdict {
                        is_waxp: false,
                        class: None,
                        witness_path: None,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(WaxpVerdict {
            is_waxp: class.is_some(),
            class,
            witness_path: None,
        })
    }

    pub fn is_waxp_for_class(&self, a: &PartialAssignment, class: ClassId) -> Result<WaxpVerdict> {
        if class.0 as usize >= self.tree.classes().len() {
            return Err(Error::UnknownClass(format!("#{}", class.0)));
        }
        let dom = self.compile(a)?;
        Ok(self.waxp_for_dom(&dom, class))
    }

    fn waxp_for_dom(&self, dom: &DomainSubset, class: ClassId) -> WaxpVerdict {
        let witness = self
            .table
            .paths
            .iter()
            .enumerate()
            .find(|(k, p)| p.class != class && self.consistent_with(dom, *k));
        match witness {
            None => WaxpVerdict {
                is_waxp: true,
                class: Some(class),
                witness_path: None,
            },
            Some((_, p)) => WaxpVerdict {
                is_waxp: false,
                class: None,
                witness_path: Some(p.clone()),
            },
        }
    }

    /// `Some(c)` iff every completion of `a` is classified as `c`.
    pub fn predict_with_missing(&self, a: &PartialAssignment) -> Result<Option<ClassId>> {
        Ok(self.is_waxp_some_class(a)?.class)
    }

    /// Drops features of `a` one at a time (in `order`, then any remaining
    /// features ascending) while the rest stays a WAXp for `class`.
    pub fn find_one_axp(
        &self,
        a: &PartialAssignment,
        class: ClassId,
        order: Option<&[FeatureId]>,
    ) -> Result<PartialAssignment> {
        let v = self.is_waxp_for_class(a, class)?;
        if let Some(p) = v.witness_path {
            return Err(Error::Precondition(format!(
                "{a} is not a WAXp for class `{}`: path {p} predicts `{}`",
                self.tree.class_label(class),
                self.tree.class_label(p.class)
            )));
        }
        let present = a.features();
        let mut sequence: Vec<FeatureId> = Vec::with_capacity(present.len());
        for f in order.unwrap_or(&[]) {
            if present.binary_search(f).is_ok() && !sequence.contains(f) {
                sequence.push(*f);
            }
        }
        for f in &present {
            if !sequence.contains(f) {
                sequence.push(*f);
            }
        }
        let schema = self.tree.schema();
        let mut kept = a.clone();
        for f in sequence {
            let candidate = kept.without_feature(f);
            let dom = candidate.dom(schema)?;
            if self.waxp_for_dom(&dom, class).is_waxp {
                kept = candidate;
            }
        }
        Ok(kept)
    }
}

/// `A` and `Literals(P)` are jointly satisfiable.
pub fn path_consistent(tree: &DecisionTree, a: &PartialAssignment, path: &Path) -> Result<bool> {
    let schema = tree.schema();
    let dom = a.dom(schema)?;
    let pdom = DomainSubset::from_literals(schema, path.literals(tree))?;
    Ok(dom.intersects(&pdom))
}

pub fn is_waxp_some_class(tree: &DecisionTree, a: &PartialAssignment) -> Result<WaxpVerdict> {
    Explainer::new(tree).is_waxp_some_class(a)
}

pub fn is_waxp_for_class(tree: &DecisionTree, a: &PartialAssignment, class: &str) -> Result<WaxpVerdict> {
    let c = tree.class_id(class)?;
    Explainer::new(tree).is_waxp_for_class(a, c)
}

pub fn predict_with_missing(tree: &DecisionTree, a: &PartialAssignment) -> Result<Option<ClassId>> {
    Explainer::new(tree).predict_with_missing(a)
}

pub fn find_one_axp(
    tree: &DecisionTree,
    a: &PartialAssignment,
    class: &str,
    order: Option<&[FeatureId]>,
) -> Result<PartialAssignment> {
    let c = tree.class_id(class)?;
    Explainer::new(tree).find_one_axp(a, c, order)
}

//! Predictive equivalence by pairwise path consistency.
//!
//! Two trees disagree somewhere iff a path of one and a path of the other
//! predict different classes and their literal sets are jointly consistent;
//! any point of the joint domain is then a counterexample.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::model::{ClassId, DecisionTree, PartialAssignment, Path, PathTable, Point, Schema};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub path1: Path,
    pub path2: Path,
    pub class1: String,
    pub class2: String,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EquivStats {
    pub outer_paths: usize,
    pub inner_paths: usize,
    /// Pairs with different classes whose consistency was tested.
    pub pairs_checked: u64,
}

/// Compiled pair of trees. The outer loop runs over the tree with more
/// paths (the first tree on ties).
#[derive(Clone, Debug)]
pub struct EquivChecker<'a> {
    t1: &'a DecisionTree,
    t2: &'a DecisionTree,
    outer: PathTable,
    inner: PathTable,
    outer_is_t1: bool,
    /// `inner_class[k]` is inner path `k`'s class mapped into the outer tree's ids.
    inner_class: Vec<ClassId>,
}

impl<'a> EquivChecker<'a> {
    pub fn new(t1: &'a DecisionTree, t2: &'a DecisionTree) -> Result<Self> {
        t1.check_same_schema(t2)?;
        let mut c1: Vec<&String> = t1.classes().iter().collect();
        let mut c2: Vec<&String> = t2.classes().iter().collect();
        c1.sort();
        c2.sort();
        if c1 != c2 {
            return Err(Error::ClassMismatch);
        }
        let p1 = PathTable::new(t1);
        let p2 = PathTable::new(t2);
        let outer_is_t1 = p1.len() >= p2.len();
        let (outer, inner, ot, it) = if outer_is_t1 { (p1, p2, t1, t2) } else { (p2, p1, t2, t1) };
        let inner_class = inner
            .paths
            .iter()
            .map(|p| ot.class_id(it.class_label(p.class)).unwrap())
            .collect();
        Ok(EquivChecker {
            t1,
            t2,
            outer,
            inner,
            outer_is_t1,
            inner_class,
        })
    }

    pub fn outer_len(&self) -> usize {
        self.outer.len()
    }

    pub fn inner_len(&self) -> usize {
        self.inner.len()
    }

    /// Smallest inner index conflicting with outer path `i`, and the number
    /// of pairs tested to find it.
    pub fn first_conflict(&self, i: usize) -> (Option<usize>, u64) {
        let class = self.outer.paths[i].class;
        let dom = &self.outer.doms[i];
        let mut checked = 0;
        for (j, d) in self.inner.doms.iter().enumerate() {
            if self.inner_class[j] == class {
                continue;
            }
            checked += 1;
            if dom.intersects(d) {
                return (Some(j), checked);
            }
        }
        (None, checked)
    }

    /// Builds the verdict from the minimal conflicting `(outer, inner)` pair.
    pub fn verdict(&self, conflict: Option<(usize, usize)>) -> EquivVerdict {
        let Some((i, j)) = conflict else {
            return EquivVerdict {
                equivalent: true,
                witness: None,
            };
        };
        let joint = self.outer.doms[i].intersect(&self.inner.doms[j]);
        let point = joint
            .pick_point(self.t1.schema())
            .expect("conflicting pair has a non-empty joint domain");
        let (po, pi) = (self.outer.paths[i].clone(), self.inner.paths[j].clone());
        let (path1, path2) = if self.outer_is_t1 { (po, pi) } else { (pi, po) };
        EquivVerdict {
            equivalent: false,
            witness: Some(Witness {
                class1: self.t1.class_label(path1.class).into(),
                class2: self.t2.class_label(path2.class).into(),
                path1,
                path2,
                point,
            }),
        }
    }

    pub fn run(&self) -> (EquivVerdict, EquivStats) {
        let mut stats = EquivStats {
            outer_paths: self.outer_len(),
            inner_paths: self.inner_len(),
            pairs_checked: 0,
        };
        for i in 0..self.outer_len() {
            let (hit, checked) = self.first_conflict(i);
            stats.pairs_checked += checked;
            if let Some(j) = hit {
                return (self.verdict(Some((i, j))), stats);
            }
        }
        (self.verdict(None), stats)
    }
}

/// Decides `∀x. κ1(x) = κ2(x)`.
pub fn decide(t1: &DecisionTree, t2: &DecisionTree) -> Result<EquivVerdict> {
    Ok(EquivChecker::new(t1, t2)?.run().0)
}

pub fn decide_with_stats(t1: &DecisionTree, t2: &DecisionTree) -> Result<(EquivVerdict, EquivStats)> {
    Ok(EquivChecker::new(t1, t2)?.run())
}

/// Certificate of non-equivalence from two WAXps of different classes:
/// any point in `dom(A1) ∩ dom(A2)`.
pub fn disprove_by_axps(
    schema: &Schema,
    a1: (&PartialAssignment, &str),
    a2: (&PartialAssignment, &str),
) -> Result<Option<Point>> {
    if a1.1 == a2.1 {
        return Err(Error::Precondition(format!(
            "both explanations are for class `{}`; a certificate needs different classes",
            a1.1
        )));
    }
    let joint = a1.0.dom(schema)?.intersect(&a2.0.dom(schema)?);
    Ok(joint.pick_point(schema))
}

/// [`disprove_by_axps`] after checking that each assignment is a WAXp of its tree.
pub fn disprove_by_axps_checked(
    t1: &DecisionTree,
    a1: (&PartialAssignment, &str),
    t2: &DecisionTree,
    a2: (&PartialAssignment, &str),
) -> Result<Option<Point>> {
    t1.check_same_schema(t2)?;
    for (t, (a, c)) in [(t1, a1), (t2, a2)] {
        if !crate::explain::is_waxp_for_class(t, a, c)?.is_waxp {
            return Err(Error::Precondition(format!("{a} is not a WAXp for class `{c}`")));
        }
    }
    disprove_by_axps(t1.schema(), a1, a2)
}

#[cfg(test)]
mod tests;

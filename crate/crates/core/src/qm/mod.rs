//! The two-level-logic baseline for boolean trees: per-class terms from
//! paths, Blake canonical form by iterated consensus with absorption, and a
//! minimum prime cover with explicit tie-breaking.
//!
//! Comparing BCFs decides equivalence soundly because the BCF is canonical.
//! Comparing minimum covers does not: a function can have several minimum
//! covers, and which one is returned depends on the tie-break.

mod bcf;
mod cover;
mod term;

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

pub use bcf::{bcf, bcf_with, BcfConfig, WorklistOrder, DEFAULT_TERM_CAP};
pub use cover::{minimize, minimize_with, CostModel, CoverProblem, MinimizeConfig, TieBreak};
pub use term::{Polarity, Term};

use crate::model::{DecisionTree, NodeKind, Restriction};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DnfKind {
    /// One term per path.
    Raw,
    /// All prime implicants.
    Bcf,
    /// A minimum-cost prime cover.
    Minimized,
}

impl DnfKind {
    pub fn name(self) -> &'static str {
        match self {
            DnfKind::Raw => "raw",
            DnfKind::Bcf => "bcf",
            DnfKind::Minimized => "minimized",
        }
    }
}

/// A DNF for the predicate "the tree predicts `class`", terms in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDnf {
    pub class: String,
    pub kind: DnfKind,
    /// Number of features.
    pub width: usize,
    pub terms: Vec<Term>,
}

impl ClassDnf {
    pub fn new(class: impl Into<String>, kind: DnfKind, width: usize, mut terms: Vec<Term>) -> Self {
        terms.sort();
        terms.dedup();
        ClassDnf {
            class: class.into(),
            kind,
            width,
            terms,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(term count, literal count)`.
    pub fn cost(&self) -> (usize, usize) {
        (self.terms.len(), self.terms.iter().map(Term::len).sum())
    }

    pub fn evaluate(&self, point: &[bool]) -> bool {
        self.terms.iter().any(|t| t.covers(point))
    }
}

/// One term per line.
impl fmt::Display for ClassDnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

fn require_boolean(tree: &DecisionTree) -> Result<()> {
    if let Some(f) = tree.schema().features().iter().find(|f| !f.domain.is_boolean()) {
        return Err(Error::Unsupported(format!(
            "{} is {}; two-level minimization handles boolean features only",
            f.id,
            f.domain.kind_name()
        )));
    }
    Ok(())
}

/// Terms of the paths ending in `class`.
pub fn class_terms(tree: &DecisionTree, class: &str) -> Result<ClassDnf> {
    require_boolean(tree)?;
    let c = tree.class_id(class)?;
    let schema = tree.schema();
    let width = schema.len();
    let mut terms = Vec::new();
    'paths: for p in tree.paths().into_iter().filter(|p| p.class == c) {
        let mut t = Term::top(width);
        for lit in p.literals(tree) {
            let Restriction::Values(mask) = lit.restriction(schema)? else { unreachable!() };
            let want = match (mask.contains(0), mask.contains(1)) {
                (true, true) => continue,
                (false, false) => continue 'paths,
                (_, one) => {
                    if one {
                        Polarity::Positive
                    } else {
                        Polarity::Negative
                    }
                }
            };
            match t.get(lit.feature) {
                Some(have) if have != want => continue 'paths,
                _ => t.set(lit.feature, Some(want)),
            }
        }
        terms.push(t);
    }
    Ok(ClassDnf::new(class, DnfKind::Raw, width, terms))
}

fn check_pair(t1: &DecisionTree, t2: &DecisionTree) -> Result<()> {
    t1.check_same_schema(t2)?;
    let mut a: Vec<&String> = t1.classes().iter().collect();
    let mut b: Vec<&String> = t2.classes().iter().collect();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::ClassMismatch);
    }
    Ok(())
}

/// Equal BCFs for every class.
pub fn bcf_equivalence(t1: &DecisionTree, t2: &DecisionTree) -> Result<bool> {
    bcf_equivalence_with(t1, t2, &BcfConfig::default())
}

pub fn bcf_equivalence_with(t1: &DecisionTree, t2: &DecisionTree, cfg: &BcfConfig) -> Result<bool> {
    check_pair(t1, t2)?;
    for c in t1.classes() {
        let a = bcf_with(&class_terms(t1, c)?, cfg)?;
        let b = bcf_with(&class_terms(t2, c)?, cfg)?;
        if a.terms != b.terms {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equal minimum covers for every class, each side with its own tie-break.
/// Unsound whenever a class predicate has several minimum covers and the
/// tie-breaks pick different ones.
pub fn qm_equivalence(t1: &DecisionTree, t2: &DecisionTree, tie1: TieBreak, tie2: TieBreak) -> Result<bool> {
    check_pair(t1, t2)?;
    let cfg = MinimizeConfig::default();
    for c in t1.classes() {
        let a = minimize_with(&bcf(&class_terms(t1, c)?)?, tie1, &cfg)?;
        let b = minimize_with(&bcf(&class_terms(t2, c)?)?, tie2, &cfg)?;
        if a.terms != b.terms {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reads the leaves of a boolean tree as a truth table (bit `i` of the index
/// is feature `i+1`). Used to cross-check DNFs on small schemas.
pub fn truth_table(tree: &DecisionTree, class: &str) -> Result<Vec<bool>> {
    require_boolean(tree)?;
    let c = tree.class_id(class)?;
    let m = tree.schema().len();
    if m > 24 {
        return Err(Error::CapExceeded {
            what: "truth table",
            size: 1u128 << m,
            cap: 1 << 24,
        });
    }
    let mut out = Vec::with_capacity(1 << m);
    for bits in 0u64..1 << m {
        let mut id = tree.root();
        loop {
            match &tree.node(id).kind {
                NodeKind::Leaf { class } => {
                    out.push(*class == c);
                    break;
                }
                NodeKind::Internal { feature, edges } => {
                    let v = crate::model::Value::Int(((bits >> feature.index()) & 1) as i64);
                    id = edges.iter().find(|e| e.literal.satisfied_by(&v)).unwrap().child;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;

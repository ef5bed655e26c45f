//! Corrected SHAP scores.
//!
//! The game is `υ(S) = 1` iff fixing the features in `S` to their values in
//! the instance is a WAXp for the predicted class. Scores use the standard
//! Shapley combination
//!
//! ```text
//! φ_i = Σ_{S ⊆ F \ {i}} |S|! (m - |S| - 1)! / m! · (υ(S ∪ {i}) - υ(S))
//! ```
//!
//! evaluated exactly over all `2^m` subsets. Since `υ` depends only on the
//! classifier's input-output behaviour, equivalent trees get equal scores.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::explain::Explainer;
use crate::model::{ClassId, DecisionTree, Literal, PartialAssignment, Point};
use crate::{Error, Result};

/// Largest number of features scored exactly.
pub const DEFAULT_FEATURE_CAP: usize = 20;

/// One exact score per feature, in feature order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreVector(pub Vec<Ratio<i128>>);

impl ScoreVector {
    pub fn scores(&self) -> &[Ratio<i128>] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect()
    }
}

/// `x1=1/2 x2=0`
impl fmt::Display for ScoreVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}={r}", i + 1)?;
        }
        Ok(())
    }
}

/// Bit `i` of a subset mask selects feature `i+1`.
pub fn restrict(point: &Point, subset: u64) -> PartialAssignment {
    PartialAssignment::new(
        point
            .values()
            .iter()
            .enumerate()
            .filter(|(i, _)| subset >> i & 1 == 1)
            .map(|(i, v)| Literal::eq(i as u32 + 1, v.clone()))
            .collect(),
    )
}

fn instance_class(tree: &DecisionTree, point: &Point, class: &str) -> Result<ClassId> {
    point.check(tree.schema())?;
    let c = tree.class_id(class)?;
    let predicted = tree
        .classify_point(point)
        .ok_or_else(|| Error::Precondition(format!("no path covers {point}")))?;
    if predicted != c {
        return Err(Error::Precondition(format!(
            "{point} is classified as `{}`, not `{class}`",
            tree.class_label(predicted)
        )));
    }
    Ok(c)
}

/// `υ(S)` for the instance `(point, class)`.
pub fn char_fn(tree: &DecisionTree, point: &Point, class: &str, subset: u64) -> Result<bool> {
    let c = instance_class(tree, point, class)?;
    Ok(Explainer::new(tree).is_waxp_for_class(&restrict(point, subset), c)?.is_waxp)
}

/// `υ` over every subset, indexed by mask.
pub fn characteristic_table(tree: &DecisionTree, point: &Point, class: &str) -> Result<Vec<bool>> {
    characteristic_range(tree, point, class, 0, 1 << check_cap(tree)?)
}

/// `υ` for the masks in `lo..hi`, for callers splitting the work.
pub fn characteristic_range(tree: &DecisionTree, point: &Point, class: &str, lo: u64, hi: u64) -> Result<Vec<bool>> {
    check_cap(tree)?;
    let c = instance_class(tree, point, class)?;
    let ex = Explainer::new(tree);
    (lo..hi)
        .map(|s| Ok(ex.is_waxp_for_class(&restrict(point, s), c)?.is_waxp))
        .collect()
}

fn check_cap(tree: &DecisionTree) -> Result<usize> {
    let m = tree.schema().len();
    if m > DEFAULT_FEATURE_CAP {
        return Err(Error::CapExceeded {
            what: "features for exact SHAP",
            size: m as u128,
            cap: DEFAULT_FEATURE_CAP as u128,
        });
    }
    Ok(m)
}

pub fn corrected_shap(tree: &DecisionTree, point: &Point, class: &str) -> Result<ScoreVector> {
    let m = check_cap(tree)?;
    let table = characteristic_table(tree, point, class)?;
    shap_from_table(m, &table)
}

/// Shapley combination of a game given as a table over all `2^m` masks.
pub fn shap_from_table(m: usize, table: &[bool]) -> Result<ScoreVector> {
    if m > DEFAULT_FEATURE_CAP || table.len() != 1 << m {
        return Err(Error::Precondition(format!(
            "table of {} entries for {m} features",
            table.len()
        )));
    }
    let fact: Vec<i128> = (0..=m as i128)
        .scan(1i128, |acc, k| {
            if k > 0 {
                *acc *= k;
            }
            Some(*acc)
        })
        .collect();
    // weight numerators over the common denominator m!
    let weight: Vec<i128> = (0..m).map(|s| fact[s] * fact[m - s - 1]).collect();
    let mut num = vec![0i128; m];
    for s in 0..table.len() {
        let size = (s as u64).count_ones() as usize;
        for (i, n) in num.iter_mut().enumerate() {
            if s >> i & 1 == 0 {
                let gain = table[s | 1 << i] as i128 - table[s] as i128;
                *n += weight[size] * gain;
            }
        }
    }
    let denom = fact[m].max(1);
    Ok(ScoreVector(num.into_iter().map(|n| Ratio::new(n, denom)).collect()))
}

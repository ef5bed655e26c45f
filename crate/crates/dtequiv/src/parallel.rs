//! Rayon drivers for the embarrassingly parallel loops of the core crate.
//! Each returns exactly what its serial counterpart returns.

use dtequiv_core::equiv::{EquivChecker, EquivVerdict};
use dtequiv_core::oracle::EnumerableSpace;
use dtequiv_core::shapley::{characteristic_range, shap_from_table, ScoreVector, DEFAULT_FEATURE_CAP};
use dtequiv_core::{DecisionTree, Error, Point, Result};
use rayon::prelude::*;
use rayon::ThreadPool;

/// A pool with `jobs` threads; 0 means one per core.
pub fn pool(jobs: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// Outer paths are scanned in parallel; the verdict is built from the
/// smallest conflicting outer index, so the witness matches the serial one.
pub fn decide(pool: &ThreadPool, t1: &DecisionTree, t2: &DecisionTree) -> Result<EquivVerdict> {
    let checker = EquivChecker::new(t1, t2)?;
    let hit = pool.install(|| {
        (0..checker.outer_len())
            .into_par_iter()
            .filter_map(|i| checker.first_conflict(i).0.map(|j| (i, j)))
            .find_first(|_| true)
    });
    Ok(checker.verdict(hit))
}

pub fn brute_equivalent(pool: &ThreadPool, t1: &DecisionTree, t2: &DecisionTree, cap: u128) -> Result<bool> {
    t1.check_same_schema(t2)?;
    let space = EnumerableSpace::new(t1.schema(), cap)?;
    let label = |t: &DecisionTree, p: &Point| -> Result<String> {
        t.classify_point(p)
            .map(|c| t.class_label(c).to_string())
            .ok_or_else(|| Error::Precondition(format!("no path of the tree covers {p}")))
    };
    pool.install(|| {
        (0..space.len())
            .into_par_iter()
            .map(|n| {
                let p = space.point(n);
                Ok(label(t1, &p)? == label(t2, &p)?)
            })
            .try_fold(|| true, |acc, r: Result<bool>| r.map(|same| acc && same))
            .try_reduce(|| true, |a, b| Ok(a && b))
    })
}

const SHAP_CHUNK: u64 = 1 << 12;

/// Characteristic table built in chunks, then combined exactly.
pub fn corrected_shap(pool: &ThreadPool, tree: &DecisionTree, point: &Point, class: &str) -> Result<ScoreVector> {
    let m = tree.schema().len();
    if m > DEFAULT_FEATURE_CAP {
        return Err(Error::CapExceeded {
            what: "features for exact SHAP",
            size: m as u128,
            cap: DEFAULT_FEATURE_CAP as u128,
        });
    }
    let total = 1u64 << m;
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(SHAP_CHUNK as usize)
        .map(|lo| (lo, (lo + SHAP_CHUNK).min(total)))
        .collect();
    let parts = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(lo, hi)| characteristic_range(tree, point, class, lo, hi))
            .collect::<Result<Vec<_>>>()
    })?;
    let table: Vec<bool> = parts.into_iter().flatten().collect();
    shap_from_table(m, &table)
}

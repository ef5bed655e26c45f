//! Blowup and scaling measurements on the gadget family.
//!
//! Table 1 computes both class BCFs of `worst_case(r)` for a range of `r` and
//! checks their sizes against the known values for `r ≤ 9`. Table 2 times
//! the polynomial procedures on much larger gadget trees. Sizes are exact;
//! times are measured and reported, never checked here.

use std::fmt::{self, Write as _};
use std::time::Instant;

use dtequiv_core::equiv::decide;
use dtequiv_core::explain::Explainer;
use dtequiv_core::gen::{mutate_leaf, worst_case};
use dtequiv_core::qm::{bcf_with, class_terms, BcfConfig, WorklistOrder};
use dtequiv_core::{DecisionTree, Error, PartialAssignment, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `(r, |BCF_0|, |BCF_1|)` for the gadget family, `r ≤ 9`.
pub const TABLE1_EXPECTED: [(usize, usize, usize); 7] = [
    (3, 4, 22),
    (4, 5, 46),
    (5, 6, 94),
    (6, 7, 190),
    (7, 8, 382),
    (8, 9, 766),
    (9, 10, 1534),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub r: usize,
    pub nodes: usize,
    pub features: usize,
    pub bcf0: Option<usize>,
    pub bcf1: Option<usize>,
    pub bcf0_secs: f64,
    pub bcf1_secs: f64,
    /// The term cap stopped at least one closure.
    pub capped: bool,
    pub expected_bcf0: Option<usize>,
    pub expected_bcf1: Option<usize>,
    /// `None` when there is nothing to compare against.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Row {
    pub r: usize,
    pub nodes: usize,
    pub features: usize,
    pub expected_nodes: usize,
    pub expected_features: usize,
    pub axp_size: usize,
    pub find_one_axp_secs: f64,
    pub is_waxp: bool,
    pub is_waxp_secs: f64,
    /// Verdict against the leaf-mutated twin; expected `false`.
    pub twin_equivalent: bool,
    pub decide_secs: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub format_version: u32,
    pub table: u8,
    /// Cases ran concurrently, so times include contention.
    pub contended: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table1: Vec<Table1Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table2: Vec<Table2Row>,
}

impl BenchReport {
    pub fn passed(&self) -> bool {
        self.table1.iter().all(|r| r.pass != Some(false)) && self.table2.iter().all(|r| r.pass)
    }
}

fn expected1(r: usize) -> Option<(usize, usize)> {
    TABLE1_EXPECTED.iter().find(|e| e.0 == r).map(|e| (e.1, e.2))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

fn class_bcf(tree: &DecisionTree, class: &str, cfg: &BcfConfig) -> Result<(Option<usize>, f64)> {
    let (res, secs) = timed(|| bcf_with(&class_terms(tree, class)?, cfg));
    match res {
        Ok(dnf) => Ok((Some(dnf.len()), secs)),
        Err(Error::TermCap(_)) => Ok((None, secs)),
        Err(e) => Err(e),
    }
}

pub fn table1_row(r: usize, term_cap: usize) -> Result<Table1Row> {
    let tree = worst_case(r)?;
    let cfg = BcfConfig {
        term_cap,
        order: WorklistOrder::Fifo,
    };
    let (bcf0, bcf0_secs) = class_bcf(&tree, "0", &cfg)?;
    let (bcf1, bcf1_secs) = class_bcf(&tree, "1", &cfg)?;
    let capped = bcf0.is_none() || bcf1.is_none();
    let expected = expected1(r);
    let pass = match (expected, capped) {
        (Some((e0, e1)), false) => Some(bcf0 == Some(e0) && bcf1 == Some(e1)),
        _ => None,
    };
    Ok(Table1Row {
        r,
        nodes: tree.node_count(),
        features: tree.schema().len(),
        bcf0,
        bcf1,
        bcf0_secs,
        bcf1_secs,
        capped,
        expected_bcf0: expected.map(|e| e.0),
        expected_bcf1: expected.map(|e| e.1),
        pass,
    })
}

fn run_cases<T: Send>(rs: &[usize], parallel: bool, f: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    if parallel {
        rs.par_iter().map(|&r| f(r)).collect()
    } else {
        rs.iter().map(|&r| f(r)).collect()
    }
}

pub fn run_table1(r_min: usize, r_max: usize, term_cap: usize, parallel: bool) -> Result<BenchReport> {
    if r_min < 3 || r_max < r_min {
        return Err(Error::Precondition(format!("table 1 needs 3 <= r_min <= r_max, got {r_min}..{r_max}")));
    }
    let rs: Vec<usize> = (r_min..=r_max).collect();
    Ok(BenchReport {
        format_version: 1,
        table: 1,
        contended: parallel,
        table1: run_cases(&rs, parallel, |r| table1_row(r, term_cap))?,
        table2: Vec::new(),
    })
}

/// Literals of the first longest path predicting class `1`: every feature
/// pinned to 1.
pub fn longest_path_assignment(tree: &DecisionTree) -> Result<PartialAssignment> {
    let c = tree.class_id("1")?;
    let paths = tree.paths();
    let best = paths
        .iter()
        .filter(|p| p.class == c)
        .fold(None, |best: Option<&dtequiv_core::Path>, p| match best {
            Some(b) if b.nodes.len() >= p.nodes.len() => Some(b),
            _ => Some(p),
        })
        .ok_or_else(|| Error::Precondition("no path predicts class 1".into()))?;
    Ok(best.assignment(tree))
}

pub fn table2_row(r: usize) -> Result<Table2Row> {
    let tree = worst_case(r)?;
    let twin = mutate_leaf(&tree);
    let a = longest_path_assignment(&tree)?;
    let c = tree.class_id("1")?;
    let ex = Explainer::new(&tree);
    let (axp, find_one_axp_secs) = timed(|| ex.find_one_axp(&a, c, None));
    let axp = axp?;
    let (w, is_waxp_secs) = timed(|| ex.is_waxp_for_class(&a, c));
    let is_waxp = w?.is_waxp;
    let (v, decide_secs) = timed(|| decide(&tree, &twin));
    let twin_equivalent = v?.equivalent;
    let (nodes, features) = (tree.node_count(), tree.schema().len());
    let (expected_nodes, expected_features) = (6 * r + 3, 2 * r + 1);
    Ok(Table2Row {
        r,
        nodes,
        features,
        expected_nodes,
        expected_features,
        axp_size: axp.len(),
        find_one_axp_secs,
        is_waxp,
        is_waxp_secs,
        twin_equivalent,
        decide_secs,
        pass: nodes == expected_nodes && features == expected_features && is_waxp && !twin_equivalent,
    })
}

pub fn run_table2(r_values: &[usize], parallel: bool) -> Result<BenchReport> {
    if let Some(r) = r_values.iter().find(|r| **r == 0) {
        return Err(Error::Precondition(format!("table 2 needs r >= 1, got {r}")));
    }
    Ok(BenchReport {
        format_version: 1,
        table: 2,
        contended: parallel,
        table1: Vec::new(),
        table2: run_cases(r_values, parallel, table2_row)?,
    })
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.table == 1 {
            writeln!(out, "{:>3} {:>6} {:>4} {:>8} {:>10} {:>8} {:>10}  check", "r", "nodes", "m", "|BCF0|", "t0 (s)", "|BCF1|", "t1 (s)")?;
            for row in &self.table1 {
                let check = match row.pass {
                    Some(true) => "ok",
                    Some(false) => "MISMATCH",
                    None if row.capped => "capped",
                    None => "-",
                };
                writeln!(
                    out,
                    "{:>3} {:>6} {:>4} {:>8} {:>10.4} {:>8} {:>10.4}  {check}",
                    row.r,
                    row.nodes,
                    row.features,
                    opt(row.bcf0),
                    row.bcf0_secs,
                    opt(row.bcf1),
                    row.bcf1_secs
                )?;
            }
        } else {
            writeln!(out, "{:>5} {:>6} {:>5} {:>5} {:>12} {:>12} {:>12}  check", "r", "nodes", "m", "|AXp|", "axp (s)", "waxp (s)", "equiv (s)")?;
            for row in &self.table2 {
                writeln!(
                    out,
                    "{:>5} {:>6} {:>5} {:>5} {:>12.6} {:>12.6} {:>12.6}  {}",
                    row.r,
                    row.nodes,
                    row.features,
                    row.axp_size,
                    row.find_one_axp_secs,
                    row.is_waxp_secs,
                    row.decide_secs,
                    if row.pass { "ok" } else { "MISMATCH" }
                )?;
            }
        }
        if self.contended {
            writeln!(out, "(cases ran concurrently; times are contended)")?;
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table1_rows_match() {
        let rep = run_table1(3, 5, 100_000, false).unwrap();
        let sizes: Vec<_> = rep.table1.iter().map(|r| (r.r, r.bcf0, r.bcf1)).collect();
        assert_eq!(sizes, vec![(3, Some(4), Some(22)), (4, Some(5), Some(46)), (5, Some(6), Some(94))]);
        assert!(rep.passed());
        assert!(rep.to_string().contains("ok"));
        assert!(run_table1(2, 4, 10, false).is_err());
    }

    #[test]
    fn caps_are_rows_not_failures() {
        let rep = run_table1(6, 6, 50, true).unwrap();
        assert!(rep.table1[0].capped);
        assert_eq!(rep.table1[0].pass, None);
        assert!(rep.passed());
        assert!(rep.to_string().contains("capped"));
    }

    #[test]
    fn table2_structure() {
        let rep = run_table2(&[1, 20], false).unwrap();
        let r = &rep.table2[1];
        assert_eq!((r.nodes, r.features), (123, 41));
        // one feature per pair plus the last one
        assert_eq!(r.axp_size, 21);
        assert!(rep.passed());
        let json = serde_json::to_string(&rep).unwrap();
        let back: BenchReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
        assert!(run_table2(&[0], false).is_err());
    }
}

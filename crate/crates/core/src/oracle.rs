//! Brute-force ground truth over enumerable feature spaces.
//!
//! Nothing here goes through path domains: points are enumerated, classified
//! by walking the tree, and literals are evaluated directly on values.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{ClassId, DecisionTree, Literal, PartialAssignment, Point, Schema, Value};
use crate::{Error, Result};

/// Default refusal threshold, in points.
pub const DEFAULT_POINT_CAP: u128 = 1 << 20;

/// All complete points of a schema without real-valued features, in
/// mixed-radix order (feature 1 varies slowest).
#[derive(Clone, Debug)]
pub struct EnumerableSpace<'s> {
    schema: &'s Schema,
    sizes: Vec<usize>,
    count: usize,
}

impl<'s> EnumerableSpace<'s> {
    pub fn new(schema: &'s Schema, cap: u128) -> Result<Self> {
        let count = schema
            .point_count()
            .ok_or_else(|| Error::Unsupported("real-valued features cannot be enumerated".into()))?;
        if count > cap {
            return Err(Error::CapExceeded {
                what: "feature space",
                size: count,
                cap,
            });
        }
        let sizes = schema.features().iter().map(|f| f.domain.size().unwrap() as usize).collect();
        Ok(EnumerableSpace {
            schema,
            sizes,
            count: count as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Per-feature value indices of the `n`-th point.
    pub fn digits(&self, mut n: usize) -> Vec<usize> {
        let mut d = vec![0; self.sizes.len()];
        for (i, s) in self.sizes.iter().enumerate().rev() {
            d[i] = n % s;
            n /= s;
        }
        d
    }

    pub fn point(&self, n: usize) -> Point {
        Point(
            self.digits(n)
                .iter()
                .zip(self.schema.features())
                .map(|(k, f)| f.domain.value_at(*k).unwrap())
                .collect(),
        )
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.count).map(|n| self.point(n))
    }
}

fn classify(tree: &DecisionTree, p: &Point) -> Result<ClassId> {
    tree.classify_point(p)
        .ok_or_else(|| Error::Precondition(format!("no path of the tree covers {p}")))
}

/// Point membership by direct literal evaluation.
pub fn satisfies(a: &PartialAssignment, p: &Point) -> bool {
    a.literals()
        .iter()
        .all(|l| p.get(l.feature).is_some_and(|v| l.satisfied_by(v)))
}

pub fn brute_equivalent(t1: &DecisionTree, t2: &DecisionTree) -> Result<bool> {
    brute_equivalent_with_cap(t1, t2, DEFAULT_POINT_CAP)
}

pub fn brute_equivalent_with_cap(t1: &DecisionTree, t2: &DecisionTree, cap: u128) -> Result<bool> {
    t1.check_same_schema(t2)?;
    let space = EnumerableSpace::new(t1.schema(), cap)?;
    for p in space.points() {
        if t1.class_label(classify(t1, &p)?) != t2.class_label(classify(t2, &p)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every point satisfying `a` is classified as `class`.
pub fn brute_is_waxp(tree: &DecisionTree, a: &PartialAssignment, class: &str) -> Result<bool> {
    brute_is_waxp_with_cap(tree, a, class, DEFAULT_POINT_CAP)
}

pub fn brute_is_waxp_with_cap(tree: &DecisionTree, a: &PartialAssignment, class: &str, cap: u128) -> Result<bool> {
    let c = tree.class_id(class)?;
    let space = EnumerableSpace::new(tree.schema(), cap)?;
    let mut any = false;
    for p in space.points().filter(|p| satisfies(a, p)) {
        any = true;
        if classify(tree, &p)? != c {
            return Ok(false);
        }
    }
    if !any {
        return Err(Error::Inconsistent);
    }
    Ok(true)
}

/// Candidate explanations: per feature either free (code 0) or pinned to its
/// `k`-th value (code `k + 1`), with the WAXp status of each candidate.
struct Lattice {
    radix: Vec<usize>,
    waxp: Vec<bool>,
}

impl Lattice {
    /// `allowed[i]` lists every value index of feature `i`.
    fn build(tree: &DecisionTree, class: ClassId, allowed: &[Vec<usize>], cap: u128) -> Result<Self> {
        let space = EnumerableSpace::new(tree.schema(), cap)?;
        let radix: Vec<usize> = allowed.iter().map(|a| a.len() + 1).collect();
        let total = radix.iter().try_fold(1u128, |acc, r| acc.checked_mul(*r as u128)).unwrap_or(u128::MAX);
        if total > cap {
            return Err(Error::CapExceeded {
                what: "explanation lattice",
                size: total,
                cap,
            });
        }
        let total = total as usize;
        // class of every point
        let table: Vec<ClassId> = space.points().map(|p| classify(tree, &p)).collect::<Result<_>>()?;
        let sizes = space.sizes().to_vec();
        let m = radix.len();
        let mut waxp = vec![false; total];
        // process candidates by increasing number of free features
        let mut by_free: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
        let mut codes = vec![0usize; m];
        for n in 0..total {
            decode(n, &radix, &mut codes);
            by_free[codes.iter().filter(|&&c| c == 0).count()].push(n);
        }
        let mut stride = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            stride[i] = stride[i + 1] * radix[i + 1];
        }
        for n in &by_free[0] {
            decode(*n, &radix, &mut codes);
            let mut idx = 0;
            for i in 0..m {
                idx = idx * sizes[i] + allowed[i][codes[i] - 1];
            }
            waxp[*n] = table[idx] == class;
        }
        for layer in &by_free[1..=m] {
            for &n in layer {
                decode(n, &radix, &mut codes);
                let i = codes.iter().position(|&c| c == 0).unwrap();
                waxp[n] = (1..radix[i]).all(|k| waxp[n + k * stride[i]]);
            }
        }
        Ok(Lattice { radix, waxp })
    }

    fn primes(&self) -> Vec<usize> {
        let m = self.radix.len();
        let mut stride = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            stride[i] = stride[i + 1] * self.radix[i + 1];
        }
        let mut codes = vec![0usize; m];
        (0..self.waxp.len())
            .filter(|&n| {
                if !self.waxp[n] {
                    return false;
                }
                decode(n, &self.radix, &mut codes);
                (0..m).all(|i| codes[i] == 0 || !self.waxp[n - codes[i] * stride[i]])
            })
            .collect()
    }
}

fn decode(mut n: usize, radix: &[usize], out: &mut [usize]) {
    for i in (0..radix.len()).rev() {
        out[i] = n % radix[i];
        n /= radix[i];
    }
}

fn to_assignment(schema: &Schema, allowed: &[Vec<usize>], radix: &[usize], n: usize) -> PartialAssignment {
    let mut codes = vec![0; radix.len()];
    decode(n, radix, &mut codes);
    PartialAssignment::new(
        codes
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(i, c)| {
                let v: Value = schema.features()[i].domain.value_at(allowed[i][c - 1]).unwrap();
                Literal::eq(i as u32 + 1, v)
            })
            .collect(),
    )
}

/// All subset-minimal value-level WAXps (AXps) for `class`.
pub fn brute_all_axps(tree: &DecisionTree, class: &str) -> Result<Vec<PartialAssignment>> {
    brute_all_axps_with_cap(tree, class, DEFAULT_POINT_CAP)
}

pub fn brute_all_axps_with_cap(tree: &DecisionTree, class: &str, cap: u128) -> Result<Vec<PartialAssignment>> {
    let c = tree.class_id(class)?;
    let schema = tree.schema();
    let allowed: Vec<Vec<usize>> = schema
        .features()
        .iter()
        .map(|f| (0..f.domain.size().unwrap_or(0) as usize).collect())
        .collect();
    let lattice = Lattice::build(tree, c, &allowed, cap)?;
    Ok(lattice
        .primes()
        .into_iter()
        .map(|n| to_assignment(schema, &allowed, &lattice.radix, n))
        .collect())
}

/// AXps for `class` whose literals are drawn from `instance`, a value-level
/// assignment with at most one literal per feature.
pub fn brute_all_axps_within(tree: &DecisionTree, class: &str, instance: &PartialAssignment) -> Result<Vec<PartialAssignment>> {
    let c = tree.class_id(class)?;
    let schema = tree.schema();
    let mut allowed: Vec<Vec<usize>> = vec![Vec::new(); schema.len()];
    for l in instance.literals() {
        let domain = schema.domain(l.feature)?;
        let v = l
            .singleton()
            .ok_or_else(|| Error::Unsupported(format!("literal {l} is not value-level")))?;
        let k = domain
            .index_of(v)
            .ok_or_else(|| Error::Literal {
                feature: l.feature,
                reason: format!("value {v} outside domain"),
            })?;
        let slot = &mut allowed[l.feature.index()];
        if !slot.is_empty() {
            return Err(Error::Unsupported(format!("several literals on {}", l.feature)));
        }
        slot.push(k);
    }
    let space = EnumerableSpace::new(schema, DEFAULT_POINT_CAP)?;
    let pinned: Vec<(usize, usize)> = allowed
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.first().map(|k| (i, *k)))
        .collect();
    let k = pinned.len();
    if k > 24 {
        return Err(Error::CapExceeded {
            what: "instance literals",
            size: k as u128,
            cap: 24,
        });
    }
    // blocked[S]: some point agreeing with the instance on a superset of S
    // is classified differently, i.e. S (as pinned literals) is not a WAXp
    let mut blocked = vec![false; 1 << k];
    for n in 0..space.len() {
        let d = space.digits(n);
        let p = Point(d.iter().zip(schema.features()).map(|(x, f)| f.domain.value_at(*x).unwrap()).collect());
        if classify(tree, &p)? != c {
            let agree = pinned
                .iter()
                .enumerate()
                .filter(|(_, (i, v))| d[*i] == *v)
                .fold(0usize, |acc, (b, _)| acc | 1 << b);
            blocked[agree] = true;
        }
    }
    for b in 0..k {
        for s in 0..1usize << k {
            if s & (1 << b) == 0 && blocked[s | 1 << b] {
                blocked[s] = true;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..1usize << k {
        if blocked[s] || (0..k).any(|b| s & (1 << b) != 0 && !blocked[s & !(1 << b)]) {
            continue;
        }
        out.push(PartialAssignment::new(
            (0..k)
                .filter(|b| s & (1 << b) != 0)
                .map(|b| {
                    let (i, v) = pinned[b];
                    Literal::eq(i as u32 + 1, schema.features()[i].domain.value_at(v).unwrap())
                })
                .collect(),
        ));
    }
    Ok(out)
}

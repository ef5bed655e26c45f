//! Per-feature value sets: masks over finite domains and unions of disjoint
//! intervals over ordinal ones. All emptiness tests are exact.

use alloc::vec;
use alloc::vec::Vec;

use super::{Domain, Value};

/// Subset of one feature's domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Restriction {
    /// Bit `k` set means the `k`-th declared value is allowed (boolean, categorical).
    Values(ValueMask),
    /// Sorted, disjoint, non-adjacent inclusive integer ranges.
    Ints(Vec<(i64, i64)>),
    /// Sorted, disjoint, maximal real intervals.
    Reals(Vec<RealInterval>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueMask {
    len: usize,
    words: Vec<u64>,
}

impl ValueMask {
    pub fn empty(len: usize) -> Self {
        ValueMask {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = Self::empty(len);
        for k in 0..len {
            m.insert(k);
        }
        m
    }

    pub fn insert(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, k: usize) -> bool {
        k < self.len && self.words[k / 64] & (1 << (k % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&k| self.contains(k))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        ValueMask {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

/// Real interval with open or closed ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealInterval {
    pub lo: f64,
    pub lo_closed: bool,
    pub hi: f64,
    pub hi_closed: bool,
}

impl RealInterval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        RealInterval {
            lo,
            lo_closed: true,
            hi,
            hi_closed: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    fn intersect(&self, other: &Self) -> Self {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if self.lo < other.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if self.hi > other.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        RealInterval {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }

    /// Smallest member when the lower end is closed; otherwise the first
    /// integer above an open lower end, falling back to the midpoint.
    pub fn pick(&self) -> f64 {
        if self.lo_closed {
            return self.lo;
        }
        let next = floor(self.lo) + 1.0;
        if self.contains(next) {
            next
        } else {
            self.lo + (self.hi - self.lo) / 2.0
        }
    }
}

fn floor(x: f64) -> f64 {
    if x.abs() >= 9.007_199_254_740_992e15 {
        return x;
    }
    let t = x as i64 as f64;
    if t > x {
        t - 1.0
    } else {
        t
    }
}

fn normalize_reals(mut v: Vec<RealInterval>) -> Vec<RealInterval> {
    v.retain(|i| !i.is_empty());
    v.sort_by(|a, b| {
        a.lo.partial_cmp(&b.lo)
            .unwrap()
            .then(b.lo_closed.cmp(&a.lo_closed))
    });
    let mut out: Vec<RealInterval> = Vec::with_capacity(v.len());
    for next in v {
        if let Some(cur) = out.last_mut() {
            let touches = next.lo < cur.hi || (next.lo == cur.hi && (next.lo_closed || cur.hi_closed));
            if touches {
                if next.hi > cur.hi {
                    cur.hi = next.hi;
                    cur.hi_closed = next.hi_closed;
                } else if next.hi == cur.hi {
                    cur.hi_closed |= next.hi_closed;
                }
                continue;
            }
        }
        out.push(next);
    }
    out
}

fn normalize_ints(mut v: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    v.retain(|(lo, hi)| lo <= hi);
    v.sort_unstable();
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(v.len());
    for (lo, hi) in v {
        if let Some(cur) = out.last_mut() {
            if lo <= cur.1.saturating_add(1) {
                cur.1 = cur.1.max(hi);
                continue;
            }
        }
        out.push((lo, hi));
    }
    out
}

impl Restriction {
    /// The whole domain.
    pub fn full(domain: &Domain) -> Self {
        match domain {
            Domain::Boolean => Restriction::Values(ValueMask::full(2)),
            Domain::Categorical(values) => Restriction::Values(ValueMask::full(values.len())),
            Domain::OrdinalInt { lo, hi } => Restriction::Ints(vec![(*lo, *hi)]),
            Domain::OrdinalReal { lo, hi } => Restriction::Reals(vec![RealInterval::closed(*lo, *hi)]),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Restriction::Values(m) => m.is_empty(),
            Restriction::Ints(v) => v.is_empty(),
            Restriction::Reals(v) => v.is_empty(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        match (self, other) {
            (Restriction::Values(a), Restriction::Values(b)) => Restriction::Values(a.zip_with(b, |x, y| x & y)),
            (Restriction::Ints(a), Restriction::Ints(b)) => {
                let mut out = Vec::new();
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    let lo = a[i].0.max(b[j].0);
                    let hi = a[i].1.min(b[j].1);
                    if lo <= hi {
                        out.push((lo, hi));
                    }
                    if a[i].1 < b[j].1 {
                        i += 1;
                    } else {
                        j += 1;
                    }
                }
                Restriction::Ints(out)
            }
            (Restriction::Reals(a), Restriction::Reals(b)) => {
                let mut out = Vec::new();
                for x in a {
                    for y in b {
                        let z = x.intersect(y);
                        if !z.is_empty() {
                            out.push(z);
                        }
                    }
                }
                Restriction::Reals(normalize_reals(out))
            }
            _ => panic!("intersecting restrictions of different domain kinds"),
        }
    }

    /// `self ∩ other ≠ ∅` without materializing the intersection.
    pub fn overlaps(&self, other: &Self) -> bool {
        match (self, other) {
            (Restriction::Values(a), Restriction::Values(b)) => {
                a.words.iter().zip(&b.words).any(|(x, y)| x & y != 0)
            }
            (Restriction::Ints(a), Restriction::Ints(b)) => {
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    if a[i].0.max(b[j].0) <= a[i].1.min(b[j].1) {
                        return true;
                    }
                    if a[i].1 < b[j].1 {
                        i += 1;
                    } else {
                        j += 1;
                    }
                }
                false
            }
            (Restriction::Reals(a), Restriction::Reals(b)) => a
                .iter()
                .any(|x| b.iter().any(|y| !x.intersect(y).is_empty())),
            _ => panic!("comparing restrictions of different domain kinds"),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        match (self, other) {
            (Restriction::Values(a), Restriction::Values(b)) => Restriction::Values(a.zip_with(b, |x, y| x | y)),
            (Restriction::Ints(a), Restriction::Ints(b)) => {
                Restriction::Ints(normalize_ints(a.iter().chain(b).copied().collect()))
            }
            (Restriction::Reals(a), Restriction::Reals(b)) => {
                Restriction::Reals(normalize_reals(a.iter().chain(b).copied().collect()))
            }
            _ => panic!("joining restrictions of different domain kinds"),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.intersect(other) == *self
    }

    pub fn contains(&self, domain: &Domain, value: &Value) -> bool {
        match self {
            Restriction::Values(m) => domain.index_of(value).is_some_and(|k| m.contains(k)),
            Restriction::Ints(v) => match value {
                Value::Int(x) => v.iter().any(|(lo, hi)| lo <= x && x <= hi),
                _ => false,
            },
            Restriction::Reals(v) => value.as_f64().is_some_and(|x| v.iter().any(|i| i.contains(x))),
        }
    }

    /// Deterministic representative: first declared value, lowest integer,
    /// or the lowest real (integer-rounded when the bound is open).
    pub fn pick(&self, domain: &Domain) -> Option<Value> {
        match self {
            Restriction::Values(m) => domain.value_at(m.first()?),
            Restriction::Ints(v) => v.first().map(|(lo, _)| Value::Int(*lo)),
            Restriction::Reals(v) => v.first().map(|i| Value::Real(i.pick())),
        }
    }
}

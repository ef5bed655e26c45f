use alloc::vec;
use alloc::vec::Vec;

use super::restriction::Restriction;
use super::{FeatureId, Literal, Point, Schema, Value};
use crate::Result;

/// `dom(A)`: the set of points consistent with a conjunction of literals.
///
/// Boolean features are packed into two bitsets (`care`, `val`); every other
/// restricted feature carries an explicit [`Restriction`]. Features that are
/// not mentioned are unrestricted. All empty subsets compare equal.
#[derive(Clone, Debug)]
pub struct DomainSubset {
    care: Vec<u64>,
    val: Vec<u64>,
    others: Vec<(FeatureId, Restriction)>,
    empty: bool,
}

impl PartialEq for DomainSubset {
    fn eq(&self, other: &Self) -> bool {
        if self.empty || other.empty {
            return self.empty == other.empty;
        }
        self.care == other.care && self.val == other.val && self.others == other.others
    }
}

impl DomainSubset {
    /// The whole feature space.
    pub fn full(schema: &Schema) -> Self {
        let words = schema.len().div_ceil(64);
        DomainSubset {
            care: vec![0; words],
            val: vec![0; words],
            others: Vec::new(),
            empty: false,
        }
    }

    pub fn from_literals<'a>(schema: &Schema, literals: impl IntoIterator<Item = &'a Literal>) -> Result<Self> {
        let mut d = Self::full(schema);
        for l in literals {
            d.restrict(schema, l)?;
        }
        Ok(d)
    }

    /// Conjoins one literal.
    pub fn restrict(&mut self, schema: &Schema, literal: &Literal) -> Result<()> {
        let r = literal.restriction(schema)?;
        self.restrict_with(schema, literal.feature, r);
        Ok(())
    }

    pub(crate) fn restrict_with(&mut self, schema: &Schema, feature: FeatureId, r: Restriction) {
        let i = feature.index();
        if schema.features()[i].domain.is_boolean() {
            let Restriction::Values(mask) = &r else { unreachable!() };
            let (w, b) = (i / 64, 1u64 << (i % 64));
            match (mask.contains(0), mask.contains(1)) {
                (true, true) => {}
                (false, false) => self.empty = true,
                (zero, _) => {
                    let one = !zero;
                    if self.care[w] & b != 0 {
                        if (self.val[w] & b != 0) != one {
                            self.empty = true;
                        }
                    } else {
                        self.care[w] |= b;
                        if one {
                            self.val[w] |= b;
                        }
                    }
                }
            }
            return;
        }
        match self.others.binary_search_by_key(&feature, |(f, _)| *f) {
            Ok(k) => {
                let merged = self.others[k].1.intersect(&r);
                if merged.is_empty() {
                    self.empty = true;
                }
                self.others[k].1 = merged;
            }
            Err(k) => {
                if r.is_empty() {
                    self.empty = true;
                }
                self.others.insert(k, (feature, r));
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// `self ∩ other`.
    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = DomainSubset {
            care: self.care.iter().zip(&other.care).map(|(a, b)| a | b).collect(),
            val: self.val.iter().zip(&other.val).map(|(a, b)| a | b).collect(),
            others: Vec::with_capacity(self.others.len() + other.others.len()),
            empty: self.empty || other.empty || self.bool_clash(other),
        };
        let (a, b) = (&self.others, &other.others);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.others.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.others.push(b[j].clone());
                j += 1;
            } else {
                let r = a[i].1.intersect(&b[j].1);
                out.empty |= r.is_empty();
                out.others.push((a[i].0, r));
                i += 1;
                j += 1;
            }
        }
        out
    }

    fn bool_clash(&self, other: &Self) -> bool {
        self.care
            .iter()
            .zip(&other.care)
            .zip(self.val.iter().zip(&other.val))
            .any(|((c1, c2), (v1, v2))| c1 & c2 & (v1 ^ v2) != 0)
    }

    /// `self ∩ other ≠ ∅`, without allocating.
    pub fn intersects(&self, other: &Self) -> bool {
        if self.empty || other.empty || self.bool_clash(other) {
            return false;
        }
        let (a, b) = (&self.others, &other.others);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    if !a[i].1.overlaps(&b[j].1) {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    }

    /// Projection on one feature (the full domain when unrestricted).
    pub fn restriction(&self, schema: &Schema, feature: FeatureId) -> Restriction {
        let domain = &schema.features()[feature.index()].domain;
        if domain.is_boolean() {
            let i = feature.index();
            let (w, b) = (i / 64, 1u64 << (i % 64));
            let mut r = Restriction::full(domain);
            if self.care[w] & b != 0 {
                let mut mask = super::ValueMask::empty(2);
                mask.insert(usize::from(self.val[w] & b != 0));
                r = Restriction::Values(mask);
            }
            return r;
        }
        match self.others.binary_search_by_key(&feature, |(f, _)| *f) {
            Ok(k) => self.others[k].1.intersect(&Restriction::full(domain)),
            Err(_) => Restriction::full(domain),
        }
    }

    /// Whether `feature` is constrained at all.
    pub fn mentions(&self, feature: FeatureId) -> bool {
        let i = feature.index();
        (i / 64 < self.care.len() && self.care[i / 64] & (1 << (i % 64)) != 0)
            || self.others.binary_search_by_key(&feature, |(f, _)| *f).is_ok()
    }

    pub fn contains(&self, schema: &Schema, point: &Point) -> bool {
        !self.empty
            && schema
                .features()
                .iter()
                .zip(point.values())
                .all(|(f, v)| self.restriction(schema, f.id).contains(&f.domain, v))
    }

    /// Deterministic member: per feature, the first declared value or the
    /// lowest endpoint of the restriction.
    pub fn pick_point(&self, schema: &Schema) -> Option<Point> {
        if self.empty {
            return None;
        }
        schema
            .features()
            .iter()
            .map(|f| self.restriction(schema, f.id).pick(&f.domain))
            .collect::<Option<Vec<Value>>>()
            .map(Point)
    }
}

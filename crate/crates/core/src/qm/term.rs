use core::cmp::Ordering;
use core::fmt;

use smallvec::{smallvec, SmallVec};

use crate::model::FeatureId;

type Words = SmallVec<[u64; 2]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Negative,
    Positive,
}

/// Conjunction of boolean literals over a fixed number of features.
///
/// Ordered by its literal sequence (features ascending, `¬x` before `x`),
/// so a sorted term list is a canonical form of a term set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pos: Words,
    neg: Words,
}

impl Term {
    /// The empty conjunction (constant true) over `width` features.
    pub fn top(width: usize) -> Self {
        let n = width.div_ceil(64).max(1);
        Term {
            pos: smallvec![0; n],
            neg: smallvec![0; n],
        }
    }

    pub fn from_literals(width: usize, lits: impl IntoIterator<Item = (FeatureId, Polarity)>) -> Self {
        let mut t = Term::top(width);
        for (f, p) in lits {
            t.set(f, Some(p));
        }
        t
    }

    pub fn set(&mut self, feature: FeatureId, polarity: Option<Polarity>) {
        let i = feature.index();
        let (w, b) = (i / 64, 1u64 << (i % 64));
        self.pos[w] &= !b;
        self.neg[w] &= !b;
        match polarity {
            Some(Polarity::Positive) => self.pos[w] |= b,
            Some(Polarity::Negative) => self.neg[w] |= b,
            None => {}
        }
    }

    pub fn get(&self, feature: FeatureId) -> Option<Polarity> {
        let i = feature.index();
        let (w, b) = (i / 64, 1u64 << (i % 64));
        if self.pos[w] & b != 0 {
            Some(Polarity::Positive)
        } else if self.neg[w] & b != 0 {
            Some(Polarity::Negative)
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.pos.iter().chain(&self.neg).map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Literals in ascending feature order.
    pub fn literals(&self) -> impl Iterator<Item = (FeatureId, Polarity)> + '_ {
        self.pos.iter().zip(&self.neg).enumerate().flat_map(|(w, (&p, &n))| {
            let mut bits = p | n;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let pol = if p & (1 << b) != 0 { Polarity::Positive } else { Polarity::Negative };
                Some((FeatureId::from_index(w * 64 + b), pol))
            })
        })
    }

    /// Every literal of `self` occurs in `other` (so `self` absorbs `other`).
    pub fn absorbs(&self, other: &Term) -> bool {
        self.pos.iter().zip(&other.pos).all(|(a, b)| a & !b == 0)
            && self.neg.iter().zip(&other.neg).all(|(a, b)| a & !b == 0)
    }

    /// Consensus on the single clashing variable, `None` unless exactly one
    /// variable clashes.
    pub fn consensus(&self, other: &Term) -> Option<Term> {
        let mut clashes = 0u32;
        for w in 0..self.pos.len() {
            clashes += ((self.pos[w] & other.neg[w]) | (self.neg[w] & other.pos[w])).count_ones();
            if clashes > 1 {
                return None;
            }
        }
        if clashes != 1 {
            return None;
        }
        let mut t = Term {
            pos: self.pos.iter().zip(&other.pos).map(|(a, b)| a | b).collect(),
            neg: self.neg.iter().zip(&other.neg).map(|(a, b)| a | b).collect(),
        };
        for w in 0..t.pos.len() {
            let clash = t.pos[w] & t.neg[w];
            t.pos[w] &= !clash;
            t.neg[w] &= !clash;
        }
        Some(t)
    }

    /// Evaluates on a point given as a bit vector (bit `i` = feature `i+1`).
    pub fn covers_bits(&self, bits: u64) -> bool {
        self.pos[0] & !bits == 0 && self.neg[0] & bits == 0
    }

    /// Evaluates on a point given as booleans in feature order.
    pub fn covers(&self, point: &[bool]) -> bool {
        self.literals().all(|(f, p)| point[f.index()] == (p == Polarity::Positive))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.literals();
        let mut b = other.literals();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `~x1 x3`; the empty term prints as `1`.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, (feat, pol)) in self.literals().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if pol == Polarity::Negative {
                f.write_str("~")?;
            }
            write!(f, "{feat}")?;
        }
        Ok(())
    }
}

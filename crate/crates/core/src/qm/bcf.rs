use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::{ClassDnf, DnfKind, Term};
use crate::{Error, Result};

pub const DEFAULT_TERM_CAP: usize = 200_000;

/// Which pending term the closure processes next. Both reach the same BCF.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WorklistOrder {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Clone, Debug)]
pub struct BcfConfig {
    /// Abort once more than this many terms are alive at once.
    pub term_cap: usize,
    pub order: WorklistOrder,
}

impl Default for BcfConfig {
    fn default() -> Self {
        BcfConfig {
            term_cap: DEFAULT_TERM_CAP,
            order: WorklistOrder::Fifo,
        }
    }
}

struct Closure {
    terms: Vec<Term>,
    alive: Vec<bool>,
    live: usize,
}

impl Closure {
    /// Adds `t` unless an alive term absorbs it; drops alive terms `t` absorbs.
    fn insert(&mut self, t: Term) -> Option<usize> {
        let len = t.len();
        for (s, _) in self.terms.iter().zip(&self.alive).filter(|(_, a)| **a) {
            if s.len() <= len && s.absorbs(&t) {
                return None;
            }
        }
        for k in 0..self.terms.len() {
            if self.alive[k] && self.terms[k].len() > len && t.absorbs(&self.terms[k]) {
                self.alive[k] = false;
                self.live -= 1;
            }
        }
        self.terms.push(t);
        self.alive.push(true);
        self.live += 1;
        Some(self.terms.len() - 1)
    }
}

pub fn bcf(raw: &ClassDnf) -> Result<ClassDnf> {
    bcf_with(raw, &BcfConfig::default())
}

/// Iterated consensus with absorption on insert, then a final absorption pass.
pub fn bcf_with(raw: &ClassDnf, cfg: &BcfConfig) -> Result<ClassDnf> {
    let mut cl = Closure {
        terms: Vec::new(),
        alive: Vec::new(),
        live: 0,
    };
    let mut pending = VecDeque::new();
    for t in &raw.terms {
        if let Some(k) = cl.insert(t.clone()) {
            pending.push_back(k);
        }
    }
    loop {
        let next = match cfg.order {
            WorklistOrder::Fifo => pending.pop_front(),
            WorklistOrder::Lifo => pending.pop_back(),
        };
        let Some(k) = next else { break };
        if !cl.alive[k] {
            continue;
        }
        let t = cl.terms[k].clone();
        let mut j = 0;
        while j < cl.terms.len() {
            if j != k && cl.alive[j] {
                if let Some(c) = t.consensus(&cl.terms[j]) {
                    if let Some(n) = cl.insert(c) {
                        pending.push_back(n);
                        if cl.live > cfg.term_cap {
                            return Err(Error::TermCap(cl.live));
                        }
                    }
                    if !cl.alive[k] {
                        // a consensus absorbed `t`; whatever `t` would still
                        // produce is absorbed by consensus with its absorber
                        break;
                    }
                }
            }
            j += 1;
        }
    }
    let mut out: Vec<Term> = cl
        .terms
        .into_iter()
        .zip(cl.alive)
        .filter_map(|(t, a)| a.then_some(t))
        .collect();
    out.sort();
    out.dedup();
    let absorbed: Vec<bool> = out
        .iter()
        .enumerate()
        .map(|(i, t)| out.iter().enumerate().any(|(j, s)| i != j && s.absorbs(t)))
        .collect();
    let out = out
        .into_iter()
        .zip(absorbed)
        .filter_map(|(t, a)| (!a).then_some(t))
        .collect();
    Ok(ClassDnf::new(raw.class.clone(), DnfKind::Bcf, raw.width, out))
}

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ClassDnf, DnfKind, Term};
use crate::{Error, Result};

/// How to choose among covers of equal cost. Covers are compared as sorted
/// term sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographically smallest cover.
    LexLow,
    /// Lexicographically largest cover, comparing terms from the largest down.
    LexHigh,
    /// Smallest cover under a seeded random ranking of the primes.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CostModel {
    /// Fewest terms, then fewest literals.
    #[default]
    TermsThenLiterals,
    LiteralsThenTerms,
}

#[derive(Clone, Debug)]
pub struct MinimizeConfig {
    /// Refuse to enumerate minterms above this many features.
    pub max_features: usize,
    pub cost: CostModel,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            max_features: 20,
            cost: CostModel::default(),
        }
    }
}

/// Minterms of the prime disjunction and which primes cover each.
#[derive(Clone, Debug)]
pub struct CoverProblem {
    /// Bit `i` of a minterm is feature `i+1`.
    pub minterms: Vec<u64>,
    pub primes: Vec<Term>,
    /// `covers[k]`: primes covering `minterms[k]`, ascending.
    pub covers: Vec<Vec<usize>>,
}

impl CoverProblem {
    pub fn new(primes: &ClassDnf, max_features: usize) -> Result<Self> {
        let m = primes.width;
        if m > max_features.min(63) {
            return Err(Error::CapExceeded {
                what: "features for minterm enumeration",
                size: m as u128,
                cap: max_features.min(63) as u128,
            });
        }
        let full: u64 = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
        let mut minterms = Vec::new();
        for t in &primes.terms {
            let mut fixed = 0u64;
            let mut ones = 0u64;
            for (f, p) in t.literals() {
                fixed |= 1 << f.index();
                if p == super::Polarity::Positive {
                    ones |= 1 << f.index();
                }
            }
            let free = full & !fixed;
            let mut sub = free;
            loop {
                minterms.push(ones | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        minterms.sort_unstable();
        minterms.dedup();
        let covers = minterms
            .iter()
            .map(|&x| (0..primes.terms.len()).filter(|&p| primes.terms[p].covers_bits(x)).collect())
            .collect();
        Ok(CoverProblem {
            minterms,
            primes: primes.terms.clone(),
            covers,
        })
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        self.covers.iter().all(|c| c.iter().any(|p| chosen.contains(p)))
    }

    /// Primes that are the only cover of some minterm.
    pub fn essentials(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.covers.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    fn cost_of(&self, chosen: &[usize], model: CostModel) -> (usize, usize) {
        let terms = chosen.len();
        let lits = chosen.iter().map(|&p| self.primes[p].len()).sum();
        match model {
            CostModel::TermsThenLiterals => (terms, lits),
            CostModel::LiteralsThenTerms => (lits, terms),
        }
    }

    /// Minimum-cost cover (prime indices, ascending), unique under `tie`.
    pub fn solve(&self, tie: TieBreak, model: CostModel) -> Vec<usize> {
        let n = self.primes.len();
        let rank: Vec<usize> = match tie {
            TieBreak::LexLow => (0..n).collect(),
            TieBreak::LexHigh => (0..n).rev().collect(),
            TieBreak::Seeded(seed) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                let mut rank = vec![0; n];
                for (r, p) in order.into_iter().enumerate() {
                    rank[p] = r;
                }
                rank
            }
        };
        let essentials = self.essentials();
        let mut s = Search {
            problem: self,
            model,
            rank,
            count: vec![0; self.minterms.len()],
            banned: vec![false; n],
            chosen: Vec::new(),
            best: None,
        };
        for &p in &essentials {
            s.add(p);
        }
        s.run();
        let mut best = s.best.expect("the primes cover every minterm").1;
        best.sort_unstable();
        best
    }
}

type TieKey = ((usize, usize), Vec<usize>);

struct Search<'a> {
    problem: &'a CoverProblem,
    model: CostModel,
    rank: Vec<usize>,
    count: Vec<u32>,
    banned: Vec<bool>,
    chosen: Vec<usize>,
    /// `(cost, sorted ranks)`, cover
    best: Option<(TieKey, Vec<usize>)>,
}

impl Search<'_> {
    fn add(&mut self, p: usize) {
        self.chosen.push(p);
        for (k, c) in self.problem.covers.iter().enumerate() {
            if c.binary_search(&p).is_ok() {
                self.count[k] += 1;
            }
        }
    }

    fn remove(&mut self, p: usize) {
        self.chosen.pop();
        for (k, c) in self.problem.covers.iter().enumerate() {
            if c.binary_search(&p).is_ok() {
                self.count[k] -= 1;
            }
        }
    }

    fn key(&self) -> ((usize, usize), Vec<usize>) {
        let mut ranks: Vec<usize> = self.chosen.iter().map(|&p| self.rank[p]).collect();
        ranks.sort_unstable();
        (self.problem.cost_of(&self.chosen, self.model), ranks)
    }

    fn beats_best(&self, cost: (usize, usize)) -> bool {
        self.best.as_ref().is_none_or(|((b, _), _)| cost <= *b)
    }

    fn run(&mut self) {
        // uncovered minterm with the fewest usable primes
        let mut pick: Option<(usize, usize)> = None;
        for (k, c) in self.problem.covers.iter().enumerate() {
            if self.count[k] > 0 {
                continue;
            }
            let usable = c.iter().filter(|&&p| !self.banned[p]).count();
            if usable == 0 {
                return;
            }
            if pick.is_none_or(|(_, u)| usable < u) {
                pick = Some((k, usable));
            }
        }
        let Some((k, _)) = pick else {
            let key = self.key();
            let better = match &self.best {
                None => true,
                Some((b, _)) => match key.0.cmp(&b.0) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => key.1 < b.1,
                },
            };
            if better {
                self.best = Some((key, self.chosen.clone()));
            }
            return;
        };
        let mut options: Vec<usize> = self.problem.covers[k].iter().copied().filter(|&p| !self.banned[p]).collect();
        options.sort_by_key(|&p| self.rank[p]);
        let mut banned_here = Vec::new();
        for p in options {
            self.chosen.push(p);
            let cost = self.problem.cost_of(&self.chosen, self.model);
            self.chosen.pop();
            if self.beats_best(cost) {
                self.add(p);
                self.run();
                self.remove(p);
            }
            // siblings must not pick `p` again: those covers were explored here
            self.banned[p] = true;
            banned_here.push(p);
        }
        for p in banned_here {
            self.banned[p] = false;
        }
    }
}

pub fn minimize(primes: &ClassDnf, tie: TieBreak) -> Result<ClassDnf> {
    minimize_with(primes, tie, &MinimizeConfig::default())
}

/// Essential primes first, then exhaustive branch and bound over the rest.
pub fn minimize_with(primes: &ClassDnf, tie: TieBreak, cfg: &MinimizeConfig) -> Result<ClassDnf> {
    if primes.kind != DnfKind::Bcf {
        return Err(Error::Precondition("minimize expects the prime implicants (a BCF)".into()));
    }
    let problem = CoverProblem::new(primes, cfg.max_features)?;
    let chosen = problem.solve(tie, cfg.cost);
    let terms = chosen.into_iter().map(|p| problem.primes[p].clone()).collect();
    Ok(ClassDnf::new(primes.class.clone(), DnfKind::Minimized, primes.width, terms))
}

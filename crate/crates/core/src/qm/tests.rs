use std::collections::BTreeSet;
use std::prelude::rust_2021::*;
use std::string::ToString;
use std::vec;

use proptest::prelude::*;

use super::*;
use crate::equiv::decide;
use crate::gen::{example_function_trees, mutate_leaf, random_tree, restructure, running_examples, worst_case};
use crate::model::{FeatureId, Node, NodeId, Schema};
use crate::oracle::brute_equivalent;
use crate::testutil::mixed_schema;

fn lines(d: &ClassDnf) -> Vec<String> {
    d.terms.iter().map(ToString::to_string).collect()
}

fn term(width: usize, lits: &[i32]) -> Term {
    Term::from_literals(
        width,
        lits.iter().map(|&l| {
            let pol = if l > 0 { Polarity::Positive } else { Polarity::Negative };
            (FeatureId(l.unsigned_abs()), pol)
        }),
    )
}

#[test]
fn term_basics() {
    let t = term(3, &[-1, 3]);
    assert_eq!(t.to_string(), "~x1 x3");
    assert_eq!(Term::top(3).to_string(), "1");
    assert!(term(3, &[3]).absorbs(&t));
    assert!(!t.absorbs(&term(3, &[3])));
    assert_eq!(term(3, &[1]).consensus(&term(3, &[-1, 2])), Some(term(3, &[2])));
    assert_eq!(term(3, &[1, 2]).consensus(&term(3, &[-1, -2])), None);
    assert_eq!(term(3, &[1]).consensus(&term(3, &[2])), None);
    assert!(term(3, &[-1]) < term(3, &[1]));
    assert!(term(3, &[1]) < term(3, &[1, 2]));
    assert!(term(3, &[1, 3]) < term(3, &[2]));
    assert!(t.covers(&[false, true, true]));
    assert!(t.covers_bits(0b110));
    assert!(!t.covers_bits(0b111));
    let wide = term(130, &[-1, 70, 129]);
    assert_eq!(wide.to_string(), "~x1 x70 x129");
    assert_eq!(wide.len(), 3);
}

#[test]
fn class_terms_of_the_running_example() {
    let (t1, _, _) = running_examples();
    assert_eq!(lines(&class_terms(&t1, "1").unwrap()), ["~x1 x2", "x1"]);
    assert_eq!(lines(&class_terms(&t1, "0").unwrap()), ["~x1 ~x2"]);
    let constant =
        DecisionTree::new(Schema::boolean(2), vec!["0".into(), "1".into()], vec![Node::leaf(1, 1)], NodeId(1)).unwrap();
    assert!(class_terms(&constant, "0").unwrap().is_empty());
    assert_eq!(lines(&class_terms(&constant, "1").unwrap()), ["1"]);
    assert!(matches!(class_terms(&random_tree(&mixed_schema(), 3, 1), "0"), Err(Error::Unsupported(_))));
}

#[test]
fn bcf_examples() {
    let (t1, _, _) = running_examples();
    assert_eq!(lines(&bcf(&class_terms(&t1, "1").unwrap()).unwrap()), ["x1", "x2"]);
    let single = ClassDnf::new("c", DnfKind::Raw, 3, vec![term(3, &[1, -3])]);
    assert_eq!(bcf(&single).unwrap().terms, single.terms);
    let g = worst_case(3).unwrap();
    assert_eq!(bcf(&class_terms(&g, "1").unwrap()).unwrap().len(), 22);
    assert_eq!(bcf(&class_terms(&g, "0").unwrap()).unwrap().len(), 4);
    let tight = BcfConfig {
        term_cap: 5,
        ..BcfConfig::default()
    };
    assert!(matches!(bcf_with(&class_terms(&g, "1").unwrap(), &tight), Err(Error::TermCap(_))));
}

#[test]
fn gadget_bcf_sizes() {
    for r in 1..=6usize {
        let g = worst_case(r).unwrap();
        assert_eq!(bcf(&class_terms(&g, "1").unwrap()).unwrap().len(), 3 * (1 << r) - 2);
        assert_eq!(bcf(&class_terms(&g, "0").unwrap()).unwrap().len(), r + 1);
    }
}

const COVER_A: [&str; 4] = ["~x1 ~x3 x4", "x1 x3 ~x4", "~x2 ~x3 ~x4", "x2 x3 x4"];
const COVER_B: [&str; 4] = ["~x1 ~x2 ~x3", "~x1 x2 x4", "x1 ~x2 ~x4", "x1 x2 x3"];

#[test]
fn example_function_primes_and_covers() {
    let (a, _) = example_function_trees();
    let primes = bcf(&class_terms(&a, "1").unwrap()).unwrap();
    let got: BTreeSet<String> = lines(&primes).into_iter().collect();
    let want: BTreeSet<String> = COVER_A.iter().chain(&COVER_B).map(|s| s.to_string()).collect();
    assert_eq!(got, want);
    let low = minimize(&primes, TieBreak::LexLow).unwrap();
    let high = minimize(&primes, TieBreak::LexHigh).unwrap();
    assert_eq!(low.kind, DnfKind::Minimized);
    assert_eq!(lines(&low), COVER_B);
    assert_eq!(lines(&high), COVER_A);
    let problem = CoverProblem::new(&primes, 20).unwrap();
    assert_eq!(problem.minterms, vec![0, 1, 5, 7, 8, 10, 14, 15]);
    assert!(problem.essentials().is_empty());
    let seeded: BTreeSet<Vec<String>> = (0..16).map(|s| lines(&minimize(&primes, TieBreak::Seeded(s)).unwrap())).collect();
    assert!(seeded.iter().all(|c| c == &lines(&low) || c == &lines(&high)));
    assert_eq!(
        minimize(&primes, TieBreak::Seeded(3)).unwrap(),
        minimize(&primes, TieBreak::Seeded(3)).unwrap()
    );
}

#[test]
fn minimize_edge_cases() {
    let single = bcf(&ClassDnf::new("c", DnfKind::Raw, 3, vec![term(3, &[1, -2, 3])])).unwrap();
    assert_eq!(lines(&minimize(&single, TieBreak::LexLow).unwrap()), ["x1 ~x2 x3"]);
    let empty = ClassDnf::new("c", DnfKind::Bcf, 3, vec![]);
    assert!(minimize(&empty, TieBreak::LexLow).unwrap().is_empty());
    let raw = ClassDnf::new("c", DnfKind::Raw, 3, vec![term(3, &[1])]);
    assert!(matches!(minimize(&raw, TieBreak::LexLow), Err(Error::Precondition(_))));
    let wide = ClassDnf::new("c", DnfKind::Bcf, 21, vec![term(21, &[1])]);
    assert!(matches!(minimize(&wide, TieBreak::LexLow), Err(Error::CapExceeded { .. })));
    let ok = minimize_with(
        &wide,
        TieBreak::LexLow,
        &MinimizeConfig {
            max_features: 21,
            ..MinimizeConfig::default()
        },
    );
    assert_eq!(ok.unwrap().len(), 1);
}

#[test]
fn literal_cost_model() {
    let (a, _) = example_function_trees();
    let primes = bcf(&class_terms(&a, "1").unwrap()).unwrap();
    let cfg = MinimizeConfig {
        cost: CostModel::LiteralsThenTerms,
        ..MinimizeConfig::default()
    };
    assert_eq!(minimize_with(&primes, TieBreak::LexLow, &cfg).unwrap().cost(), (4, 12));
    // x1 x2 ∨ x3: both primes are essential
    let p = ClassDnf::new("c", DnfKind::Bcf, 3, vec![term(3, &[1, 2]), term(3, &[3])]);
    assert_eq!(minimize_with(&p, TieBreak::LexHigh, &cfg).unwrap().cost(), (2, 3));
}

#[test]
fn qm_equivalence_depends_on_tie_breaks() {
    let (a, b) = example_function_trees();
    assert!(decide(&a, &b).unwrap().equivalent);
    assert!(qm_equivalence(&a, &b, TieBreak::LexLow, TieBreak::LexLow).unwrap());
    assert!(qm_equivalence(&a, &b, TieBreak::LexHigh, TieBreak::LexHigh).unwrap());
    assert!(!qm_equivalence(&a, &b, TieBreak::LexLow, TieBreak::LexHigh).unwrap());
    let (t1, t2, t3) = running_examples();
    for (x, y) in [(TieBreak::LexLow, TieBreak::LexHigh), (TieBreak::LexLow, TieBreak::LexLow)] {
        assert!(!qm_equivalence(&t1, &t3, x, y).unwrap());
    }
    assert!(qm_equivalence(&t1, &t2, TieBreak::LexLow, TieBreak::LexHigh).unwrap());
}

#[test]
fn bcf_equivalence_examples() {
    let (t1, t2, t3) = running_examples();
    assert!(bcf_equivalence(&t1, &t2).unwrap());
    assert!(!bcf_equivalence(&t1, &t3).unwrap());
    assert!(bcf_equivalence(&t3, &t3).unwrap());
    let g = worst_case(3).unwrap();
    assert!(bcf_equivalence(&g, &g).unwrap());
}

#[test]
fn truth_tables() {
    let (t1, _, _) = running_examples();
    assert_eq!(truth_table(&t1, "1").unwrap(), vec![false, true, true, true]);
    assert_eq!(truth_table(&t1, "0").unwrap(), vec![true, false, false, false]);
}

/// Prime implicants by enumerating all 3^m terms.
fn brute_primes(table: &[bool], m: usize) -> Vec<Term> {
    let mut implicants = Vec::new();
    for code in 0..3usize.pow(m as u32) {
        let mut lits = Vec::new();
        let mut c = code;
        for i in 0..m {
            match c % 3 {
                1 => lits.push(-(i as i32 + 1)),
                2 => lits.push(i as i32 + 1),
                _ => {}
            }
            c /= 3;
        }
        let t = term(m, &lits);
        if (0..1u64 << m).all(|x| !t.covers_bits(x) || table[x as usize]) {
            implicants.push(t);
        }
    }
    let mut primes: Vec<Term> = implicants
        .iter()
        .filter(|t| !implicants.iter().any(|s| s != *t && s.absorbs(t)))
        .cloned()
        .collect();
    primes.sort();
    primes
}

/// Cheapest cover by trying every subset of primes.
fn brute_min_cost(problem: &CoverProblem, model: CostModel) -> (usize, usize) {
    let n = problem.primes.len();
    (0..1u32 << n)
        .filter_map(|mask| {
            let chosen: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            problem.is_cover(&chosen).then(|| {
                let terms = chosen.len();
                let lits = chosen.iter().map(|&p| problem.primes[p].len()).sum();
                match model {
                    CostModel::TermsThenLiterals => (terms, lits),
                    CostModel::LiteralsThenTerms => (lits, terms),
                }
            })
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bcf_matches_brute_primes(seed in any::<u64>(), m in 1usize..7) {
        let t = random_tree(&Schema::boolean(m), 5, seed);
        for c in ["0", "1"] {
            let raw = class_terms(&t, c).unwrap();
            let fifo = bcf(&raw).unwrap();
            let lifo = bcf_with(&raw, &BcfConfig { order: WorklistOrder::Lifo, ..BcfConfig::default() }).unwrap();
            let table = truth_table(&t, c).unwrap();
            prop_assert_eq!(&fifo.terms, &brute_primes(&table, m));
            prop_assert_eq!(&fifo, &lifo);
        }
    }

    #[test]
    fn bcfs_are_canonical(seed in any::<u64>(), m in 2usize..7, kind in 0u8..3) {
        let s = Schema::boolean(m);
        let t = random_tree(&s, 5, seed);
        let u = match kind {
            0 => mutate_leaf(&t),
            1 => restructure(&t, seed ^ 7).unwrap(),
            _ => random_tree(&s, 5, seed ^ 0xfeed),
        };
        prop_assert_eq!(bcf_equivalence(&t, &u).unwrap(), brute_equivalent(&t, &u).unwrap());
    }

    #[test]
    fn minimized_covers_are_optimal(seed in any::<u64>(), m in 2usize..6, tie in 0u64..4, lits_first in any::<bool>()) {
        let t = random_tree(&Schema::boolean(m), 5, seed);
        let model = if lits_first { CostModel::LiteralsThenTerms } else { CostModel::TermsThenLiterals };
        let cfg = MinimizeConfig { cost: model, ..MinimizeConfig::default() };
        let tie = match tie {
            0 => TieBreak::LexLow,
            1 => TieBreak::LexHigh,
            s => TieBreak::Seeded(s),
        };
        for c in ["0", "1"] {
            let primes = bcf(&class_terms(&t, c).unwrap()).unwrap();
            let problem = CoverProblem::new(&primes, 20).unwrap();
            prop_assume!(problem.primes.len() <= 14);
            let min = minimize_with(&primes, tie, &cfg).unwrap();
            prop_assert!(min.terms.iter().all(|x| primes.terms.contains(x)));
            let (terms, lits) = min.cost();
            let cost = if lits_first { (lits, terms) } else { (terms, lits) };
            prop_assert_eq!(cost, brute_min_cost(&problem, model));
            let table = truth_table(&t, c).unwrap();
            for (x, want) in table.iter().enumerate() {
                let point: Vec<bool> = (0..m).map(|i| x >> i & 1 == 1).collect();
                prop_assert_eq!(min.evaluate(&point), *want);
            }
        }
    }
}

use std::collections::BTreeSet;
use std::prelude::rust_2021::*;
use std::vec;

use super::*;
use crate::equiv::decide;
use crate::model::validate;
use crate::oracle::brute_equivalent;
use crate::testutil::mixed_schema;

fn ones(m: u32) -> PartialAssignment {
    PartialAssignment::from_pairs((1..=m).map(|f| (f, 1)))
}

#[test]
fn gadget_counts() {
    for (r, nodes, features) in [(1, 9, 3), (3, 21, 7), (200, 1203, 401)] {
        let t = worst_case(r).unwrap();
        assert_eq!(t.node_count(), nodes);
        assert_eq!(t.schema().len(), features);
        assert!(validate(&t).is_ok());
        assert_eq!(t.class_label(t.classify(&ones(features as u32)).unwrap()), "1");
    }
    assert!(worst_case(0).is_err());
}

#[test]
fn gadget_paths() {
    let t = worst_case(3).unwrap();
    let got: BTreeSet<(String, String)> = t
        .paths()
        .iter()
        .map(|p| (p.assignment(&t).to_string(), t.class_label(p.class).to_string()))
        .collect();
    let mut want = BTreeSet::new();
    let mut prefix: Vec<(u32, i64)> = Vec::new();
    for k in 1..=3u32 {
        for (a, b, c) in [(0, 0, "0"), (0, 1, "1"), (1, 0, "1")] {
            let mut lits = prefix.clone();
            lits.extend([(2 * k - 1, a), (2 * k, b)]);
            want.insert((PartialAssignment::from_pairs(lits).to_string(), c.to_string()));
        }
        prefix.extend([(2 * k - 1, 1), (2 * k, 1)]);
    }
    for (v, c) in [(0, "0"), (1, "1")] {
        let mut lits = prefix.clone();
        lits.push((7, v));
        want.insert((PartialAssignment::from_pairs(lits).to_string(), c.to_string()));
    }
    assert_eq!(got, want);
}

#[test]
fn running_examples_behave() {
    let (t1, t2, t3) = running_examples();
    let p = PartialAssignment::from_pairs([(1, 0), (2, 1)]);
    assert_eq!(t1.class_label(t1.classify(&p).unwrap()), "1");
    assert!(decide(&t1, &t2).unwrap().equivalent);
    assert!(!decide(&t1, &t3).unwrap().equivalent);
    assert!(brute_equivalent(&t1, &t2).unwrap());
    assert!(!brute_equivalent(&t1, &t3).unwrap());
}

fn minterm(bits: u32) -> PartialAssignment {
    PartialAssignment::from_pairs((1..=4).map(|f| (f, ((bits >> (f - 1)) & 1) as i64)))
}

#[test]
fn example_function_pair() {
    let (a, b) = example_function_trees();
    assert_ne!(a.nodes(), b.nodes());
    for t in [&a, &b] {
        assert!(validate(t).is_ok());
        assert_eq!(t.node_count(), 31);
        assert_eq!(t.class_label(t.classify(&minterm(7)).unwrap()), "1");
        assert_eq!(t.class_label(t.classify(&minterm(2)).unwrap()), "0");
        for bits in 0..16 {
            let want = EXAMPLE_FUNCTION_MINTERMS.contains(&bits);
            assert_eq!(t.classify(&minterm(bits)).unwrap() == ClassId(1), want);
        }
    }
    assert!(decide(&a, &b).unwrap().equivalent);
    assert!(brute_equivalent(&a, &b).unwrap());
}

#[test]
fn random_trees_are_deterministic_and_valid() {
    let s = mixed_schema();
    assert_eq!(random_tree(&s, 4, 9), random_tree(&s, 4, 9));
    assert_ne!(random_tree(&s, 4, 9), random_tree(&s, 4, 10));
    for seed in 0..1000 {
        assert!(validate(&random_tree(&s, 4, seed)).is_ok(), "seed {seed}");
    }
    let three = random_tree_with(
        &s,
        &RandomTreeConfig {
            depth: 3,
            classes: 3,
            leaf_prob: 0.0,
        },
        1,
    );
    assert_eq!(three.classes().len(), 3);
    assert!(validate(&three).is_ok());
}

#[test]
fn mutated_twins_differ() {
    let s = mixed_schema();
    for seed in 0..200 {
        let t = random_tree(&s, 4, seed);
        let u = mutate_leaf(&t);
        assert!(validate(&u).is_ok());
        assert!(!brute_equivalent(&t, &u).unwrap(), "seed {seed}");
    }
    let g = worst_case(3).unwrap();
    assert!(!decide(&g, &mutate_leaf(&g)).unwrap().equivalent);
}

#[test]
fn restructured_trees_are_equivalent() {
    let s = mixed_schema();
    for seed in 0..100 {
        let t = random_tree(&s, 4, seed);
        let u = restructure(&t, seed + 1).unwrap();
        assert!(validate(&u).is_ok());
        assert!(brute_equivalent(&t, &u).unwrap(), "seed {seed}");
    }
    let real = Schema::new(vec![crate::model::Feature::new(1, "t", Domain::OrdinalReal { lo: 0.0, hi: 1.0 })]).unwrap();
    assert!(restructure(&random_tree(&real, 2, 0), 0).is_err());
}

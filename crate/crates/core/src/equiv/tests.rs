use std::prelude::rust_2021::*;
use std::vec;

use proptest::prelude::*;

use super::*;
use crate::gen::{mutate_leaf, random_tree, restructure, running_examples, worst_case};
use crate::model::{Domain, Feature, Literal, Node, NodeId, Op, Schema};
use crate::oracle::brute_equivalent;
use crate::testutil::mixed_schema;

fn pa(pairs: &[(u32, i64)]) -> PartialAssignment {
    PartialAssignment::from_pairs(pairs.iter().copied())
}

fn check_witness(t1: &DecisionTree, t2: &DecisionTree, v: &EquivVerdict) {
    let w = v.witness.as_ref().expect("non-equivalent verdicts carry a witness");
    let c1 = t1.classify_point(&w.point).unwrap();
    let c2 = t2.classify_point(&w.point).unwrap();
    assert_ne!(t1.class_label(c1), t2.class_label(c2));
    assert_eq!(t1.class_label(c1), w.class1);
    assert_eq!(t2.class_label(c2), w.class2);
    assert_eq!(w.path1.class, c1);
    assert_eq!(w.path2.class, c2);
}

#[test]
fn running_examples_verdicts() {
    let (t1, t2, t3) = running_examples();
    assert!(decide(&t1, &t2).unwrap().equivalent);
    let v = decide(&t1, &t3).unwrap();
    assert!(!v.equivalent);
    check_witness(&t1, &t3, &v);
    let w = v.witness.unwrap();
    // the minimal conflicting pair is (P1, P1)
    assert_eq!(w.path1.to_string(), "⟨1,2,4⟩");
    assert_eq!(w.path2.to_string(), "⟨1,2,4⟩");
    assert_eq!(w.point.to_string(), "(0,0)");
}

#[test]
fn conflicting_pairs_of_t1_and_t3() {
    let (t1, _, t3) = running_examples();
    let ck = EquivChecker::new(&t1, &t3).unwrap();
    let mut conflicts = Vec::new();
    for i in 0..ck.outer_len() {
        for j in 0..ck.inner_len() {
            let (p, q) = (&ck.outer.paths[i], &ck.inner.paths[j]);
            let joint = p.assignment(&t1).union(&q.assignment(&t3));
            if p.class != q.class && joint.is_consistent(t1.schema()).unwrap() {
                conflicts.push((i, j));
            }
        }
    }
    assert_eq!(conflicts, vec![(0, 0), (1, 1)]);
}

#[test]
fn a_tree_is_equivalent_to_itself() {
    for t in [worst_case(3).unwrap(), running_examples().2, random_tree(&mixed_schema(), 5, 3)] {
        assert!(decide(&t, &t).unwrap().equivalent);
    }
}

#[test]
fn outer_loop_runs_over_the_larger_tree() {
    let (t1, _, _) = running_examples();
    let big = worst_case(1).unwrap();
    let small = {
        let s = big.schema().clone();
        DecisionTree::new(s, big.classes().to_vec(), vec![Node::leaf(1, 1)], NodeId(1)).unwrap()
    };
    let (v, stats) = decide_with_stats(&small, &big).unwrap();
    assert_eq!(stats.outer_paths, 5);
    assert_eq!(stats.inner_paths, 1);
    assert!(!v.equivalent);
    check_witness(&small, &big, &v);
    // witness paths stay attached to their own trees
    assert_eq!(v.witness.as_ref().unwrap().path1.nodes, vec![NodeId(1)]);
    let (_, stats) = decide_with_stats(&t1, &t1).unwrap();
    assert_eq!(stats.pairs_checked, 4);
}

#[test]
fn mismatched_inputs_are_errors() {
    let (t1, _, _) = running_examples();
    let other = worst_case(1).unwrap();
    assert!(matches!(decide(&t1, &other), Err(Error::SchemaMismatch(_))));
    let relabeled = DecisionTree::new(
        t1.schema().clone(),
        vec!["no".into(), "yes".into()],
        t1.nodes().to_vec(),
        t1.root(),
    )
    .unwrap();
    assert!(matches!(decide(&t1, &relabeled), Err(Error::ClassMismatch)));
}

#[test]
fn class_order_does_not_matter() {
    let (t1, _, _) = running_examples();
    let swapped_nodes = t1
        .nodes()
        .iter()
        .map(|n| match n.kind {
            crate::model::NodeKind::Leaf { class } => Node::leaf(n.id.0, 1 - class.0),
            _ => n.clone(),
        })
        .collect();
    let swapped = DecisionTree::new(t1.schema().clone(), vec!["1".into(), "0".into()], swapped_nodes, t1.root()).unwrap();
    assert!(decide(&t1, &swapped).unwrap().equivalent);
    assert!(decide(&swapped, &t1).unwrap().equivalent);
}

#[test]
fn certificates_from_explanations() {
    let (t1, _, t3) = running_examples();
    let s = t1.schema();
    let p = disprove_by_axps_checked(&t1, (&pa(&[(2, 1)]), "1"), &t3, (&pa(&[(1, 0), (2, 1)]), "0"))
        .unwrap()
        .unwrap();
    assert_eq!(p.to_string(), "(0,1)");
    assert_eq!(t1.class_label(t1.classify_point(&p).unwrap()), "1");
    assert_eq!(t3.class_label(t3.classify_point(&p).unwrap()), "0");
    assert_eq!(disprove_by_axps(s, (&pa(&[(1, 0)]), "0"), (&pa(&[(1, 1)]), "1")).unwrap(), None);
    assert!(matches!(
        disprove_by_axps(s, (&pa(&[(1, 0)]), "1"), (&pa(&[(2, 1)]), "1")),
        Err(Error::Precondition(_))
    ));
    // {(x1,0)} is not a WAXp of T3
    assert!(disprove_by_axps_checked(&t1, (&pa(&[(2, 1)]), "1"), &t3, (&pa(&[(1, 0)]), "0")).is_err());
}

#[test]
fn ordinal_witness_points() {
    let s = Schema::new(vec![
        Feature::new(1, "t", Domain::OrdinalReal { lo: 0.0, hi: 1.0 }),
        Feature::new(2, "n", Domain::OrdinalInt { lo: -3, hi: 3 }),
    ])
    .unwrap();
    let classes = || vec!["a".to_string(), "b".to_string()];
    let t1 = DecisionTree::new(
        s.clone(),
        classes(),
        vec![
            Node::internal(1, 1, vec![(Literal::cmp(1, Op::Lt, 0.5), 2), (Literal::cmp(1, Op::Ge, 0.5), 3)]),
            Node::leaf(2, 0),
            Node::leaf(3, 1),
        ],
        NodeId(1),
    )
    .unwrap();
    let t2 = DecisionTree::new(
        s.clone(),
        classes(),
        vec![
            Node::internal(1, 1, vec![(Literal::cmp(1, Op::Le, 0.5), 2), (Literal::cmp(1, Op::Gt, 0.5), 3)]),
            Node::leaf(2, 0),
            Node::internal(3, 2, vec![(Literal::cmp(2, Op::Le, -1), 4), (Literal::cmp(2, Op::Gt, -1), 5)]),
            Node::leaf(4, 1),
            Node::leaf(5, 1),
        ],
        NodeId(1),
    )
    .unwrap();
    // differ only at t = 0.5 exactly
    let v = decide(&t1, &t2).unwrap();
    assert!(!v.equivalent);
    check_witness(&t1, &t2, &v);
    assert_eq!(v.witness.unwrap().point.values()[0], crate::model::Value::Real(0.5));
}

fn boolean_pair(seed: u64, m: usize, kind: u8) -> (DecisionTree, DecisionTree) {
    let s = Schema::boolean(m);
    let t = random_tree(&s, m.min(6), seed);
    let u = match kind {
        0 => mutate_leaf(&t),
        1 => restructure(&t, seed.wrapping_add(1)).unwrap(),
        _ => random_tree(&s, m.min(6), seed.wrapping_mul(31).wrapping_add(7)),
    };
    (t, u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_the_oracle(seed in any::<u64>(), m in 2usize..8, kind in 0u8..3) {
        let (t, u) = boolean_pair(seed, m, kind);
        let v = decide(&t, &u).unwrap();
        prop_assert_eq!(v.equivalent, brute_equivalent(&t, &u).unwrap());
        prop_assert_eq!(v.equivalent, decide(&u, &t).unwrap().equivalent);
        if !v.equivalent {
            check_witness(&t, &u, &v);
        }
    }

    #[test]
    fn mixed_domains_agree_with_the_oracle(seed in any::<u64>(), kind in 0u8..3) {
        let s = mixed_schema();
        let t = random_tree(&s, 4, seed);
        let u = match kind {
            0 => mutate_leaf(&t),
            1 => restructure(&t, seed ^ 1).unwrap(),
            _ => random_tree(&s, 4, seed ^ 0xabcdef),
        };
        let v = decide(&t, &u).unwrap();
        prop_assert_eq!(v.equivalent, brute_equivalent(&t, &u).unwrap());
        if !v.equivalent {
            check_witness(&t, &u, &v);
        }
    }
}

use dtequiv_core::gen::{example_function_trees, random_tree, running_examples, worst_case};
use dtequiv_core::qm::{bcf, class_terms};
use dtequiv_core::{Domain, Feature, Literal, Op, PartialAssignment, Schema, Value};

use super::*;

fn mixed() -> Schema {
    Schema::new(vec![
        Feature::new(1, "b", Domain::Boolean),
        Feature::new(2, "colour", Domain::Categorical(vec!["red".into(), "green".into(), "blue".into()])),
        Feature::new(3, "n", Domain::OrdinalInt { lo: 0, hi: 4 }),
        Feature::new(4, "t", Domain::OrdinalReal { lo: 0.0, hi: 10.0 }),
    ])
    .unwrap()
}

#[test]
fn trees_round_trip() {
    let (t1, t2, t3) = running_examples();
    let (e1, e2) = example_function_trees();
    for t in [t1, t2, t3, e1, e2, worst_case(3).unwrap()] {
        assert_eq!(tree_from_json(&tree_to_json(&t)).unwrap(), t);
    }
    let s = Schema::new(mixed().features()[..3].to_vec()).unwrap();
    for seed in 0..20 {
        let t = random_tree(&s, 4, seed);
        assert_eq!(tree_from_json(&tree_to_json(&t)).unwrap(), t);
    }
}

#[test]
fn real_thresholds_round_trip() {
    let s = mixed();
    let nodes = vec![
        dtequiv_core::Node::internal(
            1,
            4,
            vec![(Literal::cmp(4, Op::Lt, 2.5), 2), (Literal::cmp(4, Op::Ge, 2.5), 3)],
        ),
        dtequiv_core::Node::internal(2, 4, vec![(Literal::cmp(4, Op::Le, 1), 4), (Literal::cmp(4, Op::Gt, 1), 5)]),
        dtequiv_core::Node::leaf(3, 0),
        dtequiv_core::Node::leaf(4, 1),
        dtequiv_core::Node::leaf(5, 0),
    ];
    let t = dtequiv_core::DecisionTree::new(s, vec!["a".into(), "b".into()], nodes, dtequiv_core::NodeId(1)).unwrap();
    let json = tree_to_json(&t);
    assert!(json.contains("2.5"));
    assert_eq!(tree_from_json(&json).unwrap(), t);
}

const T1_DOC: &str = r#"{
  "format_version": 1,
  "features": [
    {"id": 1, "name": "x1", "domain": {"kind": "boolean"}},
    {"id": 2, "name": "x2", "domain": {"kind": "boolean"}}
  ],
  "classes": ["0", "1"],
  "nodes": [
    {"id": 1, "kind": "internal", "feature": 1, "edges": [
      {"literal": {"feature": 1, "op": "eq", "value": 0}, "child": 2},
      {"literal": {"feature": 1, "op": "eq", "value": true}, "child": 3}]},
    {"id": 2, "kind": "internal", "feature": 2, "edges": [
      {"literal": {"feature": 2, "op": "in", "values": [0]}, "child": 4},
      {"literal": {"feature": 2, "op": "in", "values": [1]}, "child": 5}]},
    {"id": 3, "kind": "leaf", "class": "1"},
    {"id": 4, "kind": "leaf", "class": "0"},
    {"id": 5, "kind": "leaf", "class": "1"}
  ],
  "root": 1
}"#;

#[test]
fn hand_written_document_normalizes_eq() {
    let t = tree_from_json(T1_DOC).unwrap();
    assert_eq!(t, running_examples().0);
}

#[test]
fn unknown_op_names_the_token() {
    let doc = T1_DOC.replacen("\"op\": \"eq\"", "\"op\": \"neq\"", 1);
    let err = tree_from_json(&doc).unwrap_err();
    let msg = err.to_string();
    assert!(matches!(err, FormatError::Parse { .. }));
    assert!(msg.contains("neq"), "{msg}");
    assert!(msg.contains("nodes[0]"), "{msg}");
}

#[test]
fn undeclared_leaf_class_is_rejected() {
    let doc = T1_DOC.replace("\"class\": \"1\"}", "\"class\": \"7\"}");
    let err = tree_from_json(&doc).unwrap_err();
    assert!(err.to_string().contains("`7`"), "{err}");
}

#[test]
fn version_and_shape_errors() {
    let doc = T1_DOC.replace("\"format_version\": 1", "\"format_version\": 2");
    assert!(matches!(tree_from_json(&doc), Err(FormatError::Version(2))));
    let doc = T1_DOC.replace("\"values\": [0]", "\"value\": 0");
    assert!(tree_from_json(&doc).is_err());
    let doc = T1_DOC.replace("\"root\": 1", "\"root\": 9");
    assert!(matches!(tree_from_json(&doc), Err(FormatError::Model(_))));
    assert!(matches!(tree_from_json("{"), Err(FormatError::Parse { .. })));
}

#[test]
fn assignments_in_every_spelling() {
    let s = Schema::boolean(2);
    let want = PartialAssignment::from_pairs([(1, 0), (2, 1)]);
    for text in [
        "{x1:0,x2:1}",
        "{ x2 : 1 , x1 : 0 }",
        r#"{"x1": 0, "x2": true}"#,
        r#"[{"feature":1,"op":"in","values":[0]},{"feature":2,"op":"eq","value":1}]"#,
        r#"{"format_version":1,"literals":[{"feature":1,"op":"in","values":[0]},{"feature":2,"op":"in","values":[1]}]}"#,
    ] {
        assert_eq!(parse_assignment_arg(&s, text).unwrap(), want, "{text}");
    }
    assert_eq!(assignment_from_json(&s, &assignment_to_json(&want)).unwrap(), want);
    assert!(parse_assignment_arg(&s, "{x3:0}").is_err());
    assert!(parse_assignment_arg(&s, "{x1:2}").is_err());
    assert!(parse_assignment_arg(&s, "{x1}").is_err());
}

#[test]
fn mixed_shorthand() {
    let s = mixed();
    let a = parse_inline(&s, "{colour:[red,blue], n:2, t:2.5, b:true}").unwrap();
    assert_eq!(a.len(), 4);
    assert_eq!(a.literals()[1], Literal::one_of(2, [Value::from("red"), Value::from("blue")]));
    assert_eq!(a.literals()[2], Literal::eq(3, 2));
    assert_eq!(a.literals()[3], Literal::eq(4, 2.5));
    assert!(parse_inline(&s, "{colour:purple}").is_err());
    assert!(parse_inline(&s, "{n:9}").is_err());
}

#[test]
fn points() {
    let s = mixed();
    let p = parse_point_arg(&s, "(1,green,3,0.5)").unwrap();
    assert_eq!(p.to_string(), "(1,green,3,0.5)");
    assert!(parse_point_arg(&s, "(1,green,3)").is_err());
    let b = Schema::boolean(2);
    assert_eq!(parse_point_arg(&b, "{x1:0,x2:1}").unwrap().to_string(), "(0,1)");
    assert!(parse_point_arg(&b, "{x1:0}").is_err());
}

#[test]
fn dnf_documents_round_trip() {
    let (t1, _) = example_function_trees();
    let primes = bcf(&class_terms(&t1, "1").unwrap()).unwrap();
    let back = dnf_from_json(&dnf_to_json(&primes)).unwrap();
    assert_eq!(back, primes);
    let bad = dnf_to_json(&primes).replace("\"bcf\"", "\"cnf\"");
    assert!(dnf_from_json(&bad).is_err());
}

#[test]
fn witness_documents_read_as_assignments() {
    let (t1, _, t3) = running_examples();
    let v = dtequiv_core::equiv::decide(&t1, &t3).unwrap();
    let doc = verdict_to_doc(&v, None);
    let w = serde_json::to_string(doc.witness.as_ref().unwrap()).unwrap();
    let (point, parsed) = witness_from_json(t1.schema(), &w).unwrap();
    assert_eq!(point, v.witness.as_ref().unwrap().point);
    assert_ne!(parsed.class1, parsed.class2);
    assert_eq!(
        assignment_from_json(t1.schema(), &w).unwrap(),
        PartialAssignment::from_point(&point)
    );
}

use dtequiv::format::{assignment_from_json, assignment_to_json, tree_from_json, tree_to_json};
use dtequiv_core::gen::{random_tree, restructure};
use dtequiv_core::oracle::{EnumerableSpace, DEFAULT_POINT_CAP};
use dtequiv_core::{Domain, Feature, PartialAssignment, Schema};
use proptest::prelude::*;

fn schema() -> Schema {
    Schema::new(vec![
        Feature::new(1, "b", Domain::Boolean),
        Feature::new(2, "colour", Domain::Categorical(vec!["red".into(), "green".into(), "blue".into()])),
        Feature::new(3, "n", Domain::OrdinalInt { lo: -2, hi: 3 }),
        Feature::new(4, "c", Domain::Boolean),
    ])
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn trees_survive_serialization(seed in any::<u64>(), depth in 1usize..6) {
        let s = schema();
        let t = random_tree(&s, depth, seed);
        prop_assert_eq!(&tree_from_json(&tree_to_json(&t)).unwrap(), &t);
        let u = restructure(&t, seed ^ 0x55).unwrap();
        prop_assert_eq!(&tree_from_json(&tree_to_json(&u)).unwrap(), &u);
    }

    #[test]
    fn assignments_survive_serialization(k in 0usize..72, mask in 0u32..16) {
        let s = schema();
        let p = EnumerableSpace::new(&s, DEFAULT_POINT_CAP).unwrap().point(k);
        let a = PartialAssignment::from_point(&p).retain_features(|f| mask >> f.index() & 1 == 1);
        prop_assert_eq!(assignment_from_json(&s, &assignment_to_json(&a)).unwrap(), a);
    }
}

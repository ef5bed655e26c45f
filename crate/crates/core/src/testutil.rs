use std::prelude::rust_2021::*;
use std::vec;

use proptest::prelude::*;

use crate::model::{Domain, Feature, Literal, Op, Operand, PartialAssignment, Schema, Value};

/// Boolean, categorical and integer features, 2·3·5·2 = 60 points.
pub fn mixed_schema() -> Schema {
    Schema::new(vec![
        Feature::new(1, "b", Domain::Boolean),
        Feature::new(2, "colour", Domain::Categorical(vec!["red".into(), "green".into(), "blue".into()])),
        Feature::new(3, "n", Domain::OrdinalInt { lo: 0, hi: 4 }),
        Feature::new(4, "c", Domain::Boolean),
    ])
    .unwrap()
}

/// A random valid literal over `schema` (enumerable features only).
pub fn literal_for(schema: &Schema) -> impl Strategy<Value = Literal> {
    let features: Vec<Feature> = schema.features().to_vec();
    (0..features.len(), any::<u64>(), 0usize..6).prop_map(move |(i, bits, op)| {
        let f = &features[i];
        let id = f.id.0;
        let n = f.domain.size().unwrap() as usize;
        match &f.domain {
            Domain::Boolean | Domain::Categorical(_) => {
                let mut values: Vec<Value> = (0..n)
                    .filter(|k| bits >> k & 1 == 1)
                    .map(|k| f.domain.value_at(k).unwrap())
                    .collect();
                if values.is_empty() {
                    values.push(f.domain.value_at(bits as usize % n).unwrap());
                }
                if op == 0 {
                    Literal::eq(id, values[0].clone())
                } else {
                    Literal::one_of(id, values)
                }
            }
            _ => {
                let v = f.domain.value_at((bits % n as u64) as usize).unwrap();
                let op = [Op::In, Op::Eq, Op::Lt, Op::Le, Op::Gt, Op::Ge][op];
                if op == Op::In {
                    Literal::new(f.id, Op::In, Operand::Set(vec![v]))
                } else {
                    Literal::cmp(id, op, v)
                }
            }
        }
    })
}

pub fn assignment_for(schema: &Schema, max: usize) -> impl Strategy<Value = PartialAssignment> {
    proptest::collection::vec(literal_for(schema), 0..=max).prop_map(PartialAssignment::new)
}

/// Value-level assignment: a subset of features pinned to single values.
pub fn value_assignment_for(schema: &Schema) -> impl Strategy<Value = PartialAssignment> {
    let features: Vec<Feature> = schema.features().to_vec();
    proptest::collection::vec((any::<bool>(), any::<u64>()), features.len()).prop_map(move |picks| {
        PartialAssignment::new(
            features
                .iter()
                .zip(picks)
                .filter(|(_, (keep, _))| *keep)
                .map(|(f, (_, k))| {
                    let n = f.domain.size().unwrap() as u64;
                    Literal::eq(f.id.0, f.domain.value_at((k % n) as usize).unwrap())
                })
                .collect(),
        )
    })
}

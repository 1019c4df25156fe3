#![allow(dead_code)]

use csmine_core::{Attribute, Binding, DataSet, Table, Value};
use proptest::collection::vec;
use proptest::prelude::*;

/// Raw cell draws turned into values with a group-dependent signal, so that
/// mining finds something on most generated sets.
fn cell(raw: u32, group: u32, numeric: bool) -> Value {
    if raw.is_multiple_of(97) {
        return Value::Missing;
    }
    if numeric {
        let shift = if raw.is_multiple_of(3) { group as f64 } else { 0.0 };
        Value::Numeric((raw % 50) as f64 / 10.0 + shift)
    } else if raw.is_multiple_of(2) {
        Value::Nominal(group % 4)
    } else {
        Value::Nominal(raw % 4)
    }
}

pub fn build_table(numeric: &[bool], groups: u32, raw: &[Vec<u32>], labels: &[u32]) -> Table {
    let mut attributes: Vec<Attribute> = numeric
        .iter()
        .enumerate()
        .map(|(i, &num)| {
            if num {
                Attribute::numeric(format!("x{i}"))
            } else {
                Attribute::nominal(format!("c{i}"), ["a", "b", "c", "d"])
            }
        })
        .collect();
    attributes.push(Attribute::nominal("group", (0..groups).map(|g| format!("g{g}"))));
    let rows = raw
        .iter()
        .zip(labels)
        .map(|(r, &g)| {
            let mut row: Vec<Value> = r.iter().zip(numeric).map(|(&v, &num)| cell(v, g, num)).collect();
            row.push(Value::Nominal(g));
            row
        })
        .collect();
    Table {
        relation: "random".into(),
        attributes,
        rows,
    }
}

/// Classification data sets with up to `max_examples` rows, up to
/// `max_attributes` conditional attributes and 2 to 4 groups, every group
/// non-empty.
pub fn classification(max_examples: usize, max_attributes: usize) -> impl Strategy<Value = DataSet> {
    (2u32..=4, 1usize..=max_attributes, 8usize..=max_examples).prop_flat_map(|(groups, attrs, n)| {
        (
            vec(any::<bool>(), attrs),
            vec(vec(0u32..10_000, attrs), n),
            vec(0..groups, n),
        )
            .prop_map(move |(numeric, raw, mut labels)| {
                for g in 0..groups {
                    labels[g as usize] = g;
                }
                build_table(&numeric, groups, &raw, &labels)
                    .bind(&Binding::classification("group"))
                    .expect("generated table binds")
            })
    })
}

use std::path::Path;

use csmine::arff;
use csmine_core::{Attribute, Binding, Table, Value};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-z][a-z0-9_]{0,8}",
        "[a-z]{1,4} [a-z]{1,4}",
        "[a-z]{1,3}[,%'{}]?[a-z]{1,3}",
    ]
}

fn table() -> impl Strategy<Value = Table> {
    let column = prop_oneof![
        Just(None),
        proptest::collection::btree_set(name(), 1..5).prop_map(|s| Some(s.into_iter().collect::<Vec<_>>())),
    ];
    (proptest::collection::btree_set(name(), 1..6), proptest::collection::vec(column, 6), 0usize..30)
        .prop_flat_map(|(names, kinds, rows)| {
            let attributes: Vec<Attribute> = names
                .into_iter()
                .zip(kinds)
                .map(|(n, k)| match k {
                    None => Attribute::numeric(n),
                    Some(labels) => Attribute::nominal(n, labels),
                })
                .collect();
            let cells: Vec<BoxedStrategy<Value>> = attributes
                .iter()
                .map(|a| {
                    let present = if a.is_numeric() {
                        prop_oneof![(-1e6f64..1e6).prop_map(Value::Numeric), (-50i32..50).prop_map(|i| Value::Numeric(i as f64))].boxed()
                    } else {
                        (0..a.labels().len() as u32).prop_map(Value::Nominal).boxed()
                    };
                    prop_oneof![1 => Just(Value::Missing), 6 => present].boxed()
                })
                .collect();
            (Just(attributes), proptest::collection::vec(cells, rows))
        })
        .prop_map(|(attributes, rows)| Table {
            relation: "random data".into(),
            attributes,
            rows,
        })
}

proptest! {
    #[test]
    fn write_then_parse_is_identity(t in table()) {
        let text = arff::write(&t);
        let back = arff::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(arff::write(&back), text);
    }
}

#[test]
fn statlog_file_shape() {
    let t = arff::read(Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/heart-statlog.arff"))).unwrap();
    assert_eq!(t.rows.len(), 270);
    assert_eq!(t.attributes.len(), 14);
    let ds = t.bind(&Binding::classification("class")).unwrap();
    assert_eq!(ds.groups(), ["absent", "present"]);
    assert_eq!(ds.group_sizes(), vec![150, 120]);
    assert_eq!(ds.attributes().len(), 13);
}

#[test]
fn read_errors_name_the_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.arff");
    std::fs::write(&path, "@relation r\n@attribute x numeric\n@data\n1\nfoo\n").unwrap();
    let msg = arff::read(&path).unwrap_err().to_string();
    assert!(msg.contains("bad.arff") && msg.contains("line 5"), "{msg}");
    let missing = arff::read(&dir.path().join("none.arff")).unwrap_err().to_string();
    assert!(missing.contains("none.arff"), "{missing}");
}

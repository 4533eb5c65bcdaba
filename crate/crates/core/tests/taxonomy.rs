mod common;

use std::collections::BTreeMap;

use javagraph::taxonomy::{canonical_taxonomy, categorize, Category, NodeType, NODE_TYPE_COUNT};

fn table() -> (Vec<(String, String)>, BTreeMap<String, String>) {
    let mut rdr = csv::Reader::from_path(common::data_dir().join("node_categories.csv")).unwrap();
    let rows: Vec<(String, String)> = rdr.deserialize().map(|r| r.unwrap()).collect();
    let mut first = BTreeMap::new();
    for (t, c) in &rows {
        first.entry(t.clone()).or_insert_with(|| c.clone());
    }
    (rows, first)
}

#[test]
fn categorize_agrees_with_table() {
    let (rows, first) = table();
    assert_eq!(rows.len(), 73);
    assert_eq!(first.len(), NODE_TYPE_COUNT);
    for t in NodeType::ALL {
        let want = first.get(t.name()).unwrap_or_else(|| panic!("{} missing from table", t.name()));
        assert_eq!(categorize(t).name(), want, "{}", t.name());
    }
}

#[test]
fn only_duplicate_is_compilation_unit() {
    let (rows, first) = table();
    let dupes: Vec<&(String, String)> = rows.iter().filter(|(t, c)| &first[t] != c).collect();
    assert_eq!(dupes, [&("CompilationUnit".to_string(), "declarations".to_string())]);
    let cu = NodeType::ALL.into_iter().find(|t| t.name() == "CompilationUnit").unwrap();
    assert_eq!(categorize(cu), Category::CodeStructure);
}

#[test]
fn anchors() {
    let by_name = |s: &str| NodeType::ALL.into_iter().find(|t| t.name() == s).unwrap();
    assert_eq!(categorize(by_name("IfStatement")), Category::ControlFlow);
    assert_eq!(categorize(by_name("Literal")), Category::LiteralsAndConstants);
    assert_eq!(categorize(by_name("CatchClause")), Category::Exceptions);
}

#[test]
fn canonical_table_order_and_ordinals() {
    let (_, first) = table();
    let canon = canonical_taxonomy();
    assert_eq!(canon.len(), NODE_TYPE_COUNT);
    for (i, (t, c)) in canon.iter().enumerate() {
        assert_eq!(t.ordinal(), i);
        assert_eq!(NodeType::from_ordinal(i), Some(*t));
        assert_eq!(first[t.name()], c.name());
    }
    assert_eq!(NodeType::from_ordinal(NODE_TYPE_COUNT), None);
    for (i, c) in Category::ALL.iter().enumerate() {
        assert_eq!(c.ordinal(), i);
    }
}

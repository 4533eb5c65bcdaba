mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use javagraph::graph::{build_relsc_h, EdgeType};
use serde::Deserialize;

#[derive(Deserialize)]
struct Golden {
    nodes: Vec<String>,
    edges: BTreeMap<String, Vec<[usize; 2]>>,
}

fn golden() -> Golden {
    let text = std::fs::read_to_string(common::data_dir().join("listing1_golden.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn listing1_matches_golden_graph() {
    let start = Instant::now();
    let unit = common::parse(&common::listing1());
    let g = build_relsc_h(&unit);
    let elapsed = start.elapsed();

    let want = golden();
    let types: Vec<&str> = g.nodes.iter().map(|n| n.node_type.name()).collect();
    assert_eq!(types, want.nodes);

    assert_eq!(want.edges.len(), EdgeType::ALL.len());
    for t in EdgeType::ALL {
        let mut got: Vec<[usize; 2]> =
            g.edges.iter().filter(|e| e.edge_type == t).map(|e| [e.src, e.dst]).collect();
        got.sort();
        let mut exp = want.edges[t.name()].clone();
        exp.sort();
        assert_eq!(got, exp, "{t} edges");
    }
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
}

#[test]
fn listing1_headline_counts() {
    let unit = common::parse(&common::listing1());
    let g = build_relsc_h(&unit);
    let leaves = unit.nodes().iter().filter(|n| n.children.is_empty()).count();
    assert_eq!(g.count_edges(EdgeType::Ast), g.node_count() - 1);
    assert_eq!(g.count_edges(EdgeType::IfFlow), 1);
    assert_eq!(g.count_edges(EdgeType::ElseFlow), 1);
    for t in [EdgeType::WhileExec, EdgeType::WhileNext, EdgeType::ForExec, EdgeType::ForNext] {
        assert_eq!(g.count_edges(t), 0);
    }
    assert_eq!(g.count_edges(EdgeType::NextToken), leaves - 1);

    // Both branch edges leave the `n <= 1` predicate.
    let pred = g.edges.iter().find(|e| e.edge_type == EdgeType::IfFlow).unwrap().src;
    let node = unit.node(pred);
    assert_eq!(node.node_type.name(), "BinaryOperation");
    assert_eq!(node.label.as_deref(), Some("<="));
    let else_src = g.edges.iter().find(|e| e.edge_type == EdgeType::ElseFlow).unwrap().src;
    assert_eq!(else_src, pred);
}

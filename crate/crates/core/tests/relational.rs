mod common;

use javagraph::graph::{build_relsc_h, ProgramGraph, Variant};
use javagraph::relational::{build_relsc_m, distinct_relations, relation_histogram, RelationId, RELATION_COUNT};
use javagraph::taxonomy::{categorize, Category, NodeType, CATEGORY_COUNT};
use javagraph::Error;

fn corpus() -> Vec<ProgramGraph> {
    let mut graphs: Vec<ProgramGraph> = common::snippet_units().iter().map(|(_, u)| build_relsc_h(u)).collect();
    graphs.push(build_relsc_h(&common::parse(&common::listing1())));
    graphs
}

#[test]
fn lift_preserves_nodes_and_features() {
    for h in corpus() {
        for inverse in [true, false] {
            let m = build_relsc_m(&h, inverse).unwrap();
            assert_eq!(m.variant, Variant::RelscM);
            assert_eq!(m.nodes, h.nodes, "{}", h.id);
            assert_eq!(m.target, h.target);
            assert_eq!(m.edges, h.edges);
        }
    }
}

#[test]
fn edge_counts_follow_inverse_flag() {
    for h in corpus() {
        assert_eq!(build_relsc_m(&h, true).unwrap().edge_count(), 2 * h.edge_count());
        assert_eq!(build_relsc_m(&h, false).unwrap().edge_count(), h.edge_count());
    }
}

#[test]
fn relations_are_category_pairs() {
    for h in corpus() {
        let m = build_relsc_m(&h, true).unwrap();
        assert!(distinct_relations(&m) <= RELATION_COUNT);
        for e in m.relations.as_ref().unwrap() {
            let want = RelationId::new(categorize(m.nodes[e.src].node_type), categorize(m.nodes[e.dst].node_type));
            assert_eq!(e.relation, want);
            assert!(e.relation.id() < RELATION_COUNT);
            assert_eq!(RelationId::from_id(e.relation.id()), Some(e.relation));
        }
    }
}

#[test]
fn histogram_marginals_match_category_degrees() {
    for h in corpus() {
        let m = build_relsc_m(&h, true).unwrap();
        let hist = relation_histogram(&m).unwrap();
        // Out and in degree per category, counted straight from the edges.
        let mut out_deg = [0u64; CATEGORY_COUNT];
        let mut in_deg = [0u64; CATEGORY_COUNT];
        for e in m.relations.as_ref().unwrap() {
            out_deg[categorize(m.nodes[e.src].node_type).ordinal()] += 1;
            in_deg[categorize(m.nodes[e.dst].node_type).ordinal()] += 1;
        }
        for i in 0..CATEGORY_COUNT {
            assert_eq!(hist[i].iter().sum::<u64>(), out_deg[i]);
            assert_eq!(hist.iter().map(|r| r[i]).sum::<u64>(), in_deg[i]);
        }
        assert_eq!(hist.iter().flatten().sum::<u64>() as usize, m.edge_count());
        // With inverses every cell is mirrored.
        for (i, row) in hist.iter().enumerate() {
            for (j, &cell) in row.iter().enumerate() {
                assert_eq!(cell, hist[j][i]);
            }
        }
    }
}

#[test]
fn method_to_if_is_declarations_to_control_flow() {
    let h = build_relsc_h(&common::parse("class A { void m(boolean c) { if (c) f(); } }"));
    let m = build_relsc_m(&h, false).unwrap();
    let method = h.nodes.iter().find(|n| n.node_type == NodeType::MethodDeclaration).unwrap().id;
    let body = h.nodes.iter().find(|n| n.node_type == NodeType::BlockStatement).unwrap().id;
    let e = m.relations.as_ref().unwrap().iter().find(|e| e.src == method && e.dst == body).unwrap();
    assert_eq!(e.relation.src_cat, Category::Declarations);
    let iff = h.nodes.iter().find(|n| n.node_type == NodeType::IfStatement).unwrap().id;
    let e = m.relations.as_ref().unwrap().iter().find(|e| e.dst == iff && !e.inverse).unwrap();
    assert_eq!(e.relation.dst_cat, Category::ControlFlow);
}

#[test]
fn wrong_variants_are_rejected() {
    let h = build_relsc_h(&common::parse("class A {}"));
    assert!(matches!(relation_histogram(&h), Err(Error::WrongVariant { .. })));
    let m = build_relsc_m(&h, true).unwrap();
    assert!(matches!(build_relsc_m(&m, true), Err(Error::WrongVariant { .. })));
    let ast = javagraph::graph::build_ast_only(&common::parse("class A {}"));
    assert!(matches!(build_relsc_m(&ast, true), Err(Error::WrongVariant { .. })));
}

#[test]
fn edgeless_graph_has_zero_histogram() {
    let mut h = build_relsc_h(&common::parse("class A {}"));
    h.nodes.truncate(1);
    h.edges.clear();
    let m = build_relsc_m(&h, true).unwrap();
    assert_eq!(relation_histogram(&m).unwrap(), [[0; CATEGORY_COUNT]; CATEGORY_COUNT]);
    assert_eq!(distinct_relations(&m), 0);
}

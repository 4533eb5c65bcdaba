mod common;

use javagraph::frontend::SourceUnit;
use javagraph::graph::{
    build_ast_only, build_relsc_h, build_relsc_h_with, compute_features, Edge, EdgeType, FeatureVector, GraphNode,
    Pass, ProgramGraph, Variant, EDGE_TYPE_COUNT, FEATURE_LEN,
};
use javagraph::taxonomy::{NodeType, NODE_TYPE_COUNT};
use proptest::prelude::*;

fn check_conservation(name: &str, unit: &SourceUnit, g: &ProgramGraph) {
    let want = common::conservation(unit);
    assert_eq!(g.count_edges(EdgeType::Ast), want.ast, "{name}: ast");
    assert_eq!(g.count_edges(EdgeType::NextToken), want.next_token, "{name}: next_token");
    assert_eq!(g.count_edges(EdgeType::NextSibling), want.next_sibling, "{name}: next_sibling");
}

fn check_features(name: &str, g: &ProgramGraph) {
    let mut sums = [0u64; EDGE_TYPE_COUNT];
    for n in &g.nodes {
        assert_eq!(n.feature.len(), FEATURE_LEN, "{name}");
        assert_eq!(n.feature.type_part().iter().sum::<u32>(), 1, "{name}");
        assert_eq!(n.feature.type_part()[n.node_type.ordinal()], 1, "{name}");
        for (s, &c) in sums.iter_mut().zip(n.feature.edge_part()) {
            *s += u64::from(c);
        }
    }
    let counts: Vec<u64> = g.edge_type_counts().iter().map(|&c| c as u64).collect();
    assert_eq!(sums.to_vec(), counts, "{name}");
}

#[test]
fn corpus_has_thirty_snippets() {
    assert_eq!(common::SNIPPETS.len(), 30);
}

#[test]
fn flow_edges_are_local() {
    for (name, unit) in common::snippet_units() {
        let g = build_relsc_h(&unit);
        common::flow_edges_local(&unit, &g).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn pass_order_does_not_matter() {
    let orders = common::permutations(&Pass::ALL);
    assert_eq!(orders.len(), 120);
    let distinct: std::collections::HashSet<&Vec<Pass>> = orders.iter().collect();
    assert_eq!(distinct.len(), 120);
    for (name, unit) in common::snippet_units() {
        let reference = build_relsc_h(&unit);
        let want = common::edge_multiset(&reference);
        for order in &orders {
            let g = build_relsc_h_with(&unit, order);
            assert_eq!(common::edge_multiset(&g), want, "{name}: {order:?}");
            assert_eq!(g, reference, "{name}: {order:?}");
        }
    }
}

#[test]
fn conservation_identities() {
    for (name, unit) in common::snippet_units() {
        check_conservation(name, &unit, &build_relsc_h(&unit));
        let ast = build_ast_only(&unit);
        assert_eq!(ast.edges.len(), unit.node_count - 1, "{name}");
    }
}

#[test]
fn feature_contract_on_corpus() {
    for (name, unit) in common::snippet_units() {
        check_features(name, &build_relsc_h(&unit));
        check_features(name, &build_ast_only(&unit));
    }
}

#[test]
fn building_is_deterministic() {
    for (name, unit) in common::snippet_units() {
        assert_eq!(build_relsc_h(&unit), build_relsc_h(&unit.clone()), "{name}");
    }
}

fn find(unit: &SourceUnit, t: NodeType, label: Option<&str>) -> usize {
    unit.nodes()
        .iter()
        .find(|n| n.node_type == t && (label.is_none() || n.label.as_deref() == label))
        .unwrap_or_else(|| panic!("no {} {label:?}", t.name()))
        .id
}

fn edges_of(g: &ProgramGraph, t: EdgeType) -> Vec<(usize, usize)> {
    g.edges.iter().filter(|e| e.edge_type == t).map(|e| (e.src, e.dst)).collect()
}

#[test]
fn while_loop_edges() {
    let unit = common::parse("class A { void m(boolean c) { while (c) { a(); b(); } } }");
    let g = build_relsc_h(&unit);
    let w = find(&unit, NodeType::WhileStatement, None);
    let cond = unit.node(w).children[0];
    let body = unit.node(w).children[1];
    let a = unit.node(body).children[0];
    let b = unit.node(body).children[1];
    assert_eq!(edges_of(&g, EdgeType::WhileExec), [(cond, body)]);
    assert_eq!(edges_of(&g, EdgeType::WhileNext), [(b, cond)]);
    assert!(edges_of(&g, EdgeType::NextStmt).contains(&(a, b)));
    assert_eq!(unit.node(cond).label.as_deref(), Some("c"));
}

#[test]
fn if_without_else_has_no_else_flow() {
    let unit = common::parse("class A { void m(boolean c) { if (c) s(); } }");
    let g = build_relsc_h(&unit);
    assert_eq!(g.count_edges(EdgeType::IfFlow), 1);
    assert_eq!(g.count_edges(EdgeType::ElseFlow), 0);
}

#[test]
fn next_use_chain() {
    let unit = common::parse("class A { void m() { int x = 0; x = x + 1; } }");
    let g = build_relsc_h(&unit);
    // Independent oracle: every node naming `x`, in text order.
    let mut xs: Vec<_> = unit.nodes().iter().filter(|n| n.var_name.as_deref() == Some("x")).collect();
    xs.sort_by_key(|n| n.source_order);
    assert_eq!(xs.len(), 3);
    let want: Vec<(usize, usize)> = xs.windows(2).map(|w| (w[0].id, w[1].id)).collect();
    assert_eq!(edges_of(&g, EdgeType::NextUse), want);
}

#[test]
fn next_use_is_per_name_and_single_use_is_silent() {
    let unit = common::parse("class A { void m() { int x = 0; int y = 1; f(x, y); } }");
    let g = build_relsc_h(&unit);
    for (s, d) in edges_of(&g, EdgeType::NextUse) {
        assert_eq!(unit.node(s).var_name, unit.node(d).var_name);
    }
    assert_eq!(g.count_edges(EdgeType::NextUse), 2);
    let once = common::parse("class A { void m() { int x = 0; } }");
    assert_eq!(build_relsc_h(&once).count_edges(EdgeType::NextUse), 0);
}

#[test]
fn three_statements_two_siblings() {
    let unit = common::parse("class A { void m() { a(); b(); c(); } }");
    let g = build_relsc_h(&unit);
    let body = unit.nodes().iter().rev().find(|n| n.node_type == NodeType::BlockStatement).unwrap();
    let stmts = &body.children;
    assert_eq!(stmts.len(), 3);
    let among = |t| edges_of(&g, t).into_iter().filter(|(s, d)| stmts.contains(s) && stmts.contains(d)).count();
    assert_eq!(among(EdgeType::NextSibling), 2);
    assert_eq!(among(EdgeType::NextStmt), 2);
}

#[test]
fn first_leaf_precedes_literal_in_listing1() {
    let unit = common::parse(&common::listing1());
    let g = build_relsc_h(&unit);
    let leaves = unit.leaves();
    let pos = |id: usize| leaves.iter().position(|l| l.id == id).unwrap();
    let n_ref = find(&unit, NodeType::MemberReference, Some("n"));
    let one = find(&unit, NodeType::Literal, Some("1"));
    assert!(pos(n_ref) < pos(one));
    assert!(edges_of(&g, EdgeType::NextToken).contains(&(n_ref, one)));
}

#[test]
fn features_count_outgoing_edges_by_type() {
    // IfStatement with two ast children plus one if and one else edge.
    let node = |id, t| GraphNode {
        id,
        node_type: t,
        feature: FeatureVector::new(t, [0; EDGE_TYPE_COUNT]),
    };
    let mut g = ProgramGraph {
        id: "t".into(),
        variant: Variant::RelscH,
        nodes: vec![node(0, NodeType::IfStatement), node(1, NodeType::BinaryOperation), node(2, NodeType::BlockStatement)],
        edges: vec![
            Edge::new(0, 1, EdgeType::Ast),
            Edge::new(0, 2, EdgeType::Ast),
            Edge::new(0, 1, EdgeType::IfFlow),
            Edge::new(0, 2, EdgeType::ElseFlow),
        ],
        relations: None,
        target: None,
        provenance: String::new(),
        notes: Vec::new(),
    };
    compute_features(&mut g);
    let f = &g.nodes[0].feature;
    let mut type_part = vec![0; NODE_TYPE_COUNT];
    type_part[NodeType::IfStatement.ordinal()] = 1;
    assert_eq!(f.type_part(), type_part);
    let mut edge_part = vec![0; EDGE_TYPE_COUNT];
    edge_part[EdgeType::Ast.ordinal()] = 2;
    edge_part[EdgeType::IfFlow.ordinal()] = 1;
    edge_part[EdgeType::ElseFlow.ordinal()] = 1;
    assert_eq!(f.edge_part(), edge_part);
    assert!(g.nodes[1].feature.edge_part().iter().all(|&c| c == 0));
}

#[test]
fn empty_loop_bodies_get_notes() {
    for (name, src) in [
        ("while_empty_block", "class A { void m() { while (busy()) {} } }"),
        ("while_empty_stmt", "class A { void m() { while (busy()); } }"),
        ("for_empty", "class A { void m() { for (int i = 0; i < 10; i++); } }"),
    ] {
        let g = build_relsc_h(&common::parse(src));
        assert_eq!(g.count_edges(EdgeType::WhileNext) + g.count_edges(EdgeType::ForNext), 0, "{name}");
        assert_eq!(g.count_edges(EdgeType::WhileExec) + g.count_edges(EdgeType::ForExec), 1, "{name}");
        assert_eq!(g.notes.len(), 1, "{name}");
        assert!(g.notes[0].contains("empty body"), "{name}");
    }
}

// ---- random programs -------------------------------------------------------

#[derive(Debug, Clone)]
enum Stmt {
    Call,
    Assign,
    Empty,
    Block(Vec<Stmt>),
    If(Box<Stmt>, Option<Box<Stmt>>),
    While(Box<Stmt>),
    For(Box<Stmt>),
    ForEach(Box<Stmt>),
    Do(Box<Stmt>),
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let leaf = prop_oneof![Just(Stmt::Call), Just(Stmt::Assign), Just(Stmt::Empty)];
    leaf.prop_recursive(4, 40, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Stmt::Block),
            (inner.clone(), prop::option::of(inner.clone()))
                .prop_map(|(t, e)| Stmt::If(Box::new(t), e.map(Box::new))),
            inner.clone().prop_map(|b| Stmt::While(Box::new(b))),
            inner.clone().prop_map(|b| Stmt::For(Box::new(b))),
            inner.clone().prop_map(|b| Stmt::ForEach(Box::new(b))),
            inner.prop_map(|b| Stmt::Do(Box::new(b))),
        ]
    })
}

fn render(s: &Stmt, out: &mut String) {
    match s {
        Stmt::Call => out.push_str("f(x);"),
        Stmt::Assign => out.push_str("x = x + 1;"),
        Stmt::Empty => out.push(';'),
        Stmt::Block(b) => {
            out.push('{');
            for s in b {
                render(s, out);
            }
            out.push('}');
        }
        Stmt::If(t, e) => {
            out.push_str("if (x < n) ");
            match e {
                // Braces keep a nested `else` from binding to an inner `if`.
                Some(e) => {
                    out.push('{');
                    render(t, out);
                    out.push_str("} else ");
                    render(e, out);
                }
                None => render(t, out),
            }
        }
        Stmt::While(b) => {
            out.push_str("while (x > 0) ");
            render(b, out);
        }
        Stmt::For(b) => {
            out.push_str("for (int i = 0; i < n; i++) ");
            render(b, out);
        }
        Stmt::ForEach(b) => {
            out.push_str("for (int v : xs) ");
            render(b, out);
        }
        Stmt::Do(b) => {
            out.push_str("do ");
            render(b, out);
            out.push_str(" while (x > 0);");
        }
    }
}

fn program(body: &[Stmt]) -> String {
    let mut s = String::from("class A { void m(int x, int n, int[] xs) {");
    for b in body {
        render(b, &mut s);
    }
    s.push_str("} }");
    s
}

/// Flow-edge counts read off the statement structure, indexed by
/// `EdgeType::ordinal`.
fn expected_flow(body: &[Stmt]) -> [usize; EDGE_TYPE_COUNT] {
    fn has_last(s: &Stmt) -> bool {
        match s {
            Stmt::Empty => false,
            Stmt::Block(b) => !b.is_empty(),
            _ => true,
        }
    }
    fn walk(s: &Stmt, c: &mut [usize; EDGE_TYPE_COUNT]) {
        let mut bump = |t: EdgeType| c[t.ordinal()] += 1;
        match s {
            Stmt::Call | Stmt::Assign | Stmt::Empty => {}
            Stmt::Block(b) => {
                c[EdgeType::NextStmt.ordinal()] += b.len().saturating_sub(1);
                for s in b {
                    walk(s, c);
                }
            }
            Stmt::If(t, e) => {
                bump(EdgeType::IfFlow);
                if e.is_some() {
                    bump(EdgeType::ElseFlow);
                }
                walk(t, c);
                if let Some(e) = e {
                    walk(e, c);
                }
            }
            Stmt::While(b) => {
                bump(EdgeType::WhileExec);
                if has_last(b) {
                    bump(EdgeType::WhileNext);
                }
                walk(b, c);
            }
            Stmt::For(b) | Stmt::ForEach(b) => {
                bump(EdgeType::ForExec);
                if has_last(b) {
                    bump(EdgeType::ForNext);
                }
                walk(b, c);
            }
            Stmt::Do(b) => walk(b, c),
        }
    }
    let mut c = [0; EDGE_TYPE_COUNT];
    walk(&Stmt::Block(body.to_vec()), &mut c);
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_programs_obey_edge_rules(body in prop::collection::vec(stmt(), 0..5)) {
        let src = program(&body);
        let unit = common::parse(&src);
        let g = build_relsc_h(&unit);

        check_conservation(&src, &unit, &g);
        check_features(&src, &g);
        common::flow_edges_local(&unit, &g).map_err(TestCaseError::fail)?;
        g.validate().unwrap();

        let want = expected_flow(&body);
        for t in EdgeType::ALL.into_iter().filter(|t| t.is_flow() || *t == EdgeType::NextStmt) {
            // The braces added around then-branches are blocks of one
            // statement and contribute no next_stmt edge.
            prop_assert_eq!(g.count_edges(t), want[t.ordinal()], "{} in {}", t, src);
        }

        let reversed: Vec<Pass> = Pass::ALL.iter().rev().copied().collect();
        prop_assert_eq!(&build_relsc_h_with(&unit, &reversed), &g);
    }
}

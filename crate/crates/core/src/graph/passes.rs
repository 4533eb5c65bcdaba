use std::collections::BTreeMap;

use super::{Edge, EdgeType, FeatureVector, GraphNode, ProgramGraph, Variant, EDGE_TYPE_COUNT};
use crate::frontend::{AstNode, NodeId, Role, SourceUnit};
use crate::taxonomy::NodeType;

/// One augmentation pass over an oriented AST.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pass {
    NextToken,
    NextSibling,
    NextUse,
    /// if/else and while/for edges.
    BranchFlow,
    NextStmt,
}

impl Pass {
    pub const ALL: [Pass; 5] = [Pass::NextToken, Pass::NextSibling, Pass::NextUse, Pass::BranchFlow, Pass::NextStmt];

    fn run(self, g: &mut ProgramGraph, unit: &SourceUnit) {
        match self {
            Pass::NextToken => add_next_token(g, unit),
            Pass::NextSibling => add_next_sibling(g, unit),
            Pass::NextUse => add_next_use(g, unit),
            Pass::BranchFlow => add_branch_flow(g, unit),
            Pass::NextStmt => add_next_stmt(g, unit),
        }
    }
}

/// One `ast` edge from every parent to each of its children.
pub fn orient_ast(unit: &SourceUnit) -> ProgramGraph {
    let nodes = unit
        .nodes()
        .iter()
        .map(|n| GraphNode {
            id: n.id,
            node_type: n.node_type,
            feature: FeatureVector::new(n.node_type, [0; EDGE_TYPE_COUNT]),
        })
        .collect();
    let edges = unit
        .nodes()
        .iter()
        .flat_map(|n| n.children.iter().map(move |&c| Edge::new(n.id, c, EdgeType::Ast)))
        .collect();
    let mut g = ProgramGraph {
        id: unit.path.clone(),
        variant: Variant::AstOnly,
        nodes,
        edges,
        relations: None,
        target: None,
        provenance: unit.path.clone(),
        notes: unit.parse_warnings.clone(),
    };
    g.sort_edges();
    g
}

/// The AST-only ablation graph with features.
pub fn build_ast_only(unit: &SourceUnit) -> ProgramGraph {
    let mut g = orient_ast(unit);
    compute_features(&mut g);
    g
}

fn push(g: &mut ProgramGraph, src: NodeId, dst: NodeId, edge_type: EdgeType) {
    debug_assert_ne!(src, dst, "{edge_type} self-loop");
    g.edges.push(Edge::new(src, dst, edge_type));
    g.variant = Variant::RelscH;
}

/// Chain consecutive leaves in token order across the whole file.
pub fn add_next_token(g: &mut ProgramGraph, unit: &SourceUnit) {
    let leaves = unit.leaves();
    for w in leaves.windows(2) {
        push(g, w[0].id, w[1].id, EdgeType::NextToken);
    }
    g.variant = Variant::RelscH;
}

pub fn add_next_sibling(g: &mut ProgramGraph, unit: &SourceUnit) {
    for n in unit.nodes() {
        for w in n.children.windows(2) {
            push(g, w[0], w[1], EdgeType::NextSibling);
        }
    }
    g.variant = Variant::RelscH;
}

fn is_scope_owner(t: NodeType) -> bool {
    matches!(
        t,
        NodeType::MethodDeclaration
            | NodeType::ConstructorDeclaration
            | NodeType::AnnotationMethod
            | NodeType::ClassDeclaration
            | NodeType::InterfaceDeclaration
            | NodeType::EnumDeclaration
            | NodeType::AnnotationDeclaration
            | NodeType::CompilationUnit
    )
}

fn scope_of(unit: &SourceUnit, node: &AstNode) -> NodeId {
    let mut cur = node.parent;
    while let Some(p) = cur {
        if is_scope_owner(unit.node(p).node_type) {
            return p;
        }
        cur = unit.node(p).parent;
    }
    unit.root
}

/// Chain the occurrences of each simple name inside one method scope.
pub fn add_next_use(g: &mut ProgramGraph, unit: &SourceUnit) {
    let mut chains: BTreeMap<(NodeId, &str), Vec<&AstNode>> = BTreeMap::new();
    for n in unit.nodes() {
        if let Some(name) = n.var_name.as_deref() {
            chains.entry((scope_of(unit, n), name)).or_default().push(n);
        }
    }
    for occurrences in chains.values_mut() {
        occurrences.sort_by_key(|n| (n.source_order, n.id));
        for w in occurrences.windows(2) {
            push(g, w[0].id, w[1].id, EdgeType::NextUse);
        }
    }
    g.variant = Variant::RelscH;
}

/// Last statement executed by a loop body, or `None` when the body is empty.
fn last_statement(body: &AstNode) -> Option<NodeId> {
    match body.node_type {
        NodeType::BlockStatement => body.children.last().copied(),
        NodeType::Statement if body.is_leaf => None,
        _ => Some(body.id),
    }
}

/// Branch and loop edges: if/else, while and for.
pub fn add_branch_flow(g: &mut ProgramGraph, unit: &SourceUnit) {
    for n in unit.nodes() {
        match n.node_type {
            NodeType::IfStatement => {
                let Some(cond) = unit.child_with_role(n.id, Role::Condition) else { continue };
                if let Some(then) = unit.child_with_role(n.id, Role::Then) {
                    push(g, cond.id, then.id, EdgeType::IfFlow);
                }
                if let Some(els) = unit.child_with_role(n.id, Role::Else) {
                    push(g, cond.id, els.id, EdgeType::ElseFlow);
                }
            }
            NodeType::WhileStatement => {
                let (Some(cond), Some(body)) =
                    (unit.child_with_role(n.id, Role::Condition), unit.child_with_role(n.id, Role::Body))
                else {
                    continue;
                };
                loop_edges(g, n, cond.id, body, EdgeType::WhileExec, EdgeType::WhileNext, "while");
            }
            NodeType::ForStatement => {
                let Some(body) = unit.child_with_role(n.id, Role::Body) else { continue };
                let Some(control) = unit.children(n.id).next() else { continue };
                let cond = match control.node_type {
                    NodeType::ForControl => unit.child_with_role(control.id, Role::Condition).unwrap_or(control).id,
                    _ => control.id,
                };
                loop_edges(g, n, cond, body, EdgeType::ForExec, EdgeType::ForNext, "for");
            }
            _ => {}
        }
    }
    g.variant = Variant::RelscH;
}

#[allow(clippy::too_many_arguments)]
fn loop_edges(
    g: &mut ProgramGraph,
    stmt: &AstNode,
    cond: NodeId,
    body: &AstNode,
    exec: EdgeType,
    next: EdgeType,
    keyword: &str,
) {
    push(g, cond, body.id, exec);
    match last_statement(body) {
        Some(last) => push(g, last, cond, next),
        None => g.notes.push(format!(
            "line {}: {keyword} loop with empty body gets no {next} edge",
            stmt.line
        )),
    }
}

/// Chain consecutive statements of every block and of every `case` group.
pub fn add_next_stmt(g: &mut ProgramGraph, unit: &SourceUnit) {
    for n in unit.nodes() {
        let stmts: Vec<NodeId> = match n.node_type {
            NodeType::BlockStatement => n.children.clone(),
            NodeType::SwitchStatementCase => unit
                .children(n.id)
                .filter(|c| c.role == Role::CaseStatement)
                .map(|c| c.id)
                .collect(),
            _ => continue,
        };
        for w in stmts.windows(2) {
            push(g, w[0], w[1], EdgeType::NextStmt);
        }
    }
    g.variant = Variant::RelscH;
}

/// [`add_branch_flow`] followed by [`add_next_stmt`].
pub fn add_control_flow(g: &mut ProgramGraph, unit: &SourceUnit) {
    add_branch_flow(g, unit);
    add_next_stmt(g, unit);
}

/// Fill every node's feature vector from the current edge list.
pub fn compute_features(g: &mut ProgramGraph) {
    let mut counts = vec![[0u32; EDGE_TYPE_COUNT]; g.nodes.len()];
    for e in &g.edges {
        counts[e.src][e.edge_type.ordinal()] += 1;
    }
    for (node, c) in g.nodes.iter_mut().zip(counts) {
        node.feature = FeatureVector::new(node.node_type, c);
    }
}

/// The flow-augmented graph: every pass, canonical edge order, features.
pub fn build_relsc_h(unit: &SourceUnit) -> ProgramGraph {
    build_relsc_h_with(unit, &Pass::ALL)
}

/// Like [`build_relsc_h`] with an explicit pass order.
pub fn build_relsc_h_with(unit: &SourceUnit, passes: &[Pass]) -> ProgramGraph {
    let mut g = orient_ast(unit);
    for pass in passes {
        pass.run(&mut g, unit);
    }
    g.variant = Variant::RelscH;
    g.sort_edges();
    g.notes.sort();
    compute_features(&mut g);
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;

    fn graph(src: &str) -> ProgramGraph {
        build_relsc_h(&parse_source(src, "T.java").unwrap())
    }

    fn names(g: &ProgramGraph, t: EdgeType) -> Vec<(NodeType, NodeType)> {
        g.edges
            .iter()
            .filter(|e| e.edge_type == t)
            .map(|e| (g.nodes[e.src].node_type, g.nodes[e.dst].node_type))
            .collect()
    }

    #[test]
    fn while_loop_edges() {
        let g = graph("class A { void m(){ while(c){a();b();} } }");
        use NodeType::*;
        assert_eq!(names(&g, EdgeType::WhileExec), [(MemberReference, BlockStatement)]);
        assert_eq!(names(&g, EdgeType::WhileNext), [(StatementExpression, MemberReference)]);
        assert_eq!(names(&g, EdgeType::NextStmt), [(StatementExpression, StatementExpression)]);
    }

    #[test]
    fn empty_loop_body_is_noted() {
        let g = graph("class A { void m(){ while(c){} for(;;); } }");
        assert_eq!(g.count_edges(EdgeType::WhileNext), 0);
        assert_eq!(g.count_edges(EdgeType::ForNext), 0);
        assert_eq!(g.count_edges(EdgeType::ForExec), 1);
        assert_eq!(g.notes.len(), 2);
    }

    #[test]
    fn if_without_else() {
        let g = graph("class A { void m(){ if(c) s(); } }");
        assert_eq!(g.count_edges(EdgeType::IfFlow), 1);
        assert_eq!(g.count_edges(EdgeType::ElseFlow), 0);
    }

    #[test]
    fn next_use_chain() {
        let g = graph("class A { void m(){ int x=0; x=x+1; int y = 2; } }");
        use NodeType::*;
        assert_eq!(
            names(&g, EdgeType::NextUse),
            [(VariableDeclarator, MemberReference), (MemberReference, MemberReference)]
        );
    }

    #[test]
    fn single_node_unit() {
        let g = graph("");
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
        assert!(g.nodes[0].feature.edge_part().iter().all(|&c| c == 0));
    }
}

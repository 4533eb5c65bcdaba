use serde::Serialize;

use crate::taxonomy::NodeType;

/// Graph-local node index. Ids are assigned in AST pre-order, so the root is
/// always 0 and every parent id is smaller than its children's.
pub type NodeId = usize;

/// Position a child occupies in its parent's syntax.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Other,
    /// Predicate of `if`/`while`/`do`, the condition of a `for` header, or the
    /// selector of a `switch`.
    Condition,
    Then,
    Else,
    /// Loop body, `try` block, lambda body or `synchronized` block.
    Body,
    /// `for` header initializer.
    Init,
    /// `for` header update expression.
    Update,
    CaseLabel,
    /// Statement listed under a `case` label.
    CaseStatement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AstNode {
    pub id: NodeId,
    pub node_type: NodeType,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Index of the node's first token in the file.
    pub source_order: usize,
    pub line: usize,
    pub is_leaf: bool,
    pub role: Role,
    /// Identifier, operator, literal or type name carried by the node.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Simple variable name this node declares or reads, used by the
    /// next-use chains.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub var_name: Option<String>,
}

/// One parsed Java file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    pub path: String,
    pub root: NodeId,
    pub node_count: usize,
    pub parse_warnings: Vec<String>,
    nodes: Vec<AstNode>,
}

impl SourceUnit {
    pub(crate) fn from_nodes(path: String, nodes: Vec<AstNode>, parse_warnings: Vec<String>) -> Self {
        SourceUnit {
            path,
            root: 0,
            node_count: nodes.len(),
            parse_warnings,
            nodes,
        }
    }

    pub fn nodes(&self) -> &[AstNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &AstNode {
        &self.nodes[id]
    }

    pub fn children(&self, id: NodeId) -> impl Iterator<Item = &AstNode> + '_ {
        self.nodes[id].children.iter().map(move |&c| &self.nodes[c])
    }

    pub fn child_with_role(&self, id: NodeId, role: Role) -> Option<&AstNode> {
        self.children(id).find(|c| c.role == role)
    }

    /// Leaves sorted by their first token.
    pub fn leaves(&self) -> Vec<&AstNode> {
        let mut leaves: Vec<_> = self.nodes.iter().filter(|n| n.is_leaf).collect();
        leaves.sort_by_key(|n| (n.source_order, n.id));
        leaves
    }

    pub fn is_ancestor(&self, ancestor: NodeId, mut node: NodeId) -> bool {
        loop {
            if node == ancestor {
                return true;
            }
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => return false,
            }
        }
    }

    /// Whether every top-level type is an interface or annotation type.
    pub fn is_interface_only(&self) -> bool {
        let mut types = self.children(self.root).filter(|n| {
            matches!(
                n.node_type,
                NodeType::ClassDeclaration
                    | NodeType::EnumDeclaration
                    | NodeType::InterfaceDeclaration
                    | NodeType::AnnotationDeclaration
                    | NodeType::MethodDeclaration
                    | NodeType::FieldDeclaration
            )
        });
        let mut any = false;
        let all = types.all(|n| {
            any = true;
            matches!(
                n.node_type,
                NodeType::InterfaceDeclaration | NodeType::AnnotationDeclaration
            )
        });
        any && all
    }

    /// Debug dump: one JSON document listing id, type, children and
    /// source order of every node.
    pub fn debug_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump<'a> {
            path: &'a str,
            root: NodeId,
            node_count: usize,
            warnings: &'a [String],
            nodes: Vec<DumpNode<'a>>,
        }
        #[derive(Serialize)]
        struct DumpNode<'a> {
            id: NodeId,
            #[serde(rename = "type")]
            node_type: &'static str,
            children: &'a [NodeId],
            source_order: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            label: Option<&'a str>,
        }
        let dump = Dump {
            path: &self.path,
            root: self.root,
            node_count: self.node_count,
            warnings: &self.parse_warnings,
            nodes: self
                .nodes
                .iter()
                .map(|n| DumpNode {
                    id: n.id,
                    node_type: n.node_type.name(),
                    children: &n.children,
                    source_order: n.source_order,
                    label: n.label.as_deref(),
                })
                .collect(),
        };
        serde_json::to_value(dump).expect("dump is plain data")
    }

    /// Indented one-node-per-line rendering.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let n = &self.nodes[id];
            out.push_str(&"  ".repeat(depth));
            out.push_str(n.node_type.name());
            if let Some(label) = &n.label {
                out.push_str(&format!(" `{label}`"));
            }
            out.push('\n');
            for &c in n.children.iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }
}

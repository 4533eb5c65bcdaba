//! Directed program graphs: the AST-only and flow-augmented variants.

mod passes;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::frontend::NodeId;
use crate::relational::RelationalEdge;
use crate::taxonomy::{NodeType, NODE_TYPE_COUNT};

pub use passes::{
    add_control_flow, add_next_sibling, add_next_stmt, add_next_token, add_next_use, add_branch_flow,
    build_ast_only, build_relsc_h, build_relsc_h_with, compute_features, orient_ast, Pass,
};

pub const EDGE_TYPE_COUNT: usize = 11;

/// Length of a node feature vector.
pub const FEATURE_LEN: usize = NODE_TYPE_COUNT + EDGE_TYPE_COUNT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeType {
    Ast,
    NextToken,
    NextSibling,
    NextUse,
    IfFlow,
    ElseFlow,
    WhileExec,
    WhileNext,
    ForExec,
    ForNext,
    NextStmt,
}

impl EdgeType {
    pub const ALL: [EdgeType; EDGE_TYPE_COUNT] = [
        EdgeType::Ast,
        EdgeType::NextToken,
        EdgeType::NextSibling,
        EdgeType::NextUse,
        EdgeType::IfFlow,
        EdgeType::ElseFlow,
        EdgeType::WhileExec,
        EdgeType::WhileNext,
        EdgeType::ForExec,
        EdgeType::ForNext,
        EdgeType::NextStmt,
    ];

    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            EdgeType::Ast => "ast",
            EdgeType::NextToken => "next_token",
            EdgeType::NextSibling => "next_sibling",
            EdgeType::NextUse => "next_use",
            EdgeType::IfFlow => "if_flow",
            EdgeType::ElseFlow => "else_flow",
            EdgeType::WhileExec => "while_exec",
            EdgeType::WhileNext => "while_next",
            EdgeType::ForExec => "for_exec",
            EdgeType::ForNext => "for_next",
            EdgeType::NextStmt => "next_stmt",
        }
    }

    /// Edges emitted by the branch and loop rules.
    pub fn is_flow(self) -> bool {
        matches!(
            self,
            EdgeType::IfFlow
                | EdgeType::ElseFlow
                | EdgeType::WhileExec
                | EdgeType::WhileNext
                | EdgeType::ForExec
                | EdgeType::ForNext
        )
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EdgeType::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "edge type",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    AstOnly,
    RelscH,
    RelscM,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::AstOnly, Variant::RelscH, Variant::RelscM];

    pub fn name(self) -> &'static str {
        match self {
            Variant::AstOnly => "ast_only",
            Variant::RelscH => "relsc_h",
            Variant::RelscM => "relsc_m",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "variant",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub edge_type: EdgeType,
}

impl Edge {
    pub fn new(src: NodeId, dst: NodeId, edge_type: EdgeType) -> Self {
        Edge { src, dst, edge_type }
    }

    fn sort_key(&self) -> (EdgeType, NodeId, NodeId) {
        (self.edge_type, self.src, self.dst)
    }
}

/// One-hot node type followed by per-edge-type outgoing counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureVector(Vec<u32>);

impl FeatureVector {
    pub fn new(node_type: NodeType, out_counts: [u32; EDGE_TYPE_COUNT]) -> Self {
        let mut v = vec![0; FEATURE_LEN];
        v[node_type.ordinal()] = 1;
        v[NODE_TYPE_COUNT..].copy_from_slice(&out_counts);
        FeatureVector(v)
    }

    pub fn from_vec(values: Vec<u32>) -> crate::Result<Self> {
        if values.len() != FEATURE_LEN {
            return Err(Error::MalformedGraph(format!(
                "feature vector has length {}, expected {FEATURE_LEN}",
                values.len()
            )));
        }
        Ok(FeatureVector(values))
    }

    pub fn type_part(&self) -> &[u32] {
        &self.0[..NODE_TYPE_COUNT]
    }

    pub fn edge_part(&self) -> &[u32] {
        &self.0[NODE_TYPE_COUNT..]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphNode {
    pub id: NodeId,
    pub node_type: NodeType,
    pub feature: FeatureVector,
}

/// A directed multigraph over AST nodes.
///
/// Node ids follow AST pre-order and equal positions in `nodes`. For the
/// `relsc_m` variant, `edges` still holds the flow-augmented edges and
/// `relations` the category-typed edges derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgramGraph {
    pub id: String,
    pub variant: Variant,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<Edge>,
    pub relations: Option<Vec<RelationalEdge>>,
    pub target: Option<f64>,
    pub provenance: String,
    /// Build notes, e.g. loops whose body had no last statement.
    pub notes: Vec<String>,
}

impl ProgramGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Edges the variant exposes: relational edges for `relsc_m`, the plain
    /// edge list otherwise.
    pub fn edge_count(&self) -> usize {
        match (&self.variant, &self.relations) {
            (Variant::RelscM, Some(r)) => r.len(),
            _ => self.edges.len(),
        }
    }

    /// `(src, dst)` pairs of the edges the variant exposes.
    pub fn edge_pairs(&self) -> Vec<(NodeId, NodeId)> {
        match (&self.variant, &self.relations) {
            (Variant::RelscM, Some(r)) => r.iter().map(|e| (e.src, e.dst)).collect(),
            _ => self.edges.iter().map(|e| (e.src, e.dst)).collect(),
        }
    }

    pub fn count_edges(&self, edge_type: EdgeType) -> usize {
        self.edges.iter().filter(|e| e.edge_type == edge_type).count()
    }

    pub fn edge_type_counts(&self) -> [usize; EDGE_TYPE_COUNT] {
        let mut counts = [0; EDGE_TYPE_COUNT];
        for e in &self.edges {
            counts[e.edge_type.ordinal()] += 1;
        }
        counts
    }

    pub(crate) fn sort_edges(&mut self) {
        self.edges.sort_by_key(Edge::sort_key);
    }

    /// Check endpoint ranges, self-loops, id order and feature shape.
    pub fn validate(&self) -> crate::Result<()> {
        let n = self.nodes.len();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id != i {
                return Err(Error::MalformedGraph(format!("node at position {i} has id {}", node.id)));
            }
            if node.feature.len() != FEATURE_LEN {
                return Err(Error::MalformedGraph(format!("node {i} feature has length {}", node.feature.len())));
            }
        }
        for e in &self.edges {
            if e.src >= n || e.dst >= n {
                return Err(Error::MalformedGraph(format!("edge {}->{} leaves the node set", e.src, e.dst)));
            }
            if e.src == e.dst {
                return Err(Error::MalformedGraph(format!("self-loop on node {}", e.src)));
            }
        }
        if self.variant == Variant::AstOnly && self.edges.iter().any(|e| e.edge_type != EdgeType::Ast) {
            return Err(Error::MalformedGraph("ast_only graph carries non-ast edges".into()));
        }
        if let Some(rel) = &self.relations {
            if rel.iter().any(|e| e.src >= n || e.dst >= n) {
                return Err(Error::MalformedGraph("relational edge leaves the node set".into()));
            }
        }
        Ok(())
    }
}

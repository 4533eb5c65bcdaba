use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeType, FeatureVector, GraphNode, ProgramGraph, Variant};
use crate::relational::{RelationId, RelationalEdge};
use crate::taxonomy::{categorize, Category, NodeType};

/// One JSON Lines graph record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecord {
    pub id: String,
    pub variant: Variant,
    pub provenance: String,
    pub target: Option<f64>,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub id: usize,
    #[serde(rename = "type")]
    pub node_type: NodeType,
    pub category: Category,
    pub feature: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub src: usize,
    pub dst: usize,
    pub edge_type: EdgeType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<bool>,
}

impl GraphRecord {
    pub fn from_graph(g: &ProgramGraph) -> Result<Self> {
        let nodes = g
            .nodes
            .iter()
            .map(|n| NodeRecord {
                id: n.id,
                node_type: n.node_type,
                category: categorize(n.node_type),
                feature: n.feature.as_slice().to_vec(),
            })
            .collect();
        let edges = match g.variant {
            Variant::RelscM => g
                .relations
                .as_ref()
                .ok_or_else(|| Error::MalformedGraph("relsc_m graph without relations".into()))?
                .iter()
                .map(|e| EdgeRecord {
                    src: e.src,
                    dst: e.dst,
                    edge_type: e.origin_edge_type,
                    relation: Some(e.relation.id()),
                    inverse: Some(e.inverse),
                })
                .collect(),
            _ => g
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    src: e.src,
                    dst: e.dst,
                    edge_type: e.edge_type,
                    relation: None,
                    inverse: None,
                })
                .collect(),
        };
        Ok(GraphRecord {
            id: g.id.clone(),
            variant: g.variant,
            provenance: g.provenance.clone(),
            target: g.target,
            nodes,
            edges,
            notes: g.notes.clone(),
        })
    }

    pub fn into_graph(self) -> Result<ProgramGraph> {
        let bad = |m: String| Error::Record(format!("{}: {m}", self.id));
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id != i {
                return Err(bad(format!("node at position {i} has id {}", n.id)));
            }
            if n.category != categorize(n.node_type) {
                return Err(bad(format!("node {i}: {} is not in category {}", n.node_type, n.category)));
            }
            let feature = FeatureVector::from_vec(n.feature.clone()).map_err(|e| bad(e.to_string()))?;
            if feature.type_part()[n.node_type.ordinal()] != 1 || feature.type_part().iter().sum::<u32>() != 1 {
                return Err(bad(format!("node {i}: feature one-hot does not match type {}", n.node_type)));
            }
            nodes.push(GraphNode {
                id: n.id,
                node_type: n.node_type,
                feature,
            });
        }

        let (edges, relations) = match self.variant {
            Variant::RelscM => {
                let mut rel = Vec::with_capacity(self.edges.len());
                let mut plain = Vec::new();
                for e in &self.edges {
                    let (Some(id), Some(inverse)) = (e.relation, e.inverse) else {
                        return Err(bad("relsc_m edge without relation or inverse field".into()));
                    };
                    let relation = RelationId::from_id(id).ok_or_else(|| bad(format!("relation id {id} out of range")))?;
                    let cat = |v: usize| nodes.get(v).map(|n| categorize(n.node_type));
                    if (cat(e.src), cat(e.dst)) != (Some(relation.src_cat), Some(relation.dst_cat)) {
                        return Err(bad(format!("edge {}->{} does not match relation {relation}", e.src, e.dst)));
                    }
                    if !inverse {
                        plain.push(Edge::new(e.src, e.dst, e.edge_type));
                    }
                    rel.push(RelationalEdge {
                        src: e.src,
                        dst: e.dst,
                        relation,
                        origin_edge_type: e.edge_type,
                        inverse,
                    });
                }
                (plain, Some(rel))
            }
            _ => {
                if self.edges.iter().any(|e| e.relation.is_some() || e.inverse.is_some()) {
                    return Err(bad(format!("{} record carries relation fields", self.variant)));
                }
                (self.edges.iter().map(|e| Edge::new(e.src, e.dst, e.edge_type)).collect(), None)
            }
        };

        let g = ProgramGraph {
            id: self.id,
            variant: self.variant,
            nodes,
            edges,
            relations,
            target: self.target,
            provenance: self.provenance,
            notes: self.notes,
        };
        g.validate()?;
        Ok(g)
    }
}

/// One JSON line, without the trailing newline.
pub fn serialize_graph(g: &ProgramGraph) -> Result<String> {
    Ok(serde_json::to_string(&GraphRecord::from_graph(g)?)?)
}

pub fn deserialize_graph(line: &str) -> Result<ProgramGraph> {
    let record: GraphRecord = serde_json::from_str(line).map_err(|e| Error::Record(e.to_string()))?;
    record.into_graph()
}

/// Every non-blank line of a JSON Lines file.
pub fn read_graphs(path: &std::path::Path) -> Result<Vec<ProgramGraph>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            deserialize_graph(l).map_err(|e| Error::Record(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

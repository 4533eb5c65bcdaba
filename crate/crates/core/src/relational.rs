//! Category-typed multi-relational lift of flow-augmented graphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::frontend::NodeId;
use crate::graph::{EdgeType, ProgramGraph, Variant};
use crate::taxonomy::{categorize, Category, CATEGORY_COUNT};

/// Number of possible relations: one per ordered category pair.
pub const RELATION_COUNT: usize = CATEGORY_COUNT * CATEGORY_COUNT;

/// Ordered (source category, target category) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationId {
    pub src_cat: Category,
    pub dst_cat: Category,
}

impl RelationId {
    pub fn new(src_cat: Category, dst_cat: Category) -> Self {
        RelationId { src_cat, dst_cat }
    }

    /// `7 * src + dst`, in `0..49`.
    pub fn id(self) -> usize {
        CATEGORY_COUNT * self.src_cat.ordinal() + self.dst_cat.ordinal()
    }

    pub fn from_id(id: usize) -> Option<Self> {
        if id >= RELATION_COUNT {
            return None;
        }
        Some(RelationId {
            src_cat: Category::from_ordinal(id / CATEGORY_COUNT)?,
            dst_cat: Category::from_ordinal(id % CATEGORY_COUNT)?,
        })
    }

    pub fn reversed(self) -> Self {
        RelationId::new(self.dst_cat, self.src_cat)
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.src_cat, self.dst_cat)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationalEdge {
    pub src: NodeId,
    pub dst: NodeId,
    pub relation: RelationId,
    pub origin_edge_type: EdgeType,
    /// Reverse copy of an original edge.
    pub inverse: bool,
}

/// Lift a `relsc_h` graph to `relsc_m`.
///
/// Every edge is typed by its endpoint categories. With `add_inverse`, each
/// edge is followed by its reverse, typed by the swapped pair. Nodes,
/// features, target and the original edge list are kept as they are.
pub fn build_relsc_m(g: &ProgramGraph, add_inverse: bool) -> Result<ProgramGraph> {
    if g.variant != Variant::RelscH {
        return Err(Error::WrongVariant {
            expected: Variant::RelscH,
            actual: g.variant,
        });
    }
    let cat = |id: NodeId| categorize(g.nodes[id].node_type);
    let mut relations = Vec::with_capacity(g.edges.len() * if add_inverse { 2 } else { 1 });
    for e in &g.edges {
        let relation = RelationId::new(cat(e.src), cat(e.dst));
        relations.push(RelationalEdge {
            src: e.src,
            dst: e.dst,
            relation,
            origin_edge_type: e.edge_type,
            inverse: false,
        });
        if add_inverse {
            relations.push(RelationalEdge {
                src: e.dst,
                dst: e.src,
                relation: relation.reversed(),
                origin_edge_type: e.edge_type,
                inverse: true,
            });
        }
    }
    let mut m = g.clone();
    m.variant = Variant::RelscM;
    m.relations = Some(relations);
    Ok(m)
}

/// Count of relational edges per (source category, target category) cell.
pub fn relation_histogram(g: &ProgramGraph) -> Result<[[u64; CATEGORY_COUNT]; CATEGORY_COUNT]> {
    let relations = match (&g.variant, &g.relations) {
        (Variant::RelscM, Some(r)) => r,
        _ => {
            return Err(Error::WrongVariant {
                expected: Variant::RelscM,
                actual: g.variant,
            })
        }
    };
    let mut m = [[0u64; CATEGORY_COUNT]; CATEGORY_COUNT];
    for e in relations {
        m[e.relation.src_cat.ordinal()][e.relation.dst_cat.ordinal()] += 1;
    }
    Ok(m)
}

/// Distinct relation ids present on a graph.
pub fn distinct_relations(g: &ProgramGraph) -> usize {
    let mut seen = [false; RELATION_COUNT];
    for e in g.relations.iter().flatten() {
        seen[e.relation.id()] = true;
    }
    seen.iter().filter(|&&s| s).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_cover_0_to_48() {
        for id in 0..RELATION_COUNT {
            assert_eq!(RelationId::from_id(id).unwrap().id(), id);
        }
        assert!(RelationId::from_id(RELATION_COUNT).is_none());
    }

    #[test]
    fn method_to_if_is_declarations_to_control_flow() {
        use crate::taxonomy::NodeType;
        let r = RelationId::new(categorize(NodeType::MethodDeclaration), categorize(NodeType::IfStatement));
        assert_eq!((r.src_cat, r.dst_cat), (Category::Declarations, Category::ControlFlow));
        assert_eq!(r.id(), 2);
    }
}

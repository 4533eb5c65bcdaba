//! Java source files to program graphs for execution-time regression.
//!
//! The pipeline parses each file into a typed syntax tree, orients it into a
//! directed graph, augments it with token, sibling, use and control-flow
//! edges, and optionally lifts it into a category-typed multi-relational
//! graph. The `dataset` module turns a corpus of such graphs into labelled,
//! split JSON Lines files and `stats` summarizes them.
//!
//! ```
//! use javagraph::{frontend::parse_source, graph::{build_relsc_h, EdgeType}};
//!
//! let unit = parse_source("class A { void m(int n) { if (n > 0) n--; } }", "A.java").unwrap();
//! let g = build_relsc_h(&unit);
//! assert_eq!(g.count_edges(EdgeType::Ast), g.node_count() - 1);
//! assert_eq!(g.count_edges(EdgeType::IfFlow), 1);
//! ```

pub mod dataset;
pub mod error;
pub mod frontend;
pub mod graph;
pub mod relational;
pub mod stats;
pub mod taxonomy;

pub use error::{Error, Result};

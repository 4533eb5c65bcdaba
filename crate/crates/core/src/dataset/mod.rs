//! Labels, target scaling, splits, JSON Lines records and the corpus
//! pipeline that ties them together.

mod labels;
mod manifest;
mod normalize;
mod pipeline;
mod serialize;
mod splits;

pub use labels::{ingest_labels, normalize_path, LabelRecord, Labels};
pub use manifest::{DatasetEntry, DatasetManifest, GraphEntry, ProjectEntry, Rejected, RunSettings};
pub use normalize::{normalize_targets, NormalizationParams};
pub use pipeline::{run_pipeline, PipelineConfig, TOOL_VERSION};
pub use serialize::{deserialize_graph, read_graphs, serialize_graph, EdgeRecord, GraphRecord, NodeRecord};
pub use splits::{
    make_splits, read_splits_csv, split_sizes, write_splits_csv, Split, SplitAssignment, DEFAULT_RATIOS,
};

/// File names inside a pipeline output directory.
pub mod layout {
    use std::path::{Path, PathBuf};

    use crate::graph::Variant;

    pub const GRAPHS_DIR: &str = "graphs";
    pub const MANIFEST: &str = "manifest.json";
    pub const SPLITS: &str = "splits.csv";
    pub const STATS_CSV: &str = "stats.csv";

    /// `graphs/<variant>.jsonl`, relative to the output directory.
    pub fn graph_file(variant: Variant) -> String {
        format!("{GRAPHS_DIR}/{}.jsonl", variant.name())
    }

    /// Accept either an output directory or its `graphs/` subdirectory.
    pub fn output_root(dir: &Path) -> PathBuf {
        if dir.join(MANIFEST).exists() || !dir.ends_with(GRAPHS_DIR) {
            dir.to_path_buf()
        } else {
            dir.parent().map(Path::to_path_buf).unwrap_or_else(|| dir.to_path_buf())
        }
    }
}

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{NormalizationParams, Split};
use crate::error::Result;

/// Corpus index written next to the graph files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub tool_version: String,
    /// Seconds since the Unix epoch. The only field that differs between
    /// two runs over the same inputs.
    pub generated_at: u64,
    pub settings: RunSettings,
    pub datasets: Vec<DatasetEntry>,
    /// Sorted by id.
    pub graphs: Vec<GraphEntry>,
    /// Sorted by path.
    pub rejected: Vec<Rejected>,
    /// Variant name to graph file, relative to the manifest.
    pub files: BTreeMap<String, String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub inputs: Vec<String>,
    pub labels: String,
    pub variants: Vec<String>,
    pub seed: u64,
    pub ratios: [f64; 3],
    pub add_inverse: bool,
    pub exclude_interfaces: bool,
    /// How repeated label rows are merged.
    pub label_aggregation: String,
    pub normalization: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub name: String,
    pub projects: Vec<ProjectEntry>,
    pub normalization: Option<NormalizationParams>,
    /// Records written per variant.
    pub counts: BTreeMap<String, usize>,
    /// Graphs per split, absent when no split could be made.
    pub split_counts: Option<BTreeMap<String, usize>>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectEntry {
    pub name: String,
    pub root: String,
    pub graphs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphEntry {
    pub id: String,
    pub project: String,
    pub provenance: String,
    pub raw_seconds: f64,
    pub target: Option<f64>,
    pub split: Option<Split>,
    pub nodes: usize,
    /// Edge count per variant.
    pub edges: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rejected {
    pub path: String,
    pub reason: String,
}

impl DatasetManifest {
    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_slice(&std::fs::read(path)?)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

//! Corpus statistics: sizes, node categories, relations, graph shape,
//! degree and target distributions.

mod structure;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{ProgramGraph, Variant};
use crate::relational::relation_histogram;
use crate::taxonomy::{categorize, Category, CATEGORY_COUNT};

pub use structure::{metrics_of, structural_metrics, undirected_adjacency, StructuralMetrics};

/// Share of targets in `[0, SKEW_UPPER]` that flags a skewed distribution.
pub const SKEW_SHARE: f64 = 0.5;
pub const SKEW_UPPER: f64 = 0.22;

/// Mean, population standard deviation, min and max.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    /// Exact for integer samples: sums are accumulated in integers.
    pub fn of_counts(values: &[u64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as u128;
        let s: u128 = values.iter().map(|&v| v as u128).sum();
        let ss: u128 = values.iter().map(|&v| (v as u128) * (v as u128)).sum();
        let var = (n * ss - s * s) as f64 / (n * n) as f64;
        Some(Summary {
            mean: s as f64 / n as f64,
            std: var.sqrt(),
            min: *values.iter().min()? as f64,
            max: *values.iter().max()? as f64,
        })
    }

    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Some(Summary {
            mean,
            std: var.sqrt(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeRow {
    pub dataset: String,
    pub variant: Variant,
    pub graphs: usize,
    pub nodes: Summary,
    pub edges: Summary,
}

/// |V| and |E| summaries per variant. Edge counts are those the variant
/// exposes, so `relsc_m` counts relational edges.
pub fn size_stats(dataset: &str, graphs: &[ProgramGraph]) -> Vec<SizeRow> {
    let mut by_variant: BTreeMap<Variant, (Vec<u64>, Vec<u64>)> = BTreeMap::new();
    for g in graphs {
        let e = by_variant.entry(g.variant).or_default();
        e.0.push(g.node_count() as u64);
        e.1.push(g.edge_count() as u64);
    }
    by_variant
        .into_iter()
        .filter_map(|(variant, (v, e))| {
            Some(SizeRow {
                dataset: dataset.to_string(),
                variant,
                graphs: v.len(),
                nodes: Summary::of_counts(&v)?,
                edges: Summary::of_counts(&e)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryStat {
    pub category: Category,
    pub mean: f64,
    /// Sample standard deviation over √n; 0 for a single graph.
    pub standard_error: f64,
}

/// Mean per-graph node count of each category with its standard error.
pub fn category_distribution(graphs: &[ProgramGraph]) -> Vec<CategoryStat> {
    let counts: Vec<[u64; CATEGORY_COUNT]> = graphs
        .iter()
        .map(|g| {
            let mut c = [0u64; CATEGORY_COUNT];
            for node in &g.nodes {
                c[categorize(node.node_type).ordinal()] += 1;
            }
            c
        })
        .collect();
    let n = counts.len();
    Category::ALL
        .iter()
        .map(|&category| {
            let xs: Vec<f64> = counts.iter().map(|c| c[category.ordinal()] as f64).collect();
            let mean = if n == 0 { 0.0 } else { xs.iter().sum::<f64>() / n as f64 };
            let standard_error = if n < 2 {
                0.0
            } else {
                let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
                var.sqrt() / (n as f64).sqrt()
            };
            CategoryStat {
                category,
                mean,
                standard_error,
            }
        })
        .collect()
}

/// Cell-wise mean of [`relation_histogram`] over `relsc_m` graphs.
pub fn mean_relation_matrix(graphs: &[ProgramGraph]) -> Result<[[f64; CATEGORY_COUNT]; CATEGORY_COUNT]> {
    let mut sum = [[0u64; CATEGORY_COUNT]; CATEGORY_COUNT];
    for g in graphs {
        let h = relation_histogram(g)?;
        for i in 0..CATEGORY_COUNT {
            for j in 0..CATEGORY_COUNT {
                sum[i][j] += h[i][j];
            }
        }
    }
    let n = graphs.len().max(1) as f64;
    Ok(sum.map(|row| row.map(|c| c as f64 / n)))
}

/// Mean and population std of each structural metric over a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralSummary {
    pub density: Summary,
    pub avg_degree: Summary,
    pub clustering: Summary,
    pub diameter: Summary,
    pub avg_path_length: Summary,
    /// Over graphs where assortativity is defined; `None` if none is.
    pub assortativity: Option<Summary>,
    pub assortativity_undefined: usize,
}

pub fn structural_summary(graphs: &[ProgramGraph]) -> Option<StructuralSummary> {
    let metrics: Vec<StructuralMetrics> = graphs.par_iter().map(structural_metrics).collect();
    let col = |f: fn(&StructuralMetrics) -> f64| Summary::of(&metrics.iter().map(f).collect::<Vec<_>>());
    let assort: Vec<f64> = metrics.iter().filter_map(|m| m.assortativity).collect();
    Some(StructuralSummary {
        density: col(|m| m.density)?,
        avg_degree: col(|m| m.avg_degree)?,
        clustering: col(|m| m.clustering)?,
        diameter: col(|m| m.diameter as f64)?,
        avg_path_length: col(|m| m.avg_path_length)?,
        assortativity: Summary::of(&assort),
        assortativity_undefined: metrics.len() - assort.len(),
    })
}

/// Number of nodes per total (in + out) degree, counting every exposed edge.
pub fn degree_histogram(graphs: &[ProgramGraph]) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for g in graphs {
        let mut deg = vec![0usize; g.node_count()];
        for (u, v) in g.edge_pairs() {
            deg[u] += 1;
            deg[v] += 1;
        }
        for d in deg {
            *hist.entry(d).or_insert(0) += 1;
        }
    }
    hist
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetHistogram {
    pub bins: usize,
    pub counts: Vec<u64>,
    /// Fraction of targets in `[0, 0.22]`.
    pub low_share: f64,
    /// `low_share >= 0.5`.
    pub skewed: bool,
}

/// Equal-width bins over `[0, 1]`, half-open except the last, which also
/// takes 1.0. Values outside `[0, 1]` are clamped into the end bins.
pub fn target_histogram(targets: &[f64], bins: usize) -> TargetHistogram {
    let bins = bins.max(1);
    let mut counts = vec![0u64; bins];
    let edge = |i: usize| i as f64 / bins as f64;
    for &t in targets {
        let t = t.clamp(0.0, 1.0);
        let mut i = ((t * bins as f64).floor() as usize).min(bins - 1);
        // Rounding in the product can land one bin off the edge comparison.
        if i + 1 < bins && t >= edge(i + 1) {
            i += 1;
        } else if i > 0 && t < edge(i) {
            i -= 1;
        }
        counts[i] += 1;
    }
    let low = targets.iter().filter(|&&t| (0.0..=SKEW_UPPER).contains(&t)).count();
    let low_share = if targets.is_empty() { 0.0 } else { low as f64 / targets.len() as f64 };
    TargetHistogram {
        bins,
        counts,
        low_share,
        skewed: !targets.is_empty() && low_share >= SKEW_SHARE,
    }
}

/// Everything the report files carry for one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub dataset: String,
    pub sizes: Vec<SizeRow>,
    pub categories: Vec<CategoryStat>,
    /// Present when `relsc_m` graphs were supplied.
    pub relation_matrix: Option<[[f64; CATEGORY_COUNT]; CATEGORY_COUNT]>,
    /// Per variant.
    pub structure: BTreeMap<Variant, StructuralSummary>,
    pub degrees: BTreeMap<Variant, BTreeMap<usize, u64>>,
    pub targets: Option<TargetHistogram>,
    pub notes: Vec<String>,
}

pub const REPORT_NOTES: [&str; 3] = [
    "std: population (divisor n); category standard_error: sample std (divisor n-1) over sqrt(n)",
    "structural metrics: undirected simple graph, parallel edges collapsed",
    "diameter and avg_path_length: largest connected component",
];

/// Compute every statistic for one dataset. `graphs` may mix variants;
/// each is summarized on its own. Categories and targets come from the
/// first variant present.
pub fn corpus_stats(dataset: &str, graphs: &[ProgramGraph], target_bins: usize) -> Result<CorpusStats> {
    let mut by_variant: BTreeMap<Variant, Vec<ProgramGraph>> = BTreeMap::new();
    for g in graphs {
        by_variant.entry(g.variant).or_default().push(g.clone());
    }
    let first = by_variant.values().next().cloned().unwrap_or_default();
    let relation_matrix = match by_variant.get(&Variant::RelscM) {
        Some(m) => Some(mean_relation_matrix(m)?),
        None => None,
    };
    let mut structure = BTreeMap::new();
    let mut degrees = BTreeMap::new();
    for (v, gs) in &by_variant {
        if let Some(s) = structural_summary(gs) {
            structure.insert(*v, s);
        }
        degrees.insert(*v, degree_histogram(gs));
    }
    let targets: Vec<f64> = first.iter().filter_map(|g| g.target).collect();
    Ok(CorpusStats {
        dataset: dataset.to_string(),
        sizes: size_stats(dataset, graphs),
        categories: category_distribution(&first),
        relation_matrix,
        structure,
        degrees,
        targets: (!targets.is_empty()).then(|| target_histogram(&targets, target_bins)),
        notes: REPORT_NOTES.iter().map(|s| s.to_string()).collect(),
    })
}

impl CorpusStats {
    /// Long-format rows: `dataset,variant,metric,statistic,value`.
    pub fn rows(&self) -> Vec<[String; 5]> {
        let mut rows = Vec::new();
        let mut push = |variant: &str, metric: String, stat: &str, value: String| {
            rows.push([self.dataset.clone(), variant.to_string(), metric, stat.to_string(), value]);
        };
        let summary = |push: &mut dyn FnMut(&str, String, &str, String), variant: &str, metric: &str, s: &Summary| {
            for (name, v) in [("mean", s.mean), ("std", s.std), ("min", s.min), ("max", s.max)] {
                push(variant, metric.to_string(), name, v.to_string());
            }
        };
        for row in &self.sizes {
            let v = row.variant.name();
            push(v, "graphs".into(), "count", row.graphs.to_string());
            summary(&mut push, v, "nodes", &row.nodes);
            summary(&mut push, v, "edges", &row.edges);
        }
        for c in &self.categories {
            push("", format!("category.{}", c.category), "mean", c.mean.to_string());
            push("", format!("category.{}", c.category), "standard_error", c.standard_error.to_string());
        }
        if let Some(m) = &self.relation_matrix {
            for (i, row) in m.iter().enumerate() {
                for (j, value) in row.iter().enumerate() {
                    let (a, b) = (Category::ALL[i], Category::ALL[j]);
                    push("relsc_m", format!("relation.{a}.{b}"), "mean", value.to_string());
                }
            }
        }
        for (variant, s) in &self.structure {
            let v = variant.name();
            summary(&mut push, v, "density", &s.density);
            summary(&mut push, v, "avg_degree", &s.avg_degree);
            summary(&mut push, v, "clustering", &s.clustering);
            summary(&mut push, v, "diameter", &s.diameter);
            summary(&mut push, v, "avg_path_length", &s.avg_path_length);
            if let Some(a) = &s.assortativity {
                summary(&mut push, v, "assortativity", a);
            }
            push(v, "assortativity".into(), "undefined", s.assortativity_undefined.to_string());
        }
        for (variant, hist) in &self.degrees {
            for (d, c) in hist {
                push(variant.name(), "degree".into(), &d.to_string(), c.to_string());
            }
        }
        if let Some(t) = &self.targets {
            for (i, c) in t.counts.iter().enumerate() {
                push("", "target_bin".into(), &format!("{i}/{}", t.bins), c.to_string());
            }
            push("", "target".into(), "low_share", t.low_share.to_string());
            push("", "target".into(), "skewed", t.skewed.to_string());
        }
        rows
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["dataset", "variant", "metric", "statistic", "value"])?;
        for r in self.rows() {
            w.write_record(&r)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_10_and_20() {
        let s = Summary::of_counts(&[10, 20]).unwrap();
        assert_eq!((s.mean, s.std, s.min, s.max), (15.0, 5.0, 10.0, 20.0));
        assert_eq!(Summary::of_counts(&[7]).unwrap().std, 0.0);
    }

    #[test]
    fn histogram_boundaries() {
        assert_eq!(target_histogram(&[0.0, 1.0], 2).counts, [1, 1]);
        assert_eq!(target_histogram(&[0.5; 3], 4).counts, [0, 0, 3, 0]);
        let h = target_histogram(&[0.1, 0.2, 0.22, 0.9], 10);
        assert!(h.skewed);
        assert_eq!(h.low_share, 0.75);
    }
}

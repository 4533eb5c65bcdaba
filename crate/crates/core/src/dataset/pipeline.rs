use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use walkdir::WalkDir;

use super::labels::{ingest_labels, normalize_path, LabelRecord, Labels};
use super::manifest::{DatasetEntry, DatasetManifest, GraphEntry, ProjectEntry, Rejected, RunSettings};
use super::normalize::normalize_targets;
use super::serialize::serialize_graph;
use super::splits::{make_splits, write_splits_csv, Split, DEFAULT_RATIOS};
use super::layout;
use crate::error::{Error, Result};
use crate::frontend::parse_source;
use crate::graph::{build_ast_only, build_relsc_h, ProgramGraph, Variant};
use crate::relational::build_relsc_m;
use crate::stats::corpus_stats;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Worker stack size; the parser recurses once per nesting level.
const WORKER_STACK: usize = 64 << 20;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Project roots. Each directory's base name is its project name.
    pub inputs: Vec<PathBuf>,
    pub labels: PathBuf,
    pub variants: Vec<Variant>,
    pub out: PathBuf,
    pub dataset_name: String,
    pub seed: u64,
    pub ratios: [f64; 3],
    pub add_inverse: bool,
    pub exclude_interfaces: bool,
    pub target_bins: usize,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            inputs: Vec::new(),
            labels: PathBuf::new(),
            variants: Variant::ALL.to_vec(),
            out: PathBuf::from("out"),
            dataset_name: "dataset".into(),
            seed: 0,
            ratios: DEFAULT_RATIOS,
            add_inverse: true,
            exclude_interfaces: false,
            target_bins: 20,
            threads: 0,
        }
    }
}

struct SourceFile {
    project: String,
    /// Path relative to the project root, `/`-separated.
    rel: String,
    path: PathBuf,
}

struct Built {
    id: String,
    project: String,
    provenance: String,
    raw_seconds: f64,
    graphs: Vec<ProgramGraph>,
}

/// Parse, build, label, split and write a whole corpus.
///
/// Files that fail to parse, lack a label or are excluded end up in
/// `rejected`; only a corpus with no surviving file is an error. Output
/// order is by graph id whatever the thread interleaving, so two runs over
/// the same inputs differ only in `generated_at`.
pub fn run_pipeline(config: &PipelineConfig) -> Result<DatasetManifest> {
    let projects = check_config(config)?;
    let labels = ingest_labels(&config.labels, &config.inputs)?;
    let label_index = LabelIndex::new(&labels, &config.labels);

    let mut files = Vec::new();
    for (root, project) in config.inputs.iter().zip(&projects) {
        files.extend(java_files(root, project)?);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .stack_size(WORKER_STACK)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let results: Vec<std::result::Result<Built, Rejected>> =
        pool.install(|| files.par_iter().map(|f| build_one(f, config, &label_index)).collect());

    let mut built = Vec::new();
    let mut rejected = Vec::new();
    for r in results {
        match r {
            Ok(b) => built.push(b),
            Err(r) => rejected.push(r),
        }
    }
    built.sort_by(|a, b| a.id.cmp(&b.id));
    rejected.sort();
    if built.is_empty() {
        return Err(Error::NoGraphs {
            rejected: rejected.len(),
        });
    }

    let mut notes = Vec::new();
    let seconds: Vec<f64> = built.iter().map(|b| b.raw_seconds).collect();
    let normalization = match normalize_targets(&config.dataset_name, &seconds, None) {
        Ok((targets, params)) => {
            for (b, t) in built.iter_mut().zip(targets) {
                for g in &mut b.graphs {
                    g.target = Some(t);
                }
            }
            Some(params)
        }
        Err(e) => {
            notes.push(format!("targets left null: {e}"));
            None
        }
    };

    let items: Vec<(String, String)> = built.iter().map(|b| (b.id.clone(), b.project.clone())).collect();
    let splits = match make_splits(&items, config.ratios, config.seed) {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("no splits written: {e}"));
            None
        }
    };
    let split_of: HashMap<&str, Split> = splits
        .iter()
        .flatten()
        .map(|a| (a.graph_id.as_str(), a.split))
        .collect();

    fs::create_dir_all(config.out.join(layout::GRAPHS_DIR))?;
    let mut files_written = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for (slot, &variant) in config.variants.iter().enumerate() {
        let rel = layout::graph_file(variant);
        let mut w = BufWriter::new(fs::File::create(config.out.join(&rel))?);
        for b in &built {
            writeln!(w, "{}", serialize_graph(&b.graphs[slot])?)?;
        }
        w.flush()?;
        files_written.insert(variant.name().to_string(), rel);
        counts.insert(variant.name().to_string(), built.len());
    }

    let split_path = config.out.join(layout::SPLITS);
    match &splits {
        Some(s) => write_splits_csv(s, BufWriter::new(fs::File::create(&split_path)?))?,
        None if split_path.exists() => fs::remove_file(&split_path)?,
        None => {}
    }

    let all: Vec<ProgramGraph> = built.iter().flat_map(|b| b.graphs.iter().cloned()).collect();
    let stats = corpus_stats(&config.dataset_name, &all, config.target_bins)?;
    stats.write_csv(BufWriter::new(fs::File::create(config.out.join(layout::STATS_CSV))?))?;

    let project_entries = config
        .inputs
        .iter()
        .zip(&projects)
        .map(|(root, name)| ProjectEntry {
            name: name.clone(),
            root: root.display().to_string(),
            graphs: built.iter().filter(|b| &b.project == name).count(),
        })
        .collect();
    let split_counts = splits.as_ref().map(|s| {
        Split::ALL
            .iter()
            .map(|&x| (x.name().to_string(), s.iter().filter(|a| a.split == x).count()))
            .collect()
    });

    let graphs = built
        .iter()
        .map(|b| GraphEntry {
            id: b.id.clone(),
            project: b.project.clone(),
            provenance: b.provenance.clone(),
            raw_seconds: b.raw_seconds,
            target: b.graphs[0].target,
            split: split_of.get(b.id.as_str()).copied(),
            nodes: b.graphs[0].node_count(),
            edges: b.graphs.iter().map(|g| (g.variant.name().to_string(), g.edge_count())).collect(),
        })
        .collect();

    let manifest = DatasetManifest {
        tool_version: TOOL_VERSION.to_string(),
        generated_at: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        settings: RunSettings {
            inputs: config.inputs.iter().map(|p| p.display().to_string()).collect(),
            labels: config.labels.display().to_string(),
            variants: config.variants.iter().map(|v| v.name().to_string()).collect(),
            seed: config.seed,
            ratios: config.ratios,
            add_inverse: config.add_inverse,
            exclude_interfaces: config.exclude_interfaces,
            label_aggregation: "mean".into(),
            normalization: "min-max".into(),
        },
        datasets: vec![DatasetEntry {
            name: config.dataset_name.clone(),
            projects: project_entries,
            normalization,
            counts,
            split_counts,
            notes,
        }],
        graphs,
        rejected,
        files: files_written,
        warnings: labels.warnings.clone(),
    };
    manifest.write(&config.out.join(layout::MANIFEST))?;
    Ok(manifest)
}

fn check_config(config: &PipelineConfig) -> Result<Vec<String>> {
    if config.inputs.is_empty() {
        return Err(Error::Config("no input directory given".into()));
    }
    if config.variants.is_empty() {
        return Err(Error::Config("no variant requested".into()));
    }
    let mut seen_variants = config.variants.clone();
    seen_variants.sort();
    seen_variants.dedup();
    if seen_variants.len() != config.variants.len() {
        return Err(Error::Config("variant requested twice".into()));
    }
    let sum: f64 = config.ratios.iter().sum();
    if config.ratios.iter().any(|r| !r.is_finite() || *r < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidRatios(config.ratios));
    }
    if !config.labels.is_file() {
        return Err(Error::Config(format!("label file {} not found", config.labels.display())));
    }
    let mut names = Vec::new();
    for root in &config.inputs {
        if !root.is_dir() {
            return Err(Error::Config(format!("input {} is not a directory", root.display())));
        }
        let name = project_name(root)?;
        if names.contains(&name) {
            return Err(Error::Config(format!("two inputs share the project name `{name}`")));
        }
        names.push(name);
    }
    Ok(names)
}

fn project_name(root: &Path) -> Result<String> {
    let canonical = root.canonicalize()?;
    canonical
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .ok_or_else(|| Error::Config(format!("cannot name project at {}", root.display())))
}

fn java_files(root: &Path, project: &str) -> Result<Vec<SourceFile>> {
    let mut out = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| Error::Io(e.into()))?;
        let path = entry.path();
        if !entry.file_type().is_file() || path.extension().is_none_or(|e| e != "java") {
            continue;
        }
        let rel = path.strip_prefix(root).unwrap_or(path);
        out.push(SourceFile {
            project: project.to_string(),
            rel: normalize_path(&rel.to_string_lossy()),
            path: path.to_path_buf(),
        });
    }
    Ok(out)
}

/// Label lookup by root-relative path, `project/relative` path, or
/// canonical path.
struct LabelIndex<'a> {
    labels: &'a Labels,
    canonical: HashMap<PathBuf, &'a LabelRecord>,
}

impl<'a> LabelIndex<'a> {
    fn new(labels: &'a Labels, csv_path: &Path) -> Self {
        let base = csv_path.parent().unwrap_or(Path::new("."));
        let mut canonical = HashMap::new();
        for r in &labels.records {
            for candidate in [PathBuf::from(&r.path), base.join(&r.path)] {
                if let Ok(c) = candidate.canonicalize() {
                    canonical.entry(c).or_insert(r);
                }
            }
        }
        LabelIndex { labels, canonical }
    }

    fn find(&self, file: &SourceFile) -> Option<&'a LabelRecord> {
        self.labels
            .get(&file.rel)
            .or_else(|| self.labels.get(&format!("{}/{}", file.project, file.rel)))
            .or_else(|| file.path.canonicalize().ok().and_then(|c| self.canonical.get(&c).copied()))
    }
}

fn build_one(file: &SourceFile, config: &PipelineConfig, labels: &LabelIndex) -> std::result::Result<Built, Rejected> {
    let display = file.path.display().to_string();
    let reject = |reason: String| Rejected {
        path: display.clone(),
        reason,
    };
    let label = labels.find(file).ok_or_else(|| reject("no label".into()))?;
    let source = fs::read_to_string(&file.path).map_err(|e| reject(format!("unreadable: {e}")))?;
    let unit = parse_source(&source, &display).map_err(|e| reject(e.to_string()))?;
    if config.exclude_interfaces && unit.is_interface_only() {
        return Err(reject("interface-only file excluded".into()));
    }

    let id = format!("{}/{}", file.project, file.rel);
    let h = build_relsc_h(&unit);
    let graphs = config
        .variants
        .iter()
        .map(|v| {
            let mut g = match v {
                Variant::AstOnly => build_ast_only(&unit),
                Variant::RelscH => h.clone(),
                Variant::RelscM => build_relsc_m(&h, config.add_inverse).expect("input is relsc_h"),
            };
            g.id = id.clone();
            g
        })
        .collect();
    Ok(Built {
        id,
        project: file.project.clone(),
        provenance: display,
        raw_seconds: label.raw_seconds,
        graphs,
    })
}

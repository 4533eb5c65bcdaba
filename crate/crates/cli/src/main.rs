use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use javagraph::dataset::{
    self, layout, make_splits, read_graphs, write_splits_csv, DatasetManifest, PipelineConfig, Split,
};
use javagraph::graph::{EdgeType, ProgramGraph, Variant};
use javagraph::stats::corpus_stats;
use javagraph::taxonomy::categorize;
use javagraph::Error;

#[derive(Parser)]
#[command(name = "javagraph", version, about = "Build program-graph datasets from Java sources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a corpus and write graphs, manifest, splits and statistics.
    Build {
        /// Project root; repeat for several projects.
        #[arg(long = "input", required = true)]
        inputs: Vec<PathBuf>,
        /// CSV with header `path,seconds[,runs]`.
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        variant: VariantArg,
        #[arg(long)]
        out: PathBuf,
        /// Emit a reverse edge for every relational edge.
        #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = clap::ArgAction::Set)]
        add_inverse: bool,
        /// Skip files declaring only interfaces or annotation types.
        #[arg(long)]
        exclude_interfaces: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "dataset")]
        dataset_name: String,
        #[arg(long, value_parser = parse_ratios, default_value = "0.7,0.15,0.15")]
        ratios: [f64; 3],
        /// Bins of the target histogram in the statistics report.
        #[arg(long, default_value_t = 20)]
        target_bins: usize,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Recompute train/val/test assignments for built graphs.
    Split {
        #[arg(long, value_parser = parse_ratios, default_value = "0.7,0.15,0.15")]
        ratios: [f64; 3],
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory of `build`, or its `graphs/` folder.
        #[arg(long)]
        graphs: PathBuf,
        /// Where to write the CSV; defaults to `splits.csv` in the output
        /// directory.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute corpus statistics from built graphs.
    Stats {
        #[arg(long)]
        graphs: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        report: ReportFormat,
        #[arg(long, default_value_t = 20)]
        target_bins: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print one graph in human-readable form.
    Inspect {
        graph_id: String,
        #[arg(long)]
        graphs: PathBuf,
        #[arg(long, value_enum, default_value = "h")]
        variant: VariantArg,
    },
    /// Dump the syntax tree of one Java file.
    Parse {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Ast,
    H,
    M,
    All,
}

impl VariantArg {
    fn variants(self) -> Vec<Variant> {
        match self {
            VariantArg::Ast => vec![Variant::AstOnly],
            VariantArg::H => vec![Variant::RelscH],
            VariantArg::M => vec![Variant::RelscM],
            VariantArg::All => Variant::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

fn parse_ratios(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    let ratios: [f64; 3] = parts.try_into().map_err(|_| "expected three comma-separated ratios".to_string())?;
    if ratios.iter().any(|r| *r < 0.0) || (ratios.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err("ratios must be non-negative and sum to 1".into());
    }
    Ok(ratios)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::NoGraphs { .. }) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Build {
            inputs,
            labels,
            variant,
            out,
            add_inverse,
            exclude_interfaces,
            seed,
            dataset_name,
            ratios,
            target_bins,
            threads,
        } => {
            let config = PipelineConfig {
                inputs,
                labels,
                variants: variant.variants(),
                out,
                dataset_name,
                seed,
                ratios,
                add_inverse,
                exclude_interfaces,
                target_bins,
                threads,
            };
            let manifest = dataset::run_pipeline(&config)?;
            for w in &manifest.warnings {
                eprintln!("warning: {w}");
            }
            for r in &manifest.rejected {
                eprintln!("rejected: {}: {}", r.path, r.reason);
            }
            println!(
                "{} graphs, {} rejected, written to {}",
                manifest.graphs.len(),
                manifest.rejected.len(),
                config.out.display()
            );
            Ok(())
        }
        Command::Split {
            ratios,
            seed,
            graphs,
            output,
        } => {
            let root = layout::output_root(&graphs);
            let manifest = read_manifest(&root)?;
            let items: Vec<(String, String)> =
                manifest.graphs.iter().map(|g| (g.id.clone(), g.project.clone())).collect();
            let assignments = make_splits(&items, ratios, seed)?;
            let path = output.unwrap_or_else(|| root.join(layout::SPLITS));
            write_splits_csv(&assignments, std::fs::File::create(&path)?)?;
            let count = |s: Split| assignments.iter().filter(|a| a.split == s).count();
            println!(
                "train {} / val {} / test {} written to {}",
                count(Split::Train),
                count(Split::Val),
                count(Split::Test),
                path.display()
            );
            Ok(())
        }
        Command::Stats {
            graphs,
            report,
            target_bins,
            output,
        } => {
            let root = layout::output_root(&graphs);
            let dataset_name = read_manifest(&root)
                .ok()
                .and_then(|m| m.datasets.first().map(|d| d.name.clone()))
                .unwrap_or_else(|| "dataset".into());
            let all = load_all(&root)?;
            let stats = corpus_stats(&dataset_name, &all, target_bins)?;
            let mut buf = Vec::new();
            match report {
                ReportFormat::Csv => stats.write_csv(&mut buf)?,
                ReportFormat::Json => {
                    serde_json::to_writer_pretty(&mut buf, &stats)?;
                    buf.push(b'\n');
                }
            }
            match output {
                Some(p) => std::fs::write(p, buf)?,
                None => std::io::stdout().write_all(&buf)?,
            }
            Ok(())
        }
        Command::Inspect {
            graph_id,
            graphs,
            variant,
        } => {
            let root = layout::output_root(&graphs);
            let Some(&v) = variant.variants().first().filter(|_| !matches!(variant, VariantArg::All)) else {
                bail!("inspect needs one variant: ast, h or m");
            };
            let file = root.join(layout::graph_file(v));
            let g = read_graphs(&file)?
                .into_iter()
                .find(|g| g.id == graph_id)
                .with_context(|| format!("no graph `{graph_id}` in {}", file.display()))?;
            print!("{}", render(&g));
            Ok(())
        }
        Command::Parse { file, json } => {
            let source = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let unit = javagraph::frontend::parse_source(&source, &file.display().to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&unit.debug_json())?);
            } else {
                print!("{}", unit.pretty());
                for w in &unit.parse_warnings {
                    eprintln!("warning: {w}");
                }
            }
            Ok(())
        }
    }
}

fn read_manifest(root: &Path) -> anyhow::Result<DatasetManifest> {
    let path = root.join(layout::MANIFEST);
    DatasetManifest::read(&path).with_context(|| format!("reading {}", path.display()))
}

fn load_all(root: &Path) -> anyhow::Result<Vec<ProgramGraph>> {
    let mut all = Vec::new();
    for v in Variant::ALL {
        let file = root.join(layout::graph_file(v));
        if file.exists() {
            all.extend(read_graphs(&file)?);
        }
    }
    if all.is_empty() {
        bail!("no graph files under {}", root.join(layout::GRAPHS_DIR).display());
    }
    Ok(all)
}

fn render(g: &ProgramGraph) -> String {
    let mut out = format!(
        "{} ({})\nprovenance: {}\ntarget: {}\nnodes: {}  edges: {}\n",
        g.id,
        g.variant,
        g.provenance,
        g.target.map_or("null".to_string(), |t| format!("{t:.6}")),
        g.node_count(),
        g.edge_count()
    );
    out.push_str("edge types:");
    for t in EdgeType::ALL {
        let c = g.count_edges(t);
        if c > 0 {
            out.push_str(&format!(" {t}={c}"));
        }
    }
    out.push('\n');
    for n in &g.nodes {
        let outgoing: Vec<String> = g
            .edges
            .iter()
            .filter(|e| e.src == n.id)
            .map(|e| format!("{}->{}", e.edge_type, e.dst))
            .collect();
        out.push_str(&format!(
            "{:>5} {:<28} {:<26} {}\n",
            n.id,
            n.node_type.name(),
            categorize(n.node_type).name(),
            outgoing.join(" ")
        ));
    }
    for note in &g.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

//! Print per-type edge counts of the flow-augmented graph of a Java file.
//!
//! `cargo run -p javagraph --example edge_counts -- Foo.java`

use javagraph::graph::{build_relsc_h, EdgeType};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).ok_or("usage: edge_counts <file.java>")?;
    let source = std::fs::read_to_string(&path)?;
    let unit = javagraph::frontend::parse_source(&source, &path)?;
    let g = build_relsc_h(&unit);
    println!("{path}: {} nodes, {} edges", g.node_count(), g.edge_count());
    for t in EdgeType::ALL {
        println!("  {:<13} {}", t.name(), g.count_edges(t));
    }
    for note in &g.notes {
        println!("  note: {note}");
    }
    Ok(())
}

//! Conductance scoring of a clustering and the per-cluster summary table
//! (size, conductance, label totals).
//!
//! ```bash
//! cargo run -p citenet --example conductance_report
//! ```

use citenet::corpus::{load_corpus, CitationGraph, ClusterMethod, ClusterSet};
use citenet::metrics::{clustering_summary, conductance};

fn main() -> citenet::Result<()> {
    // Two triangles joined by one bridge edge: the classic well-separated
    // bipartition, phi = 1/7 per side.
    let g = CitationGraph::from_edges(
        6,
        vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
    );
    let phi = conductance(&g, &[0, 1, 2])?;
    println!("two-triangle bridge, one triangle: phi = {phi:.6} (= 1/7)");

    // A labeled corpus with the same shape, summarized per cluster.
    let dir = tempfile::tempdir().expect("tempdir");
    let pubs = dir.path().join("pubs.tsv");
    let edges = dir.path().join("edges.tsv");
    let taxonomy = dir.path().join("taxonomy.tsv");
    std::fs::write(
        &pubs,
        "pub_id\tdoi\tpub_type\tminor_codes\n\
         P0\t\tarticle\t1700;1702\n\
         P1\t\tarticle\t1700\n\
         P2\t\tarticle\t\n\
         P3\t\tarticle\t2613\n\
         P4\t\tarticle\t2613;1700\n\
         P5\t\tarticle\t2613\n",
    )
    .expect("write pubs");
    std::fs::write(&edges, "P0\tP1\nP1\tP2\nP0\tP2\nP3\tP4\nP4\tP5\nP3\tP5\nP2\tP3\n")
        .expect("write edges");
    std::fs::write(
        &taxonomy,
        "1700\tComputer Science(all)\tComputer Science\tPhysical Sciences\n\
         1702\tArtificial Intelligence\tComputer Science\tPhysical Sciences\n\
         2613\tStatistics and Probability\tMathematics\tPhysical Sciences\n",
    )
    .expect("write taxonomy");
    let (corpus, graph, _) = load_corpus(&pubs, &edges, &taxonomy)?;

    let mut cs = ClusterSet::new(ClusterMethod::Direct, graph.node_count());
    for v in 0..3 {
        cs.assign(v, 0);
    }
    for v in 3..6 {
        cs.assign(v, 1);
    }

    let summary = clustering_summary(&graph, &cs, &corpus)?;
    print!("\n{}", summary.to_csv_string());
    println!(
        "\nsize ratio {:.1} (within 10x: {}), median conductance {:.4}",
        summary.size_ratio, summary.size_ratio_within_10x, summary.median_conductance
    );
    Ok(())
}

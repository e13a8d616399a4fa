//! Load a small corpus from TSV files, export the citation graph in METIS
//! format for an external partitioner, and import a partition assignment.
//!
//! ```bash
//! cargo run -p citenet --example corpus_io
//! ```

use citenet::corpus::{export_metis, import_assignment, load_corpus, ClusterMethod};

fn main() -> citenet::Result<()> {
    let dir = tempfile::tempdir().expect("tempdir");

    let pubs = dir.path().join("pubs.tsv");
    let edges = dir.path().join("edges.tsv");
    let taxonomy = dir.path().join("taxonomy.tsv");
    std::fs::write(
        &pubs,
        "pub_id\tdoi\tpub_type\tminor_codes\n\
         W1\t10.1/w1\tarticle\t1700\n\
         W2\t10.1/w2\tarticle\t1702\n\
         W3\t\tproceedings\t1700;1702\n\
         R1\t\texternal-reference\t\n",
    )
    .expect("write pubs");
    std::fs::write(&edges, "W1\tR1\nW2\tR1\nW3\tW1\nW3\tW2\n").expect("write edges");
    std::fs::write(
        &taxonomy,
        "1700\tComputer Science(all)\tComputer Science\tPhysical Sciences\n\
         1702\tArtificial Intelligence\tComputer Science\tPhysical Sciences\n",
    )
    .expect("write taxonomy");

    let (corpus, graph, taxonomy) = load_corpus(&pubs, &edges, &taxonomy)?;
    println!(
        "loaded {} publications, {} directed edges ({} undirected), {} taxonomy entries",
        corpus.len(),
        graph.directed_edge_count(),
        graph.undirected_edge_count(),
        taxonomy.len()
    );

    // Indices are assigned in sorted pub_id order.
    for idx in 0..corpus.len() as u32 {
        let r = corpus.record(idx);
        println!("  [{idx}] {} ({})", r.pub_id, r.pub_type.as_str());
    }

    let metis = dir.path().join("graph.metis");
    export_metis(&graph, &metis)?;
    println!("\nMETIS export:\n{}", std::fs::read_to_string(&metis).expect("read metis"));

    // One cluster id per line, line k for node k. A real run would plug in
    // the external partitioner here.
    let assignment = dir.path().join("assignment.txt");
    std::fs::write(&assignment, "0\n0\n1\n1\n").expect("write assignment");
    let clusters = import_assignment(&graph, &assignment, ClusterMethod::Direct)?;
    for (cluster, members) in clusters.clusters() {
        let ids: Vec<&str> =
            members.iter().map(|&v| corpus.record(v).pub_id.as_str()).collect();
        println!("direct cluster {cluster}: {}", ids.join(", "));
    }
    Ok(())
}

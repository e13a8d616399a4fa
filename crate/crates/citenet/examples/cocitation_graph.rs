//! Build the Salton-normalized co-citation graph: citation counts, the
//! percentile filter, pair generation, and cosine normalization.
//!
//! ```bash
//! cargo run -p citenet --example cocitation_graph
//! ```

use citenet::cocitation::{citation_counts, generate_pairs, normalize_salton, percentile_filter};
use citenet::synth::{planted_partition_corpus, PlantedConfig};

fn main() -> citenet::Result<()> {
    // Two planted topics; the co-citation structure should separate them.
    let synth = planted_partition_corpus(&PlantedConfig {
        topics: 2,
        pubs_per_topic: 60,
        citers: 1500,
        p_within: 0.08,
        p_cross: 0.004,
        seed: 5,
    });
    let dir = tempfile::tempdir().expect("tempdir");
    let (pubs, edges, taxonomy) = synth.write_to_dir(dir.path())?;
    let (corpus, graph, _) = citenet::corpus::load_corpus(&pubs, &edges, &taxonomy)?;

    let counts = citation_counts(&graph);
    println!("total citations in corpus: {}", counts.total());

    let retained = percentile_filter(&counts, 0.9)?;
    println!("retained {} highly cited publications (90th percentile)", retained.len());

    let pairs = generate_pairs(&graph, &retained)?;
    println!(
        "{} unique co-cited pairs from {} co-citation events",
        pairs.len(),
        pairs.total_instances()
    );

    let cograph = normalize_salton(&pairs, &counts, retained)?;
    let mut edges: Vec<_> = cograph.edges().to_vec();
    edges.sort_by(|x, y| y.ncf.total_cmp(&x.ncf));
    println!("\nstrongest normalized co-citation edges:");
    for e in edges.iter().take(8) {
        println!(
            "  {} -- {}  raw={} ncf={:.4}",
            corpus.record(e.a).pub_id,
            corpus.record(e.b).pub_id,
            e.raw,
            e.ncf
        );
    }
    Ok(())
}

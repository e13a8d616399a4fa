//! Taxonomy reconciliation: label-share matrix, cross-clustering
//! intersection map, fractional top-area counts, nucleating pairs, and an
//! SVG heatmap rendering.
//!
//! ```bash
//! cargo run -p citenet --example reconcile_reports
//! ```

use citenet::cocitation::{CoCitationGraph, CoEdge};
use citenet::corpus::{load_corpus, ClusterMethod, ClusterSet};
use citenet::reconcile::{
    cross_map, fractional_top_area_counts, label_share_matrix, nucleating_pairs,
    write_nucleating_csv,
};
use citenet::render::heatmap_svg;

fn main() -> citenet::Result<()> {
    let dir = tempfile::tempdir().expect("tempdir");
    let pubs = dir.path().join("pubs.tsv");
    let edges = dir.path().join("edges.tsv");
    let taxonomy = dir.path().join("taxonomy.tsv");
    std::fs::write(
        &pubs,
        "pub_id\tdoi\tpub_type\tminor_codes\n\
         P0\t10.1/p0\tarticle\t1700\n\
         P1\t10.1/p1\tarticle\t1700;2800\n\
         P2\t\tarticle\t1700\n\
         P3\t\tarticle\t2800\n\
         P4\t\tarticle\t2800;3300\n\
         P5\t\tarticle\t3300\n",
    )
    .expect("write pubs");
    std::fs::write(&edges, "P0\tP1\nP2\tP3\n").expect("write edges");
    std::fs::write(
        &taxonomy,
        "1700\tComputer Science(all)\tComputer Science\tPhysical Sciences\n\
         2800\tNeuroscience(all)\tNeuroscience\tLife Sciences\n\
         3300\tSocial Sciences(all)\tSocial Sciences\tSocial Sciences\n",
    )
    .expect("write taxonomy");
    let (corpus, _, taxonomy) = load_corpus(&pubs, &edges, &taxonomy)?;

    // A co-citation clustering and a direct clustering over the same nodes.
    let mut cocit = ClusterSet::new(ClusterMethod::Cocitation, 6);
    for v in [0u32, 1, 2] {
        cocit.assign(v, 0);
    }
    for v in [3u32, 4, 5] {
        cocit.assign(v, 1);
    }
    let mut direct = ClusterSet::new(ClusterMethod::Direct, 6);
    for v in 0..4u32 {
        direct.assign(v, 10);
    }
    for v in 4..6u32 {
        direct.assign(v, 11);
    }

    let matrix = label_share_matrix(&cocit, &corpus, &taxonomy, 0.15)?;
    println!("label-share matrix (threshold 15%):\n{}", matrix.to_csv_string());

    let svg = heatmap_svg(
        "Label shares",
        &matrix.rows.iter().map(|(_, n)| n.clone()).collect::<Vec<_>>(),
        &matrix.clusters.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        &matrix.shares,
        1.0,
    );
    let svg_path = dir.path().join("heatmap.svg");
    std::fs::write(&svg_path, &svg).expect("write svg");
    println!("wrote {} ({} bytes)", svg_path.display(), svg.len());

    let m = cross_map(&cocit, &direct, 0.15)?;
    println!("\nintersection map (% of each co-citation cluster):\n{}", m.to_csv_string());

    let f = fractional_top_area_counts(&cocit, &corpus, &taxonomy);
    println!("fractional top-area counts:\n{}\n", serde_json::to_string_pretty(&f.to_json()).expect("json"));

    // Nucleating pairs need the co-citation edges.
    let cograph = CoCitationGraph::from_parts(
        6,
        (0..6).collect(),
        vec![
            CoEdge { a: 0, b: 1, raw: 9, ncf: 0.9 },
            CoEdge { a: 1, b: 2, raw: 4, ncf: 0.4 },
            CoEdge { a: 3, b: 4, raw: 7, ncf: 0.7 },
            CoEdge { a: 4, b: 5, raw: 2, ncf: 0.2 },
        ],
    );
    let pairs = nucleating_pairs(&cograph, &cocit);
    let mut csv = Vec::new();
    write_nucleating_csv(&pairs, &corpus, &mut csv).expect("write csv");
    println!("nucleating pairs:\n{}", String::from_utf8(csv).expect("utf-8"));
    Ok(())
}

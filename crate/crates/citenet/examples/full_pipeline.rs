//! The whole pipeline on a synthetic planted-topic corpus: ingest,
//! co-citation, variable-level clustering, agglomeration, conductance,
//! reconciliation, and the bundled report.
//!
//! ```bash
//! cargo run --release -p citenet --example full_pipeline
//! ```

use citenet::pipeline::{artifact, run_all, PipelineConfig};
use citenet::synth::{planted_partition_corpus, PlantedConfig};
use citenet::vlc::VlcParams;
use std::collections::BTreeMap;

fn main() -> citenet::Result<()> {
    let cfg_synth = PlantedConfig {
        topics: 4,
        pubs_per_topic: 120,
        citers: 4000,
        p_within: 0.1,
        p_cross: 0.0005,
        seed: 2024,
    };
    println!(
        "generating {} reference pubs in {} topics, {} citing documents...",
        cfg_synth.topics * cfg_synth.pubs_per_topic,
        cfg_synth.topics,
        cfg_synth.citers
    );
    let synth = planted_partition_corpus(&cfg_synth);
    println!("  {} directed citation edges", synth.directed_edges);

    let dir = tempfile::tempdir().expect("tempdir");
    let (pubs, edges, taxonomy) = synth.write_to_dir(dir.path())?;
    let cfg = PipelineConfig {
        pubs,
        edges,
        taxonomy,
        out: dir.path().join("out"),
        // bounds scaled to this corpus: ~48 retained nodes, topic-sized
        // clusters of 10-15
        vlc: VlcParams { mcs: 20, retain_below: 20, ..VlcParams::default() },
        min_input_size: 5,
        ..PipelineConfig::default()
    };

    run_all(&cfg)?;

    println!("\nartifacts in {}:", cfg.out.display());
    let mut names: Vec<String> = std::fs::read_dir(&cfg.out)
        .expect("read out dir")
        .map(|e| e.expect("dir entry").file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in names {
        let len = std::fs::metadata(cfg.out.join(&name)).expect("metadata").len();
        println!("  {name:<34} {len:>10} bytes");
    }

    // How well did the co-citation clustering recover the planted topics?
    let planted: BTreeMap<&str, usize> =
        synth.planted.iter().map(|(id, t)| (id.as_str(), *t)).collect();
    let clusters = std::fs::read_to_string(cfg.out.join(artifact::VLC_CLUSTERS)).expect("read");
    let mut per_cluster: BTreeMap<u32, BTreeMap<usize, usize>> = BTreeMap::new();
    for line in clusters.lines() {
        let (id, cluster) = line.split_once('\t').expect("two fields");
        let topics = per_cluster.entry(cluster.parse().expect("cluster id")).or_default();
        *topics.entry(planted[id]).or_insert(0) += 1;
    }
    println!("\nvariable-level clusters vs planted topics:");
    for (cluster, topics) in per_cluster {
        println!("  cluster {cluster}: {topics:?}");
    }
    Ok(())
}

//! Seeded synthetic corpora for fixtures and benchmarks. The pipeline itself
//! uses no randomness; these generators exist so tests, examples, and scale
//! runs can produce reproducible input files from a seed.

use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// splitmix64: tiny, fast, and stable across platforms and releases, so
/// fixtures never shift under dependency upgrades.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

/// Parameters for the planted-topic benchmark corpus: `topics` groups of
/// reference publications, plus a population of citing documents that cite
/// within their home topic with probability `p_within` and across topics
/// with probability `p_cross`.
#[derive(Debug, Clone)]
pub struct PlantedConfig {
    pub topics: usize,
    pub pubs_per_topic: usize,
    pub citers: usize,
    pub p_within: f64,
    pub p_cross: f64,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            topics: 5,
            pubs_per_topic: 500,
            citers: 20_000,
            p_within: 0.05,
            p_cross: 0.001,
            seed: 42,
        }
    }
}

/// A synthetic corpus in the flat-file formats, with the planted ground
/// truth for the reference publications.
#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub pubs_tsv: String,
    pub edges_tsv: String,
    pub taxonomy_tsv: String,
    /// (pub_id, planted topic) for every reference publication.
    pub planted: Vec<(String, usize)>,
    pub directed_edges: usize,
}

fn ref_id(topic: usize, i: usize) -> String {
    format!("R{topic:02}_{i:05}")
}

const TOP_AREAS: [&str; 4] =
    ["Physical Sciences", "Life Sciences", "Health Sciences", "Social Sciences"];

/// Generates the planted-topic corpus. Reference publications carry the
/// minor code of their topic; citing documents carry their home topic code.
pub fn planted_partition_corpus(cfg: &PlantedConfig) -> SynthCorpus {
    assert!(cfg.topics >= 1 && cfg.topics <= 99, "topics out of supported range");
    let mut rng = SplitMix64::new(cfg.seed);

    let mut taxonomy = String::new();
    for t in 0..cfg.topics {
        let code = 1000 + t;
        let _ = writeln!(
            taxonomy,
            "{code}\tTopic {t}\tMajor Area {}\t{}",
            t % 7,
            TOP_AREAS[t % 4]
        );
    }

    let mut pubs = String::from("pub_id\tdoi\tpub_type\tminor_codes\n");
    let mut planted = Vec::with_capacity(cfg.topics * cfg.pubs_per_topic);
    for t in 0..cfg.topics {
        for i in 0..cfg.pubs_per_topic {
            let id = ref_id(t, i);
            let _ = writeln!(pubs, "{id}\t10.9999/{id}\tarticle\t{}", 1000 + t);
            planted.push((id, t));
        }
    }
    for j in 0..cfg.citers {
        let home = j % cfg.topics;
        let _ = writeln!(pubs, "C{j:06}\t\tproceedings\t{}", 1000 + home);
    }

    let mut edges = String::new();
    let mut edge_count = 0usize;
    for j in 0..cfg.citers {
        let home = j % cfg.topics;
        let citer = format!("C{j:06}");
        for t in 0..cfg.topics {
            let p = if t == home { cfg.p_within } else { cfg.p_cross };
            for i in 0..cfg.pubs_per_topic {
                if rng.bernoulli(p) {
                    let _ = writeln!(edges, "{citer}\t{}", ref_id(t, i));
                    edge_count += 1;
                }
            }
        }
    }

    SynthCorpus {
        pubs_tsv: pubs,
        edges_tsv: edges,
        taxonomy_tsv: taxonomy,
        planted,
        directed_edges: edge_count,
    }
}

impl SynthCorpus {
    /// Writes pubs.tsv, edges.tsv, taxonomy.tsv into `dir`.
    pub fn write_to_dir(&self, dir: &Path) -> Result<(PathBuf, PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let pubs = dir.join("pubs.tsv");
        let edges = dir.join("edges.tsv");
        let taxonomy = dir.join("taxonomy.tsv");
        std::fs::write(&pubs, &self.pubs_tsv).map_err(|e| Error::io(&pubs, e))?;
        std::fs::write(&edges, &self.edges_tsv).map_err(|e| Error::io(&edges, e))?;
        std::fs::write(&taxonomy, &self.taxonomy_tsv).map_err(|e| Error::io(&taxonomy, e))?;
        Ok((pubs, edges, taxonomy))
    }
}

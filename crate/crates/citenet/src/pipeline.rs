//! Pipeline orchestration: each stage reads the raw corpus plus the previous
//! stage's on-disk artifacts, computes, and persists its own artifacts in the
//! output directory. The effective configuration is echoed to `config.json`,
//! and re-running any stage from that echo reproduces the same bytes.

use crate::agglomerate::{merge_rounds, ClusterGraph};
use crate::cocitation::{
    citation_counts, generate_pairs_with, normalize_salton, percentile_filter, CoCitationGraph,
    PairGenConfig,
};
use crate::corpus::{
    self, CitationGraph, ClusterMethod, ClusterSet, Corpus, LabelTaxonomy,
};
use crate::error::{Error, Result};
use crate::metrics::clustering_summary;
use crate::reconcile::{
    corpus_label_percentages, cross_map, dominant_minor_areas, fractional_top_area_counts,
    label_share_matrix, nucleating_pairs, write_dominant_csv, write_label_percentages_csv,
    write_nucleating_csv,
};
use crate::render::{dotplot_svg, heatmap_svg};
use crate::vlc::{run_vlc, VlcParams};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

/// Artifact file names within the output directory.
pub mod artifact {
    pub const CONFIG: &str = "config.json";
    pub const METIS_GRAPH: &str = "metis.graph";
    pub const INGEST_SUMMARY: &str = "ingest_summary.json";
    pub const COCITE_PAIRS: &str = "cocitation_pairs.tsv";
    pub const COCITE_RETAINED: &str = "cocitation_retained.tsv";
    pub const COCITE_SUMMARY: &str = "cocite_summary.json";
    pub const VLC_CLUSTERS: &str = "vlc_clusters.tsv";
    pub const VLC_TRACE: &str = "vlc_trace.jsonl";
    pub const VLC_SUMMARY: &str = "vlc_summary.json";
    pub const AGGLO_CLUSTERS: &str = "agglomerated_clusters.tsv";
    pub const AGGLO_LOG: &str = "agglomeration_log.jsonl";
    pub const CONDUCTANCE_COCIT: &str = "conductance_cocitation.csv";
    pub const CONDUCTANCE_COCIT_STATS: &str = "conductance_cocitation_stats.json";
    pub const CONDUCTANCE_DIRECT: &str = "conductance_direct.csv";
    pub const CONDUCTANCE_DIRECT_STATS: &str = "conductance_direct_stats.json";
    pub const FRACTIONAL: &str = "fractional_top_areas.json";
    pub const NUCLEATING: &str = "nucleating_pairs.csv";
    pub const NUCLEATING_RECONCILIATION: &str = "nucleating_reconciliation.csv";
    pub const INTERSECTION_CSV: &str = "intersection_map.csv";
    pub const INTERSECTION_SVG: &str = "intersection_map.svg";
    pub const LABEL_PERCENTAGES: &str = "label_percentages.csv";

    pub fn heatmap_csv(method: &str, threshold: f64) -> String {
        format!("heatmap_{method}_{:02}.csv", (threshold * 100.0).round() as u32)
    }

    pub fn heatmap_svg(method: &str, threshold: f64) -> String {
        format!("heatmap_{method}_{:02}.svg", (threshold * 100.0).round() as u32)
    }
}

/// Reproducible configuration for the whole pipeline. Defaults match the
/// documented protocol: 90th-percentile citation filter, the biphasic
/// threshold schedule with mcs 200, a 600-round agglomeration budget,
/// 10-node agglomeration inputs, and 15%/10% reconciliation thresholds.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub pubs: PathBuf,
    pub edges: PathBuf,
    pub taxonomy: PathBuf,
    pub out: PathBuf,
    /// Citation-count quantile for the co-citation filter.
    pub percentile: f64,
    pub vlc: VlcParams,
    /// Agglomeration round budget.
    pub rounds: usize,
    /// Minimum cluster size used as agglomeration input.
    pub min_input_size: usize,
    /// Primary label-share inclusion threshold.
    pub share_threshold: f64,
    /// Secondary (lower) label-share threshold for the second heatmap.
    pub share_threshold_low: f64,
    /// Minimum cross-clustering cell percentage (as a fraction).
    pub cross_threshold: f64,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    /// Raw pairs buffered in memory before spilling sorted runs to disk.
    pub pair_mem_cap: usize,
    /// Optional external-partitioner assignment for the direct clustering.
    pub assignment: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            pubs: PathBuf::new(),
            edges: PathBuf::new(),
            taxonomy: PathBuf::new(),
            out: PathBuf::new(),
            percentile: 0.9,
            vlc: VlcParams::default(),
            rounds: 600,
            min_input_size: 10,
            share_threshold: 0.15,
            share_threshold_low: 0.10,
            cross_threshold: 0.15,
            threads: 0,
            pair_mem_cap: 100_000_000,
            assignment: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, path) in [
            ("pubs", &self.pubs),
            ("edges", &self.edges),
            ("taxonomy", &self.taxonomy),
            ("out", &self.out),
        ] {
            if path.as_os_str().is_empty() {
                return Err(Error::ConfigViolation(format!("--{name} is required")));
            }
        }
        if !(0.0..=1.0).contains(&self.percentile) {
            return Err(Error::ConfigViolation(format!(
                "percentile {} outside [0, 1]",
                self.percentile
            )));
        }
        for (name, t) in [
            ("threshold", self.share_threshold),
            ("share_threshold_low", self.share_threshold_low),
        ] {
            if !(t > 0.0 && t <= 1.0) {
                return Err(Error::ConfigViolation(format!("{name} {t} outside (0, 1]")));
            }
        }
        if !(0.0..=1.0).contains(&self.cross_threshold) {
            return Err(Error::ConfigViolation(format!(
                "cross_threshold {} outside [0, 1]",
                self.cross_threshold
            )));
        }
        if self.pair_mem_cap == 0 {
            return Err(Error::ConfigViolation("pair_mem_cap must be positive".into()));
        }
        self.vlc
            .validate()
            .map_err(|e| Error::ConfigViolation(e.to_string()))
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::ConfigViolation(format!("bad config file {}: {e}", path.display())))
    }

    fn out_path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}

fn ensure_out(cfg: &PipelineConfig) -> Result<()> {
    std::fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))
}

fn echo_config(cfg: &PipelineConfig) -> Result<()> {
    let path = cfg.out_path(artifact::CONFIG);
    let mut text = serde_json::to_string_pretty(cfg).expect("config serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))
}

fn require(path: PathBuf) -> Result<PathBuf> {
    if path.is_file() {
        Ok(path)
    } else {
        Err(Error::MissingArtifact { path })
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("json serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_string(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn load_inputs(cfg: &PipelineConfig) -> Result<(Corpus, CitationGraph, LabelTaxonomy)> {
    corpus::load_corpus(&cfg.pubs, &cfg.edges, &cfg.taxonomy)
}

fn thread_pool(cfg: &PipelineConfig) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::ConfigViolation(format!("cannot build thread pool: {e}")))
}

/// Writes `pub_id<TAB>cluster_id` for every assigned node, in index order.
fn write_clusters_tsv(cs: &ClusterSet, corpus: &Corpus, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for (node, cluster) in cs.iter_assigned() {
        writeln!(w, "{}\t{}", corpus.record(node).pub_id, cluster)
            .map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn read_clusters_tsv(corpus: &Corpus, path: &Path, method: ClusterMethod) -> Result<ClusterSet> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut cs = ClusterSet::new(method, corpus.len());
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.is_empty() {
            continue;
        }
        let mut it = line.split('\t');
        let (id, cluster) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(Error::parse(path, lineno, "expected 2 tab-separated fields")),
        };
        let node = corpus.index_of(id).ok_or_else(|| Error::UnknownPubId {
            pub_id: id.to_string(),
            path: path.to_path_buf(),
            line: lineno,
        })?;
        let cluster: u32 = cluster
            .parse()
            .map_err(|_| Error::parse(path, lineno, "non-integer cluster id"))?;
        cs.assign(node, cluster);
    }
    Ok(cs)
}

fn read_cocitation_graph(cfg: &PipelineConfig, corpus: &Corpus) -> Result<CoCitationGraph> {
    let pairs = require(cfg.out_path(artifact::COCITE_PAIRS))?;
    let retained = require(cfg.out_path(artifact::COCITE_RETAINED))?;
    CoCitationGraph::read_dump(corpus, &pairs, &retained)
}

/// Loads and validates the corpus, then exports the undirected citation
/// graph in METIS format for the external partitioner.
pub fn run_ingest(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    ensure_out(cfg)?;
    echo_config(cfg)?;
    let (corpus, graph, taxonomy) = load_inputs(cfg)?;
    corpus::export_metis(&graph, &cfg.out_path(artifact::METIS_GRAPH))?;
    let external = corpus
        .records()
        .iter()
        .filter(|r| r.pub_type == corpus::PubType::ExternalReference)
        .count();
    write_json(
        &cfg.out_path(artifact::INGEST_SUMMARY),
        &serde_json::json!({
            "publications": corpus.len(),
            "seed_publications": corpus.len() - external,
            "external_references": external,
            "directed_edges": graph.directed_edge_count(),
            "undirected_edges": graph.undirected_edge_count(),
            "taxonomy_entries": taxonomy.len(),
        }),
    )
}

/// Citation counts, percentile filter, pair generation, and Salton
/// normalization; persists the pair dump and retained list.
pub fn run_cocite(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    ensure_out(cfg)?;
    echo_config(cfg)?;
    let (corpus, graph, _) = load_inputs(cfg)?;
    let counts = citation_counts(&graph);
    let pool = thread_pool(cfg)?;
    let cograph = pool.install(|| -> Result<CoCitationGraph> {
        let retained = percentile_filter(&counts, cfg.percentile)?;
        let pairs = generate_pairs_with(
            &graph,
            &retained,
            &PairGenConfig {
                mem_cap_pairs: cfg.pair_mem_cap,
                spill_dir: Some(cfg.out.clone()),
            },
        )?;
        normalize_salton(&pairs, &counts, retained)
    })?;

    cograph.write_pair_dump(&corpus, &cfg.out_path(artifact::COCITE_PAIRS))?;
    cograph.write_retained(&corpus, &cfg.out_path(artifact::COCITE_RETAINED))?;
    let threshold = cograph.nodes().iter().map(|&v| counts.get(v)).min().unwrap_or(0);
    write_json(
        &cfg.out_path(artifact::COCITE_SUMMARY),
        &serde_json::json!({
            "percentile": cfg.percentile,
            "citation_count_threshold": threshold,
            "retained_nodes": cograph.node_count(),
            "unique_pairs": cograph.edge_count(),
        }),
    )
}

/// Variable-level clustering over the persisted co-citation graph.
pub fn run_vlc_stage(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    ensure_out(cfg)?;
    echo_config(cfg)?;
    let (corpus, _, _) = load_inputs(cfg)?;
    let cograph = read_cocitation_graph(cfg, &corpus)?;
    let pool = thread_pool(cfg)?;
    let res = pool.install(|| run_vlc(&cograph, &cfg.vlc))?;
    write_clusters_tsv(&res.clusters, &corpus, &cfg.out_path(artifact::VLC_CLUSTERS))?;
    write_string(&cfg.out_path(artifact::VLC_TRACE), &res.trace_jsonl())?;
    let clusters = res.clusters.clusters();
    let below_boundary =
        clusters.values().filter(|m| m.len() < cfg.vlc.retain_below).count();
    write_json(
        &cfg.out_path(artifact::VLC_SUMMARY),
        &serde_json::json!({
            "clusters": clusters.len(),
            "clusters_below_retain_boundary": below_boundary,
            "retain_boundary": cfg.vlc.retain_below,
            "retained_nodes": res.retained_nodes,
            "dropped_small_nodes": res.dropped_small_nodes,
            "dropped_oversized_nodes": res.dropped_oversized_nodes,
            "rounds_run": res.trace.len(),
        }),
    )
}

/// Agglomerative merging of the variable-level clusters.
pub fn run_agglomerate_stage(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    ensure_out(cfg)?;
    echo_config(cfg)?;
    let (corpus, _, _) = load_inputs(cfg)?;
    let cograph = read_cocitation_graph(cfg, &corpus)?;
    let clusters_path = require(cfg.out_path(artifact::VLC_CLUSTERS))?;
    let vlc_clusters = read_clusters_tsv(&corpus, &clusters_path, ClusterMethod::Cocitation)?;
    let cg = ClusterGraph::build(&cograph, &vlc_clusters, cfg.min_input_size);
    let res = merge_rounds(&cg, cfg.rounds)?;
    write_clusters_tsv(&res.clusters, &corpus, &cfg.out_path(artifact::AGGLO_CLUSTERS))?;
    write_string(&cfg.out_path(artifact::AGGLO_LOG), &res.merges_jsonl())
}

fn conductance_outputs(
    graph: &CitationGraph,
    corpus: &Corpus,
    cs: &ClusterSet,
    csv_path: &Path,
    stats_path: &Path,
) -> Result<()> {
    if cs.assigned_count() == 0 {
        write_string(
            csv_path,
            "cluster,publications,conductance,total_labels,unique_labels\n",
        )?;
        return write_json(stats_path, &serde_json::json!({ "clusters": 0 }));
    }
    let summary = clustering_summary(graph, cs, corpus)?;
    let mut buf = Vec::new();
    summary.write_csv(&mut buf).expect("vec write");
    write_string(csv_path, &String::from_utf8(buf).expect("csv utf-8"))?;
    write_json(stats_path, &summary.stats_json())
}

/// Conductance summary tables for the agglomerated co-citation clustering
/// and, when an assignment file is configured, the direct clustering.
pub fn run_conductance_stage(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    ensure_out(cfg)?;
    echo_config(cfg)?;
    let (corpus, graph, _) = load_inputs(cfg)?;

    let agglo_path = require(cfg.out_path(artifact::AGGLO_CLUSTERS))?;
    let cocit = read_clusters_tsv(&corpus, &agglo_path, ClusterMethod::Cocitation)?;
    conductance_outputs(
        &graph,
        &corpus,
        &cocit,
        &cfg.out_path(artifact::CONDUCTANCE_COCIT),
        &cfg.out_path(artifact::CONDUCTANCE_COCIT_STATS),
    )?;

    if let Some(assignment) = &cfg.assignment {
        let direct = corpus::import_assignment(&graph, assignment, ClusterMethod::Direct)?;
        conductance_outputs(
            &graph,
            &corpus,
            &direct,
            &cfg.out_path(artifact::CONDUCTANCE_DIRECT),
            &cfg.out_path(artifact::CONDUCTANCE_DIRECT_STATS),
        )?;
    }
    Ok(())
}

fn heatmap_outputs(
    cfg: &PipelineConfig,
    cs: &ClusterSet,
    corpus: &Corpus,
    taxonomy: &LabelTaxonomy,
    method: &str,
    threshold: f64,
) -> Result<()> {
    let matrix = label_share_matrix(cs, corpus, taxonomy, threshold)?;
    write_string(
        &cfg.out_path(&artifact::heatmap_csv(method, threshold)),
        &matrix.to_csv_string(),
    )?;
    let row_labels: Vec<String> = matrix.rows.iter().map(|(_, name)| name.clone()).collect();
    let col_labels: Vec<String> = matrix.clusters.iter().map(|c| c.to_string()).collect();
    let title = format!(
        "Label shares ({method} clustering, threshold {:.0}%)",
        threshold * 100.0
    );
    let svg = heatmap_svg(&title, &row_labels, &col_labels, &matrix.shares, 1.0);
    write_string(&cfg.out_path(&artifact::heatmap_svg(method, threshold)), &svg)
}

/// Taxonomy reconciliation artifacts: heatmaps at both thresholds,
/// fractional top-area counts, nucleating pairs, and (with an assignment)
/// the direct-clustering heatmap and the intersection map.
pub fn run_reconcile_stage(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    ensure_out(cfg)?;
    echo_config(cfg)?;
    let (corpus, graph, taxonomy) = load_inputs(cfg)?;
    let cograph = read_cocitation_graph(cfg, &corpus)?;
    let agglo_path = require(cfg.out_path(artifact::AGGLO_CLUSTERS))?;
    let cocit = read_clusters_tsv(&corpus, &agglo_path, ClusterMethod::Cocitation)?;

    heatmap_outputs(cfg, &cocit, &corpus, &taxonomy, "cocitation", cfg.share_threshold)?;
    heatmap_outputs(cfg, &cocit, &corpus, &taxonomy, "cocitation", cfg.share_threshold_low)?;

    let fractional = fractional_top_area_counts(&cocit, &corpus, &taxonomy);
    write_json(&cfg.out_path(artifact::FRACTIONAL), &fractional.to_json())?;

    let pairs = nucleating_pairs(&cograph, &cocit);
    let mut buf = Vec::new();
    write_nucleating_csv(&pairs, &corpus, &mut buf).expect("vec write");
    write_string(
        &cfg.out_path(artifact::NUCLEATING),
        &String::from_utf8(buf).expect("csv utf-8"),
    )?;

    let dominant = dominant_minor_areas(&cocit, &corpus, &taxonomy);
    let mut buf = Vec::new();
    write_dominant_csv(&dominant, &mut buf).expect("vec write");
    write_string(
        &cfg.out_path(artifact::NUCLEATING_RECONCILIATION),
        &String::from_utf8(buf).expect("csv utf-8"),
    )?;

    if let Some(assignment) = &cfg.assignment {
        let direct = corpus::import_assignment(&graph, assignment, ClusterMethod::Direct)?;
        heatmap_outputs(cfg, &direct, &corpus, &taxonomy, "direct", cfg.share_threshold)?;
        if cocit.assigned_count() == 0 {
            log::warn!("no co-citation clusters; intersection map skipped");
        } else {
            let m = cross_map(&cocit, &direct, cfg.cross_threshold)?;
            write_string(&cfg.out_path(artifact::INTERSECTION_CSV), &m.to_csv_string())?;
            let rows: Vec<String> = m.rows.iter().map(|c| c.to_string()).collect();
            let cols: Vec<String> = m.cols.iter().map(|c| c.to_string()).collect();
            let svg = dotplot_svg(
                "Co-citation vs direct clustering intersections",
                &rows,
                &cols,
                &m.cells,
            );
            write_string(&cfg.out_path(artifact::INTERSECTION_SVG), &svg)?;
        }
    }
    Ok(())
}

/// Bundles the summary tables and matrices: conductance tables, heatmaps,
/// fractional counts, nucleating pairs, and the corpus label-percentage
/// table.
pub fn run_report(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    require(cfg.out_path(artifact::COCITE_PAIRS))?;
    require(cfg.out_path(artifact::VLC_CLUSTERS))?;
    require(cfg.out_path(artifact::AGGLO_CLUSTERS))?;
    run_conductance_stage(cfg)?;
    run_reconcile_stage(cfg)?;
    let (corpus, _, taxonomy) = load_inputs(cfg)?;
    let rows = corpus_label_percentages(&corpus, &taxonomy);
    let mut buf = Vec::new();
    write_label_percentages_csv(&rows, &mut buf).expect("vec write");
    write_string(
        &cfg.out_path(artifact::LABEL_PERCENTAGES),
        &String::from_utf8(buf).expect("csv utf-8"),
    )
}

/// Runs every stage in order, exactly as the CLI subcommands would.
pub fn run_all(cfg: &PipelineConfig) -> Result<()> {
    run_ingest(cfg)?;
    run_cocite(cfg)?;
    run_vlc_stage(cfg)?;
    run_agglomerate_stage(cfg)?;
    run_conductance_stage(cfg)?;
    run_reconcile_stage(cfg)?;
    run_report(cfg)
}

//! Thin subcommand CLI over the pipeline stages. All logic lives in the
//! library; this binary only resolves configuration and maps errors to exit
//! codes (2: missing upstream artifact, 3: config violation, 1: other).

use citenet::pipeline::{self, PipelineConfig};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "citenet",
    version,
    about = "Citation-network clustering pipeline: ingest, co-citation, variable-level \
             clustering, agglomeration, conductance, and taxonomy reconciliation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load and validate the corpus; export the METIS graph.
    Ingest(StageArgs),
    /// Build the Salton-normalized co-citation graph.
    Cocite(StageArgs),
    /// Variable-level clustering of the co-citation graph.
    Vlc(StageArgs),
    /// Agglomerative merging of the variable-level clusters.
    Agglomerate(StageArgs),
    /// Conductance summary tables.
    Conductance(StageArgs),
    /// Taxonomy reconciliation: heatmaps, intersections, nucleating pairs.
    Reconcile(StageArgs),
    /// Bundle all summary tables and matrices.
    Report(StageArgs),
}

#[derive(Args)]
struct StageArgs {
    /// JSON config file; fields present in the file override flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Publications TSV (pub_id, doi, pub_type, minor_codes).
    #[arg(long)]
    pubs: Option<PathBuf>,
    /// Citation edges TSV (citing_pub_id, cited_pub_id).
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Taxonomy TSV (minor_code, minor_name, major_area, top_area).
    #[arg(long)]
    taxonomy: Option<PathBuf>,
    /// Output directory for stage artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Citation-count quantile for the co-citation filter.
    #[arg(long)]
    percentile: Option<f64>,
    /// Maximum cluster size for variable-level clustering.
    #[arg(long)]
    mcs: Option<usize>,
    /// Starting quantile of the threshold schedule.
    #[arg(long)]
    t0: Option<f64>,
    /// Final quantile applied after the schedule.
    #[arg(long)]
    final_t: Option<f64>,
    /// Agglomeration round budget.
    #[arg(long)]
    rounds: Option<usize>,
    /// Minimum cluster size used as agglomeration input.
    #[arg(long)]
    min_input_size: Option<usize>,
    /// Label-share and intersection inclusion threshold (fraction).
    #[arg(long)]
    threshold: Option<f64>,
    /// Worker threads (0 = auto).
    #[arg(long)]
    threads: Option<usize>,
    /// External-partitioner assignment file for the direct clustering.
    #[arg(long)]
    assignment: Option<PathBuf>,
}

impl StageArgs {
    fn resolve(self) -> citenet::Result<PipelineConfig> {
        let mut cfg = PipelineConfig::default();
        self.apply_flags(&mut cfg);
        if let Some(config_path) = &self.config {
            let file_cfg = PipelineConfig::from_json_file(config_path)?;
            self.warn_conflicts(&cfg, &file_cfg);
            cfg = file_cfg;
        }
        Ok(cfg)
    }

    fn apply_flags(&self, cfg: &mut PipelineConfig) {
        if let Some(p) = &self.pubs {
            cfg.pubs = p.clone();
        }
        if let Some(p) = &self.edges {
            cfg.edges = p.clone();
        }
        if let Some(p) = &self.taxonomy {
            cfg.taxonomy = p.clone();
        }
        if let Some(p) = &self.out {
            cfg.out = p.clone();
        }
        if let Some(v) = self.percentile {
            cfg.percentile = v;
        }
        if let Some(v) = self.mcs {
            cfg.vlc.mcs = v;
            cfg.vlc.retain_below = cfg.vlc.retain_below.min(v);
        }
        if let Some(v) = self.t0 {
            cfg.vlc.t0 = v;
        }
        if let Some(v) = self.final_t {
            cfg.vlc.final_t = v;
        }
        if let Some(v) = self.rounds {
            cfg.rounds = v;
        }
        if let Some(v) = self.min_input_size {
            cfg.min_input_size = v;
        }
        if let Some(v) = self.threshold {
            cfg.share_threshold = v;
            cfg.cross_threshold = v;
        }
        if let Some(v) = self.threads {
            cfg.threads = v;
        }
        if let Some(p) = &self.assignment {
            cfg.assignment = Some(p.clone());
        }
    }

    /// The config file wins over flags; conflicts are echoed to stderr.
    fn warn_conflicts(&self, from_flags: &PipelineConfig, from_file: &PipelineConfig) {
        let mut conflicts = Vec::new();
        if self.pubs.is_some() && from_flags.pubs != from_file.pubs {
            conflicts.push("pubs");
        }
        if self.edges.is_some() && from_flags.edges != from_file.edges {
            conflicts.push("edges");
        }
        if self.taxonomy.is_some() && from_flags.taxonomy != from_file.taxonomy {
            conflicts.push("taxonomy");
        }
        if self.out.is_some() && from_flags.out != from_file.out {
            conflicts.push("out");
        }
        if self.percentile.is_some() && from_flags.percentile != from_file.percentile {
            conflicts.push("percentile");
        }
        if self.mcs.is_some() && from_flags.vlc.mcs != from_file.vlc.mcs {
            conflicts.push("mcs");
        }
        if self.t0.is_some() && from_flags.vlc.t0 != from_file.vlc.t0 {
            conflicts.push("t0");
        }
        if self.final_t.is_some() && from_flags.vlc.final_t != from_file.vlc.final_t {
            conflicts.push("final-t");
        }
        if self.rounds.is_some() && from_flags.rounds != from_file.rounds {
            conflicts.push("rounds");
        }
        if self.min_input_size.is_some() && from_flags.min_input_size != from_file.min_input_size
        {
            conflicts.push("min-input-size");
        }
        if self.threshold.is_some() && from_flags.share_threshold != from_file.share_threshold {
            conflicts.push("threshold");
        }
        if self.threads.is_some() && from_flags.threads != from_file.threads {
            conflicts.push("threads");
        }
        if self.assignment.is_some() && from_flags.assignment != from_file.assignment {
            conflicts.push("assignment");
        }
        for name in conflicts {
            eprintln!("warning: --{name} overridden by the config file");
        }
    }
}

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    let (args, stage): (StageArgs, fn(&PipelineConfig) -> citenet::Result<()>) = match cli.cmd {
        Cmd::Ingest(a) => (a, pipeline::run_ingest),
        Cmd::Cocite(a) => (a, pipeline::run_cocite),
        Cmd::Vlc(a) => (a, pipeline::run_vlc_stage),
        Cmd::Agglomerate(a) => (a, pipeline::run_agglomerate_stage),
        Cmd::Conductance(a) => (a, pipeline::run_conductance_stage),
        Cmd::Reconcile(a) => (a, pipeline::run_reconcile_stage),
        Cmd::Report(a) => (a, pipeline::run_report),
    };
    let result = args.resolve().and_then(|cfg| stage(&cfg));
    if let Err(e) = result {
        let code = e.exit_code();
        let mut payload = serde_json::json!({ "error": e.to_string(), "exit_code": code });
        if let citenet::Error::MissingArtifact { path } = &e {
            payload["missing_path"] = serde_json::json!(path.display().to_string());
        }
        eprintln!("{payload}");
        std::process::exit(code);
    }
}

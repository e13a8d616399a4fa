//! Clustering diagnostics on the citation graph: conductance scoring and
//! per-cluster summary tables.
//!
//! Conductance of a node set S is `|boundary(S)| / min(vol(S), 2m - vol(S))`
//! over the undirected view, where the boundary counts edges with exactly one
//! endpoint in S, vol sums degrees over S, and m is the undirected edge
//! count. Lower is better.

use crate::corpus::{CitationGraph, ClusterSet, Corpus, MinorCode};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::io::Write;

/// Conductance of a proper, non-empty node subset.
pub fn conductance(g: &CitationGraph, members: &[u32]) -> Result<f64> {
    if members.is_empty() {
        return Err(Error::ConductanceUndefined("empty member set".into()));
    }
    let mut mask = vec![false; g.node_count()];
    for &v in members {
        mask[v as usize] = true;
    }
    let mut boundary = 0u64;
    let mut vol = 0u64;
    for v in 0..g.node_count() as u32 {
        if !mask[v as usize] {
            continue;
        }
        vol += g.degree(v) as u64;
        boundary += g.und_neighbors(v).iter().filter(|&&u| !mask[u as usize]).count() as u64;
    }
    let two_m = 2 * g.undirected_edge_count() as u64;
    let denom = vol.min(two_m - vol);
    if denom == 0 {
        return Err(Error::ConductanceUndefined(if vol == 0 {
            "member set has zero volume".into()
        } else {
            "member set covers the whole graph volume".into()
        }));
    }
    Ok(boundary as f64 / denom as f64)
}

#[derive(Debug, Clone)]
pub struct ClusterConductance {
    pub cluster: u32,
    pub size: usize,
    pub phi: f64,
}

/// Per-cluster conductance with distribution statistics.
#[derive(Debug, Clone)]
pub struct ConductanceReport {
    pub per_cluster: Vec<ClusterConductance>,
    pub median_phi: f64,
    pub min_phi: f64,
    pub max_phi: f64,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Boundary and volume of every cluster in one pass over the edges.
fn cluster_cut_volumes(
    g: &CitationGraph,
    cs: &ClusterSet,
) -> Result<BTreeMap<u32, (usize, u64, u64)>> {
    if cs.universe() != g.node_count() {
        return Err(Error::InvalidParams(format!(
            "cluster set universe {} does not match graph size {}",
            cs.universe(),
            g.node_count()
        )));
    }
    // cluster -> (size, vol, boundary)
    let mut acc: BTreeMap<u32, (usize, u64, u64)> = BTreeMap::new();
    for v in 0..g.node_count() as u32 {
        if let Some(c) = cs.get(v) {
            let entry = acc.entry(c).or_insert((0, 0, 0));
            entry.0 += 1;
            entry.1 += g.degree(v) as u64;
        }
    }
    for v in 0..g.node_count() as u32 {
        let cv = cs.get(v);
        for &u in g.und_neighbors(v) {
            if v < u {
                let cu = cs.get(u);
                if cv != cu {
                    if let Some(c) = cv {
                        acc.get_mut(&c).unwrap().2 += 1;
                    }
                    if let Some(c) = cu {
                        acc.get_mut(&c).unwrap().2 += 1;
                    }
                }
            }
        }
    }
    Ok(acc)
}

pub fn conductance_report(g: &CitationGraph, cs: &ClusterSet) -> Result<ConductanceReport> {
    let acc = cluster_cut_volumes(g, cs)?;
    if acc.is_empty() {
        return Err(Error::ConductanceUndefined("no clusters assigned".into()));
    }
    let two_m = 2 * g.undirected_edge_count() as u64;
    let mut per_cluster = Vec::with_capacity(acc.len());
    for (cluster, (size, vol, boundary)) in acc {
        let denom = vol.min(two_m - vol);
        if denom == 0 {
            return Err(Error::ConductanceUndefined(format!(
                "cluster {cluster} has degenerate volume"
            )));
        }
        per_cluster.push(ClusterConductance {
            cluster,
            size,
            phi: boundary as f64 / denom as f64,
        });
    }
    let mut phis: Vec<f64> = per_cluster.iter().map(|c| c.phi).collect();
    phis.sort_by(f64::total_cmp);
    Ok(ConductanceReport {
        median_phi: median(&phis),
        min_phi: phis[0],
        max_phi: phis[phis.len() - 1],
        per_cluster,
    })
}

/// One summary row: cluster id, publication count, conductance, total label
/// instances, unique labels.
#[derive(Debug, Clone)]
pub struct ClusterSummaryRow {
    pub cluster: u32,
    pub publications: usize,
    pub conductance: f64,
    pub total_labels: u64,
    pub unique_labels: usize,
}

#[derive(Debug, Clone)]
pub struct ClusteringSummary {
    pub rows: Vec<ClusterSummaryRow>,
    /// Largest cluster size over smallest.
    pub size_ratio: f64,
    /// Whether the size ratio passes the "no more than 10 times" criterion.
    pub size_ratio_within_10x: bool,
    pub median_conductance: f64,
}

/// Builds the per-cluster summary table: size, conductance, label totals.
/// Each publication contributes all of its minor codes to the label totals.
pub fn clustering_summary(
    g: &CitationGraph,
    cs: &ClusterSet,
    corpus: &Corpus,
) -> Result<ClusteringSummary> {
    if corpus.len() != g.node_count() {
        return Err(Error::InvalidParams("corpus and graph sizes differ".into()));
    }
    let report = conductance_report(g, cs)?;

    let mut labels: BTreeMap<u32, (u64, Vec<MinorCode>)> = BTreeMap::new();
    for (node, cluster) in cs.iter_assigned() {
        let codes = &corpus.record(node).minor_codes;
        let entry = labels.entry(cluster).or_default();
        entry.0 += codes.len() as u64;
        entry.1.extend_from_slice(codes);
    }

    let mut rows = Vec::with_capacity(report.per_cluster.len());
    for c in &report.per_cluster {
        let (total, mut codes) = labels.remove(&c.cluster).unwrap_or_default();
        codes.sort_unstable();
        codes.dedup();
        rows.push(ClusterSummaryRow {
            cluster: c.cluster,
            publications: c.size,
            conductance: c.phi,
            total_labels: total,
            unique_labels: codes.len(),
        });
    }

    let largest = rows.iter().map(|r| r.publications).max().unwrap_or(0);
    let smallest = rows.iter().map(|r| r.publications).min().unwrap_or(0);
    let size_ratio = largest as f64 / smallest as f64;
    Ok(ClusteringSummary {
        rows,
        size_ratio,
        size_ratio_within_10x: size_ratio <= 10.0,
        median_conductance: report.median_phi,
    })
}

impl ClusteringSummary {
    /// CSV in the summary-table column order.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "cluster,publications,conductance,total_labels,unique_labels")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{:.6},{},{}",
                r.cluster, r.publications, r.conductance, r.total_labels, r.unique_labels
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("vec write");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn stats_json(&self) -> serde_json::Value {
        serde_json::json!({
            "clusters": self.rows.len(),
            "size_ratio": self.size_ratio,
            "size_ratio_within_10x": self.size_ratio_within_10x,
            "median_conductance": self.median_conductance,
        })
    }
}

//! Reconciliation of clusterings against the journal-category taxonomy:
//! label-share matrices, cross-clustering intersection maps, fractional
//! top-area counts, and nucleating pairs.
//!
//! Label shares are computed per publication, not per label instance, and
//! unlabeled publications stay in the denominator; a cluster consisting
//! entirely of unlabeled publications is excluded from the matrix with a
//! warning. This keeps cluster percentages comparable across clusters with
//! mixed reference content.

use crate::cocitation::CoCitationGraph;
use crate::corpus::{ClusterSet, Corpus, LabelTaxonomy, MinorCode, TopArea};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

/// Rows are minor subject areas, columns are cluster ids, cells are the
/// fraction of the cluster's publications carrying the label (non-exclusive).
/// A row is present only if some cell reaches the threshold.
#[derive(Debug, Clone)]
pub struct LabelShareMatrix {
    pub threshold: f64,
    /// (code, minor area name) per row.
    pub rows: Vec<(MinorCode, String)>,
    pub clusters: Vec<u32>,
    /// Row-major shares in [0, 1].
    pub shares: Vec<Vec<f64>>,
}

pub fn label_share_matrix(
    cs: &ClusterSet,
    corpus: &Corpus,
    taxonomy: &LabelTaxonomy,
    threshold: f64,
) -> Result<LabelShareMatrix> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "share threshold {threshold} outside (0, 1]"
        )));
    }
    let mut clusters = Vec::new();
    let mut sizes = Vec::new();
    let mut counts: BTreeMap<MinorCode, BTreeMap<usize, usize>> = BTreeMap::new();
    for (cluster, members) in cs.clusters() {
        if members.iter().all(|&v| corpus.record(v).minor_codes.is_empty()) {
            log::warn!("cluster {cluster} has no labeled publications; excluded from label-share matrix");
            continue;
        }
        let col = clusters.len();
        clusters.push(cluster);
        sizes.push(members.len());
        for &v in &members {
            for &code in &corpus.record(v).minor_codes {
                *counts.entry(code).or_default().entry(col).or_insert(0) += 1;
            }
        }
    }

    let mut rows = Vec::new();
    let mut shares = Vec::new();
    for (code, cells) in counts {
        let row: Vec<f64> = (0..clusters.len())
            .map(|col| cells.get(&col).map_or(0.0, |&c| c as f64 / sizes[col] as f64))
            .collect();
        if row.iter().any(|&s| s >= threshold) {
            let name = taxonomy
                .minor_name(code)
                .map(str::to_owned)
                .unwrap_or_else(|| code.to_string());
            rows.push((code, name));
            shares.push(row);
        }
    }

    // Order rows by minor area name for readable heatmaps.
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a].1.cmp(&rows[b].1).then(rows[a].0.cmp(&rows[b].0)));
    let rows = order.iter().map(|&i| rows[i].clone()).collect();
    let shares = order.iter().map(|&i| std::mem::take(&mut shares[i])).collect();

    Ok(LabelShareMatrix { threshold, rows, clusters, shares })
}

impl LabelShareMatrix {
    /// CSV: first column is the minor area name, remaining columns are
    /// cluster ids; cells carry 4 decimal places.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        write!(w, "minor_subject_area")?;
        for c in &self.clusters {
            write!(w, ",{c}")?;
        }
        writeln!(w)?;
        for (i, (_, name)) in self.rows.iter().enumerate() {
            write!(w, "{}", csv_field(name))?;
            for s in &self.shares[i] {
                write!(w, ",{s:.4}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("vec write");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Percentages of each row cluster (from `a`) landing in each column cluster
/// (from `b`), over the nodes assigned in both clusterings. Cells below the
/// threshold are suppressed.
#[derive(Debug, Clone)]
pub struct CrossMap {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    /// `cells[i][j]` is the percentage, or None when suppressed/empty.
    pub cells: Vec<Vec<Option<f64>>>,
}

pub fn cross_map(a: &ClusterSet, b: &ClusterSet, threshold: f64) -> Result<CrossMap> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidParams(format!(
            "cross-map threshold {threshold} outside [0, 1]"
        )));
    }
    if a.universe() != b.universe() {
        return Err(Error::InvalidParams(
            "cluster sets index different node universes".into(),
        ));
    }
    // Restrict to nodes assigned in both clusterings.
    let mut row_sizes: BTreeMap<u32, usize> = BTreeMap::new();
    let mut inter: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut cols: BTreeSet<u32> = BTreeSet::new();
    let mut shared = 0usize;
    for (node, ca) in a.iter_assigned() {
        if let Some(cb) = b.get(node) {
            shared += 1;
            *row_sizes.entry(ca).or_insert(0) += 1;
            *inter.entry((ca, cb)).or_insert(0) += 1;
            cols.insert(cb);
        }
    }
    if shared == 0 {
        return Err(Error::DisjointUniverses);
    }

    let rows: Vec<u32> = row_sizes.keys().copied().collect();
    let cols: Vec<u32> = cols.into_iter().collect();
    let min_pct = threshold * 100.0;
    let cells = rows
        .iter()
        .map(|&ra| {
            let size = row_sizes[&ra] as f64;
            cols.iter()
                .map(|&cb| {
                    let pct = inter.get(&(ra, cb)).map(|&n| 100.0 * n as f64 / size);
                    pct.filter(|&p| p >= min_pct)
                })
                .collect()
        })
        .collect();
    Ok(CrossMap { rows, cols, cells })
}

impl CrossMap {
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        write!(w, "cluster")?;
        for c in &self.cols {
            write!(w, ",{c}")?;
        }
        writeln!(w)?;
        for (i, r) in self.rows.iter().enumerate() {
            write!(w, "{r}")?;
            for cell in &self.cells[i] {
                match cell {
                    Some(pct) => write!(w, ",{pct:.2}")?,
                    None => write!(w, ",")?,
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("vec write");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

/// Fractional counts of clustered publications across the four top-level
/// subject areas: a publication whose labels map to k distinct top areas
/// contributes 1/k to each. The Venn decomposition counts whole publications
/// per area combination.
#[derive(Debug, Clone, Default)]
pub struct FractionalCounts {
    pub totals: BTreeMap<TopArea, f64>,
    pub venn: BTreeMap<Vec<TopArea>, u64>,
    /// Publications carrying at least one label (the conserved mass).
    pub labeled_publications: u64,
}

pub fn fractional_top_area_counts(
    cs: &ClusterSet,
    corpus: &Corpus,
    taxonomy: &LabelTaxonomy,
) -> FractionalCounts {
    let mut out = FractionalCounts::default();
    for (node, _) in cs.iter_assigned() {
        let mut areas: BTreeSet<TopArea> = BTreeSet::new();
        for &code in &corpus.record(node).minor_codes {
            if let Some(area) = taxonomy.top_area(code) {
                areas.insert(area);
            }
        }
        if areas.is_empty() {
            continue;
        }
        out.labeled_publications += 1;
        let k = areas.len() as f64;
        for &area in &areas {
            *out.totals.entry(area).or_insert(0.0) += 1.0 / k;
        }
        *out.venn.entry(areas.into_iter().collect()).or_insert(0) += 1;
    }
    out
}

impl FractionalCounts {
    pub fn to_json(&self) -> serde_json::Value {
        let totals: BTreeMap<String, f64> =
            self.totals.iter().map(|(a, v)| (a.as_str().to_string(), *v)).collect();
        let venn: BTreeMap<String, u64> = self
            .venn
            .iter()
            .map(|(combo, v)| {
                let key: Vec<&str> = combo.iter().map(|a| a.as_str()).collect();
                (key.join(" + "), *v)
            })
            .collect();
        serde_json::json!({
            "labeled_publications": self.labeled_publications,
            "fractional_totals": totals,
            "venn": venn,
        })
    }
}

/// The strongest internal co-citation edge of a cluster.
#[derive(Debug, Clone)]
pub struct NucleatingPair {
    pub cluster: u32,
    /// Node indices with `a < b` in pub_id order.
    pub a: u32,
    pub b: u32,
    pub ncf: f64,
}

/// Per cluster, the maximum-ncf internal edge; ties break toward the
/// lexicographically smallest pub_id pair (index order equals pub_id order).
/// Clusters with no internal edge are skipped with a warning.
pub fn nucleating_pairs(g: &CoCitationGraph, cs: &ClusterSet) -> Vec<NucleatingPair> {
    let mut best: BTreeMap<u32, (f64, u32, u32)> = BTreeMap::new();
    for e in g.edges() {
        if let (Some(ca), Some(cb)) = (cs.get(e.a), cs.get(e.b)) {
            if ca == cb {
                let cand = (e.ncf, e.a, e.b);
                match best.get_mut(&ca) {
                    Some(cur) => {
                        // higher ncf wins; on a tie the smaller (a, b) wins
                        if cand.0 > cur.0
                            || (cand.0 == cur.0 && (cand.1, cand.2) < (cur.1, cur.2))
                        {
                            *cur = cand;
                        }
                    }
                    None => {
                        best.insert(ca, cand);
                    }
                }
            }
        }
    }
    for (cluster, members) in cs.clusters() {
        if !best.contains_key(&cluster) && !members.is_empty() {
            log::warn!("cluster {cluster} has no internal co-citation edge; skipped");
        }
    }
    best.into_iter()
        .map(|(cluster, (ncf, a, b))| NucleatingPair { cluster, a, b, ncf })
        .collect()
}

/// CSV in the nucleating-pair column order: cluster, pair (two DOIs), ncf.
pub fn write_nucleating_csv<W: Write>(
    pairs: &[NucleatingPair],
    corpus: &Corpus,
    w: &mut W,
) -> std::io::Result<()> {
    writeln!(w, "cluster,pair,ncf")?;
    for p in pairs {
        writeln!(
            w,
            "{},{},{:.6}",
            p.cluster,
            csv_field(&format!(
                "{} {}",
                corpus.record(p.a).doi_or_id(),
                corpus.record(p.b).doi_or_id()
            )),
            p.ncf
        )?;
    }
    Ok(())
}

/// The minor subject area(s) carrying the largest fraction of a cluster's
/// publications; ties are all reported.
#[derive(Debug, Clone)]
pub struct DominantArea {
    pub cluster: u32,
    /// (code, name, integer percent), one entry per tied area.
    pub areas: Vec<(MinorCode, String, u32)>,
}

pub fn dominant_minor_areas(
    cs: &ClusterSet,
    corpus: &Corpus,
    taxonomy: &LabelTaxonomy,
) -> Vec<DominantArea> {
    let mut out = Vec::new();
    for (cluster, members) in cs.clusters() {
        let mut counts: BTreeMap<MinorCode, usize> = BTreeMap::new();
        for &v in &members {
            for &code in &corpus.record(v).minor_codes {
                *counts.entry(code).or_insert(0) += 1;
            }
        }
        let Some(&max) = counts.values().max() else {
            continue;
        };
        let areas = counts
            .iter()
            .filter(|&(_, &c)| c == max)
            .map(|(&code, &c)| {
                let name = taxonomy
                    .minor_name(code)
                    .map(str::to_owned)
                    .unwrap_or_else(|| code.to_string());
                let pct = (100.0 * c as f64 / members.len() as f64).round() as u32;
                (code, name, pct)
            })
            .collect();
        out.push(DominantArea { cluster, areas });
    }
    out
}

/// CSV matching the reconciliation table: cluster, dominant minor subject
/// area(s) with their percentage.
pub fn write_dominant_csv<W: Write>(
    dominant: &[DominantArea],
    w: &mut W,
) -> std::io::Result<()> {
    writeln!(w, "cluster,minor_subject_area")?;
    for d in dominant {
        let joined = d
            .areas
            .iter()
            .map(|(_, name, pct)| format!("{name} ({pct})"))
            .collect::<Vec<_>>()
            .join("; ");
        writeln!(w, "{},{}", d.cluster, csv_field(&joined))?;
    }
    Ok(())
}

/// Corpus-level label percentages: the share of seed publications (articles
/// and proceedings; external references are outside the seed bibliography)
/// carrying each minor subject area label, non-exclusive.
pub fn corpus_label_percentages(
    corpus: &Corpus,
    taxonomy: &LabelTaxonomy,
) -> Vec<(String, f64)> {
    use crate::corpus::PubType;
    let mut counts: BTreeMap<MinorCode, usize> = BTreeMap::new();
    let mut seed = 0usize;
    for r in corpus.records() {
        if r.pub_type == PubType::ExternalReference {
            continue;
        }
        seed += 1;
        for &code in &r.minor_codes {
            *counts.entry(code).or_insert(0) += 1;
        }
    }
    if seed == 0 {
        return Vec::new();
    }
    let mut rows: Vec<(String, f64)> = counts
        .into_iter()
        .map(|(code, c)| {
            let name = taxonomy
                .minor_name(code)
                .map(str::to_owned)
                .unwrap_or_else(|| code.to_string());
            (name, 100.0 * c as f64 / seed as f64)
        })
        .collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    rows
}

pub fn write_label_percentages_csv<W: Write>(
    rows: &[(String, f64)],
    w: &mut W,
) -> std::io::Result<()> {
    writeln!(w, "minor_subject_area,percent_of_publications")?;
    for (name, pct) in rows {
        writeln!(w, "{},{pct:.1}", csv_field(name))?;
    }
    Ok(())
}

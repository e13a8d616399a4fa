//! Publication corpus: records, citation graph, taxonomy, and cluster assignments.
//!
//! Flat-file formats:
//!
//! * pubs TSV (header row required):
//!   `pub_id<TAB>doi<TAB>pub_type<TAB>code1;code2;...`
//!   with `pub_type` one of `article`, `proceedings`, `external-reference`;
//!   empty doi and empty code list are permitted.
//! * edges TSV (no header): `citing_pub_id<TAB>cited_pub_id`.
//! * taxonomy TSV (no header): `minor_code<TAB>minor_name<TAB>major_area<TAB>top_area`.
//! * METIS graph file: header `n m`, then line k (1-based) lists the 1-based
//!   neighbor indices of node k; every undirected edge appears in both
//!   endpoint lines.
//! * assignment file: exactly n lines, one cluster id per line; line k is the
//!   cluster of node k.
//!
//! Dense node indices are assigned in lexicographically sorted `pub_id` order,
//! so every downstream artifact is byte-deterministic regardless of input row
//! order. Duplicate directed edges are collapsed; self-loops are rejected.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

/// A 4-digit minor subject code, e.g. `1702`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinorCode(pub u16);

impl fmt::Display for MinorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.0)
    }
}

impl FromStr for MinorCode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.len() != 4 || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("minor code {s:?} is not a 4-digit code"));
        }
        Ok(MinorCode(s.parse().unwrap()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PubType {
    Article,
    Proceedings,
    /// A cited work outside the seed bibliography.
    ExternalReference,
}

impl PubType {
    pub fn as_str(self) -> &'static str {
        match self {
            PubType::Article => "article",
            PubType::Proceedings => "proceedings",
            PubType::ExternalReference => "external-reference",
        }
    }
}

impl FromStr for PubType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "article" => Ok(PubType::Article),
            "proceedings" => Ok(PubType::Proceedings),
            "external-reference" => Ok(PubType::ExternalReference),
            other => Err(format!("unknown pub_type {other:?}")),
        }
    }
}

/// Top-level subject area of the journal-category taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TopArea {
    PhysicalSciences,
    LifeSciences,
    HealthSciences,
    SocialSciences,
}

impl TopArea {
    pub const ALL: [TopArea; 4] = [
        TopArea::PhysicalSciences,
        TopArea::LifeSciences,
        TopArea::HealthSciences,
        TopArea::SocialSciences,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TopArea::PhysicalSciences => "Physical Sciences",
            TopArea::LifeSciences => "Life Sciences",
            TopArea::HealthSciences => "Health Sciences",
            TopArea::SocialSciences => "Social Sciences",
        }
    }
}

impl fmt::Display for TopArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TopArea {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "Physical Sciences" => Ok(TopArea::PhysicalSciences),
            "Life Sciences" => Ok(TopArea::LifeSciences),
            "Health Sciences" => Ok(TopArea::HealthSciences),
            "Social Sciences" => Ok(TopArea::SocialSciences),
            other => Err(format!("unknown top-level subject area {other:?}")),
        }
    }
}

/// One publication: identifier, optional DOI, type, and its minor codes.
#[derive(Debug, Clone)]
pub struct PublicationRecord {
    pub pub_id: String,
    pub doi: Option<String>,
    pub pub_type: PubType,
    /// Sorted, deduplicated minor subject codes. May be empty.
    pub minor_codes: Vec<MinorCode>,
}

impl PublicationRecord {
    /// DOI when present, else the pub_id. Used when emitting pair tables.
    pub fn doi_or_id(&self) -> &str {
        self.doi.as_deref().unwrap_or(&self.pub_id)
    }
}

/// Publications indexed densely in sorted pub_id order.
#[derive(Debug, Clone)]
pub struct Corpus {
    records: Vec<PublicationRecord>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn record(&self, idx: u32) -> &PublicationRecord {
        &self.records[idx as usize]
    }

    pub fn records(&self) -> &[PublicationRecord] {
        &self.records
    }

    /// Dense index of a pub_id, by binary search over the sorted records.
    pub fn index_of(&self, pub_id: &str) -> Option<u32> {
        self.records
            .binary_search_by(|r| r.pub_id.as_str().cmp(pub_id))
            .ok()
            .map(|i| i as u32)
    }
}

#[derive(Debug, Clone)]
pub struct TaxonomyEntry {
    pub minor_name: String,
    pub major_area: String,
    pub top_area: TopArea,
}

/// Minor subject code -> (name, major area, top area).
#[derive(Debug, Clone, Default)]
pub struct LabelTaxonomy {
    entries: BTreeMap<MinorCode, TaxonomyEntry>,
}

impl LabelTaxonomy {
    pub fn get(&self, code: MinorCode) -> Option<&TaxonomyEntry> {
        self.entries.get(&code)
    }

    pub fn minor_name(&self, code: MinorCode) -> Option<&str> {
        self.entries.get(&code).map(|e| e.minor_name.as_str())
    }

    pub fn top_area(&self, code: MinorCode) -> Option<TopArea> {
        self.entries.get(&code).map(|e| e.top_area)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MinorCode, &TaxonomyEntry)> {
        self.entries.iter().map(|(c, e)| (*c, e))
    }
}

/// Compact directed citing -> cited graph over dense publication indices,
/// with a deduplicated undirected view used for export and conductance.
#[derive(Debug, Clone)]
pub struct CitationGraph {
    n: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    und_offsets: Vec<usize>,
    und_targets: Vec<u32>,
    m: usize,
    directed_edges: usize,
}

impl CitationGraph {
    /// Builds the graph from directed edges. Duplicate directed edges are
    /// collapsed (count reported at debug level); self-loops must have been
    /// rejected by the caller.
    pub fn from_edges(n: usize, mut edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.iter().all(|&(a, b)| a != b));
        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() < before {
            log::debug!("collapsed {} duplicate directed edges", before - edges.len());
        }

        let mut out_offsets = vec![0usize; n + 1];
        for &(a, _) in &edges {
            out_offsets[a as usize + 1] += 1;
        }
        for i in 1..=n {
            out_offsets[i] += out_offsets[i - 1];
        }
        let out_targets: Vec<u32> = edges.iter().map(|&(_, b)| b).collect();

        // Undirected view: mutual citations collapse to one edge.
        let mut und: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        und.sort_unstable();
        und.dedup();
        let m = und.len();

        let mut und_offsets = vec![0usize; n + 1];
        for &(a, b) in &und {
            und_offsets[a as usize + 1] += 1;
            und_offsets[b as usize + 1] += 1;
        }
        for i in 1..=n {
            und_offsets[i] += und_offsets[i - 1];
        }
        let mut cursor = und_offsets.clone();
        let mut und_targets = vec![0u32; 2 * m];
        for &(a, b) in &und {
            und_targets[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            und_targets[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        // Neighbor lists come out sorted except for the b -> a entries; fix up.
        for v in 0..n {
            und_targets[und_offsets[v]..und_offsets[v + 1]].sort_unstable();
        }

        CitationGraph {
            n,
            out_offsets,
            out_targets,
            und_offsets,
            und_targets,
            m,
            directed_edges: edges.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of undirected edges after deduplication.
    pub fn undirected_edge_count(&self) -> usize {
        self.m
    }

    pub fn directed_edge_count(&self) -> usize {
        self.directed_edges
    }

    /// Cited indices for a citing node, sorted ascending.
    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_targets[self.out_offsets[v as usize]..self.out_offsets[v as usize + 1]]
    }

    /// Neighbors in the undirected view, sorted ascending.
    pub fn und_neighbors(&self, v: u32) -> &[u32] {
        &self.und_targets[self.und_offsets[v as usize]..self.und_offsets[v as usize + 1]]
    }

    /// Degree in the undirected view.
    pub fn degree(&self, v: u32) -> usize {
        self.und_offsets[v as usize + 1] - self.und_offsets[v as usize]
    }

    /// Canonical (a < b) undirected edge list, sorted.
    pub fn und_edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for v in 0..self.n as u32 {
            for &u in self.und_neighbors(v) {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterMethod {
    Direct,
    Cocitation,
}

impl ClusterMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ClusterMethod::Direct => "direct",
            ClusterMethod::Cocitation => "cocitation",
        }
    }
}

/// Disjoint assignment of node indices to cluster ids. Direct-citation
/// cluster sets are total; co-citation cluster sets may cover a subset.
#[derive(Debug, Clone)]
pub struct ClusterSet {
    method: ClusterMethod,
    assignment: Vec<Option<u32>>,
}

impl ClusterSet {
    pub fn new(method: ClusterMethod, universe: usize) -> Self {
        ClusterSet { method, assignment: vec![None; universe] }
    }

    pub fn method(&self) -> ClusterMethod {
        self.method
    }

    /// Size of the node universe (not the number of assigned nodes).
    pub fn universe(&self) -> usize {
        self.assignment.len()
    }

    pub fn assign(&mut self, node: u32, cluster: u32) {
        self.assignment[node as usize] = Some(cluster);
    }

    pub fn get(&self, node: u32) -> Option<u32> {
        self.assignment[node as usize]
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(|a| a.is_some())
    }

    pub fn assigned_count(&self) -> usize {
        self.assignment.iter().filter(|a| a.is_some()).count()
    }

    pub fn iter_assigned(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.map(|c| (i as u32, c)))
    }

    /// Cluster id -> sorted member indices.
    pub fn clusters(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut map: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (node, cluster) in self.iter_assigned() {
            map.entry(cluster).or_default().push(node);
        }
        map
    }
}

fn open_lines(path: &Path) -> Result<impl Iterator<Item = std::io::Result<String>>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(BufReader::new(file).lines())
}

/// Loads and validates publications, citation edges, and the category
/// taxonomy, assigning dense indices in sorted pub_id order.
pub fn load_corpus(
    pubs_path: &Path,
    edges_path: &Path,
    taxonomy_path: &Path,
) -> Result<(Corpus, CitationGraph, LabelTaxonomy)> {
    let taxonomy = load_taxonomy(taxonomy_path)?;
    let corpus = load_publications(pubs_path, &taxonomy)?;
    let graph = load_edges(edges_path, &corpus)?;
    Ok((corpus, graph, taxonomy))
}

fn load_taxonomy(path: &Path) -> Result<LabelTaxonomy> {
    let mut entries = BTreeMap::new();
    for (lineno, line) in open_lines(path)?.enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                path,
                lineno,
                format!("expected 4 tab-separated fields, found {}", fields.len()),
            ));
        }
        let code: MinorCode =
            fields[0].parse().map_err(|e| Error::parse(path, lineno, e))?;
        let top_area: TopArea =
            fields[3].parse().map_err(|e| Error::parse(path, lineno, e))?;
        let entry = TaxonomyEntry {
            minor_name: fields[1].to_string(),
            major_area: fields[2].to_string(),
            top_area,
        };
        if entries.insert(code, entry).is_some() {
            return Err(Error::parse(
                path,
                lineno,
                format!("minor code {code} already defined"),
            ));
        }
    }
    Ok(LabelTaxonomy { entries })
}

fn load_publications(path: &Path, taxonomy: &LabelTaxonomy) -> Result<Corpus> {
    let mut rows: Vec<(PublicationRecord, usize)> = Vec::new();
    let mut lines = open_lines(path)?.enumerate();

    match lines.next() {
        Some((_, Ok(header))) => {
            if header.split('\t').next() != Some("pub_id") {
                return Err(Error::parse(path, 1, "missing pub_id header row"));
            }
        }
        Some((_, Err(e))) => return Err(Error::io(path, e)),
        None => return Err(Error::parse(path, 1, "empty publications file")),
    }

    for (lineno, line) in lines {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                path,
                lineno,
                format!("expected 4 tab-separated fields, found {}", fields.len()),
            ));
        }
        let pub_id = fields[0];
        if pub_id.is_empty() {
            return Err(Error::parse(path, lineno, "empty pub_id"));
        }
        let doi = if fields[1].is_empty() { None } else { Some(fields[1].to_string()) };
        let pub_type: PubType =
            fields[2].parse().map_err(|e| Error::parse(path, lineno, e))?;
        let mut minor_codes = Vec::new();
        if !fields[3].is_empty() {
            for part in fields[3].split(';') {
                let code: MinorCode =
                    part.parse().map_err(|e| Error::parse(path, lineno, e))?;
                if taxonomy.get(code).is_none() {
                    return Err(Error::parse(
                        path,
                        lineno,
                        format!("minor code {code} is not in the taxonomy"),
                    ));
                }
                minor_codes.push(code);
            }
        }
        minor_codes.sort_unstable();
        minor_codes.dedup();
        let record = PublicationRecord {
            pub_id: pub_id.to_string(),
            doi,
            pub_type,
            minor_codes,
        };
        rows.push((record, lineno));
    }

    rows.sort_by(|a, b| a.0.pub_id.cmp(&b.0.pub_id));
    for pair in rows.windows(2) {
        if pair[0].0.pub_id == pair[1].0.pub_id {
            return Err(Error::DuplicatePubId {
                pub_id: pair[1].0.pub_id.clone(),
                path: path.to_path_buf(),
                line: pair[0].1.max(pair[1].1),
            });
        }
    }

    Ok(Corpus { records: rows.into_iter().map(|(r, _)| r).collect() })
}

fn load_edges(path: &Path, corpus: &Corpus) -> Result<CitationGraph> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (lineno, line) in open_lines(path)?.enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.is_empty() {
            continue;
        }
        let mut it = line.split('\t');
        let (citing, cited) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::parse(path, lineno, "expected 2 tab-separated fields"))
            }
        };
        if citing == cited {
            return Err(Error::SelfLoop {
                pub_id: citing.to_string(),
                path: path.to_path_buf(),
                line: lineno,
            });
        }
        let resolve = |id: &str| {
            corpus.index_of(id).ok_or_else(|| Error::UnknownPubId {
                pub_id: id.to_string(),
                path: path.to_path_buf(),
                line: lineno,
            })
        };
        edges.push((resolve(citing)?, resolve(cited)?));
    }
    Ok(CitationGraph::from_edges(corpus.len(), edges))
}

/// Writes the undirected view in METIS format: header `n m`, then one
/// neighbor line per node with 1-based indices.
pub fn export_metis(g: &CitationGraph, path: &Path) -> Result<()> {
    if g.node_count() == 0 {
        return Err(Error::InvalidParams("cannot export an empty graph".into()));
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_metis(g, &mut w).map_err(|e| Error::io(path, e))
}

pub fn write_metis<W: Write>(g: &CitationGraph, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "{} {}", g.node_count(), g.undirected_edge_count())?;
    let mut line = String::new();
    for v in 0..g.node_count() as u32 {
        line.clear();
        for (i, &u) in g.und_neighbors(v).iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&(u + 1).to_string());
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

/// An undirected graph parsed back from a METIS file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetisGraph {
    pub n: usize,
    pub m: usize,
    /// Canonical (a < b) edges, sorted, 0-based.
    pub edges: Vec<(u32, u32)>,
}

pub fn read_metis(path: &Path) -> Result<MetisGraph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_metis(BufReader::new(file), path)
}

/// Parses METIS from any reader; `origin` is used in error messages only.
pub fn parse_metis<R: BufRead>(reader: R, origin: &Path) -> Result<MetisGraph> {
    let mut lines = reader.lines().enumerate();

    let (header_lineno, header) = loop {
        match lines.next() {
            Some((i, Ok(l))) => {
                if !l.starts_with('%') {
                    break (i + 1, l);
                }
            }
            Some((_, Err(e))) => return Err(Error::io(origin, e)),
            None => return Err(Error::parse(origin, 1, "missing METIS header line")),
        }
    };
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(origin, header_lineno, "bad node count in header"))?;
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(origin, header_lineno, "bad edge count in header"))?;

    let mut half_edges: Vec<(u32, u32)> = Vec::with_capacity(2 * m);
    let mut node = 0u32;
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.starts_with('%') {
            continue;
        }
        if node as usize >= n {
            return Err(Error::parse(origin, lineno, "more neighbor lines than nodes"));
        }
        for tok in line.split_whitespace() {
            let nbr: usize = tok
                .parse()
                .map_err(|_| Error::parse(origin, lineno, format!("bad neighbor {tok:?}")))?;
            if nbr == 0 || nbr > n {
                return Err(Error::parse(
                    origin,
                    lineno,
                    format!("neighbor index {nbr} out of range 1..={n}"),
                ));
            }
            let nbr = (nbr - 1) as u32;
            if nbr == node {
                return Err(Error::parse(origin, lineno, "self-loop in METIS file"));
            }
            half_edges.push((node.min(nbr), node.max(nbr)));
        }
        node += 1;
    }
    if (node as usize) < n {
        return Err(Error::parse(
            origin,
            node as usize + 2,
            format!("expected {n} neighbor lines, found {node}"),
        ));
    }

    half_edges.sort_unstable();
    let mut edges = Vec::with_capacity(m);
    let mut i = 0;
    while i < half_edges.len() {
        let e = half_edges[i];
        let run = half_edges[i..].iter().take_while(|&&x| x == e).count();
        if run != 2 {
            return Err(Error::parse(
                origin,
                0,
                format!(
                    "edge {}-{} appears {run} time(s), expected once per endpoint",
                    e.0 + 1,
                    e.1 + 1
                ),
            ));
        }
        edges.push(e);
        i += run;
    }
    if edges.len() != m {
        return Err(Error::parse(
            origin,
            0,
            format!("header declares {m} edges, file contains {}", edges.len()),
        ));
    }
    Ok(MetisGraph { n, m, edges })
}

/// Imports a one-cluster-id-per-line partition (the external partitioner's
/// output format) as a total cluster set.
pub fn import_assignment(
    g: &CitationGraph,
    path: &Path,
    method: ClusterMethod,
) -> Result<ClusterSet> {
    let mut cs = ClusterSet::new(method, g.node_count());
    let mut count = 0usize;
    for (lineno, line) in open_lines(path)?.enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        count += 1;
        if count > g.node_count() {
            continue; // keep counting so the error names the real length
        }
        let cluster: u32 = line.trim().parse().map_err(|_| {
            Error::parse(path, lineno, format!("non-integer cluster id {:?}", line.trim()))
        })?;
        cs.assign(lineno as u32 - 1, cluster);
    }
    if count != g.node_count() {
        return Err(Error::AssignmentLineCount {
            path: path.to_path_buf(),
            expected: g.node_count(),
            actual: count,
        });
    }
    Ok(cs)
}

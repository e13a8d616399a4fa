//! Co-citation graph construction: citation counts, the high-citation
//! percentile filter, reference-pair generation, and Salton cosine
//! normalization.
//!
//! Pair generation streams citer-by-citer. Below the memory cap all pairs are
//! materialized and sorted in memory; above it, sorted aggregated runs are
//! spilled to disk and k-way merged, so peak memory stays proportional to the
//! cap. Both paths produce the identical canonical pair list.

use crate::corpus::{CitationGraph, Corpus};
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::BinaryHeap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

/// Per-node in-citation counts within the loaded corpus.
#[derive(Debug, Clone)]
pub struct CitationCounts {
    counts: Vec<u32>,
}

impl CitationCounts {
    pub fn from_vec(counts: Vec<u32>) -> Self {
        CitationCounts { counts }
    }

    pub fn get(&self, node: u32) -> u32 {
        self.counts[node as usize]
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.counts
    }
}

/// In-degree of every node: the number of citations it accumulated.
pub fn citation_counts(g: &CitationGraph) -> CitationCounts {
    let mut counts = vec![0u32; g.node_count()];
    for v in 0..g.node_count() as u32 {
        for &cited in g.out_neighbors(v) {
            counts[cited as usize] += 1;
        }
    }
    CitationCounts { counts }
}

fn nearest_rank(len: usize, q: f64) -> usize {
    // 1-based nearest-rank index, clamped to [1, len].
    ((q * len as f64).ceil() as usize).clamp(1, len)
}

/// Nodes at or above the nearest-rank `q`-quantile of the nonzero citation
/// counts. Zero-count publications are discarded before the quantile is
/// computed; ties at the threshold are all retained.
pub fn percentile_filter(counts: &CitationCounts, q: f64) -> Result<Vec<u32>> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParams(format!("percentile {q} outside [0, 1]")));
    }
    let mut nonzero: Vec<u32> = counts.counts.iter().copied().filter(|&c| c > 0).collect();
    if nonzero.is_empty() {
        return Err(Error::EmptyAfterZeroDiscard);
    }
    nonzero.sort_unstable();
    let threshold = nonzero[nearest_rank(nonzero.len(), q) - 1];
    Ok((0..counts.len() as u32)
        .filter(|&v| counts.get(v) >= threshold)
        .collect())
}

/// Canonical co-cited pairs with raw co-citation counts, sorted by `(a, b)`.
#[derive(Debug, Clone, Default)]
pub struct PairCounts {
    pairs: Vec<(u32, u32, u32)>,
}

impl PairCounts {
    pub fn from_sorted(pairs: Vec<(u32, u32, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        PairCounts { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sum of raw counts: the number of (citer, pair) co-citation events.
    pub fn total_instances(&self) -> u64 {
        self.pairs.iter().map(|&(_, _, c)| c as u64).sum()
    }
}

#[derive(Debug, Clone)]
pub struct PairGenConfig {
    /// Maximum raw pairs buffered in memory before spilling a sorted run.
    pub mem_cap_pairs: usize,
    /// Directory for spill runs; defaults to the system temp directory.
    pub spill_dir: Option<PathBuf>,
}

impl Default for PairGenConfig {
    fn default() -> Self {
        PairGenConfig { mem_cap_pairs: 100_000_000, spill_dir: None }
    }
}

/// Generates all co-cited reference pairs restricted to the retained node
/// set, with default memory settings.
pub fn generate_pairs(g: &CitationGraph, retained: &[u32]) -> Result<PairCounts> {
    generate_pairs_with(g, retained, &PairGenConfig::default())
}

pub fn generate_pairs_with(
    g: &CitationGraph,
    retained: &[u32],
    cfg: &PairGenConfig,
) -> Result<PairCounts> {
    let mut mask = vec![false; g.node_count()];
    for &v in retained {
        mask[v as usize] = true;
    }

    let total_pairs: u64 = (0..g.node_count() as u32)
        .into_par_iter()
        .map(|citer| {
            let r = g.out_neighbors(citer).iter().filter(|&&t| mask[t as usize]).count() as u64;
            r * (r.saturating_sub(1)) / 2
        })
        .sum();

    if total_pairs as usize <= cfg.mem_cap_pairs {
        Ok(generate_in_memory(g, &mask, total_pairs as usize))
    } else {
        generate_spilled(g, &mask, cfg)
    }
}

fn citer_retained_refs(g: &CitationGraph, mask: &[bool], citer: u32) -> Vec<u32> {
    // Out-neighbors are sorted ascending, so emitted pairs are canonical.
    g.out_neighbors(citer).iter().copied().filter(|&t| mask[t as usize]).collect()
}

fn generate_in_memory(g: &CitationGraph, mask: &[bool], total: usize) -> PairCounts {
    let mut raw: Vec<(u32, u32)> = Vec::with_capacity(total);
    raw.par_extend((0..g.node_count() as u32).into_par_iter().flat_map_iter(|citer| {
        let refs = citer_retained_refs(g, mask, citer);
        let mut out = Vec::with_capacity(refs.len() * refs.len().saturating_sub(1) / 2);
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                out.push((refs[i], refs[j]));
            }
        }
        out
    }));
    raw.par_sort_unstable();
    PairCounts::from_sorted(aggregate_sorted(&raw))
}

fn aggregate_sorted(raw: &[(u32, u32)]) -> Vec<(u32, u32, u32)> {
    let mut out: Vec<(u32, u32, u32)> = Vec::new();
    for &(a, b) in raw {
        match out.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += 1,
            _ => out.push((a, b, 1)),
        }
    }
    out
}

struct RunWriter {
    dir: PathBuf,
    runs: Vec<File>,
}

impl RunWriter {
    fn spill(&mut self, buf: &mut Vec<(u32, u32)>) -> Result<()> {
        buf.par_sort_unstable();
        let triples = aggregate_sorted(buf);
        buf.clear();
        let file = tempfile::tempfile_in(&self.dir)
            .map_err(|e| Error::io(&self.dir, e))?;
        let mut w = BufWriter::new(file);
        for (a, b, c) in triples {
            let mut rec = [0u8; 12];
            rec[0..4].copy_from_slice(&a.to_le_bytes());
            rec[4..8].copy_from_slice(&b.to_le_bytes());
            rec[8..12].copy_from_slice(&c.to_le_bytes());
            w.write_all(&rec).map_err(|e| Error::io(&self.dir, e))?;
        }
        let mut file = w.into_inner().map_err(|e| Error::io(&self.dir, e.into()))?;
        file.seek(SeekFrom::Start(0)).map_err(|e| Error::io(&self.dir, e))?;
        self.runs.push(file);
        Ok(())
    }
}

struct RunReader {
    reader: BufReader<File>,
}

impl RunReader {
    fn next_triple(&mut self) -> Result<Option<(u32, u32, u32)>> {
        let mut rec = [0u8; 12];
        match self.reader.read_exact(&mut rec) {
            Ok(()) => Ok(Some((
                u32::from_le_bytes(rec[0..4].try_into().unwrap()),
                u32::from_le_bytes(rec[4..8].try_into().unwrap()),
                u32::from_le_bytes(rec[8..12].try_into().unwrap()),
            ))),
            Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => Ok(None),
            Err(e) => Err(Error::io("<spill run>", e)),
        }
    }
}

fn generate_spilled(g: &CitationGraph, mask: &[bool], cfg: &PairGenConfig) -> Result<PairCounts> {
    let dir = cfg.spill_dir.clone().unwrap_or_else(std::env::temp_dir);
    let cap = cfg.mem_cap_pairs.max(1);
    let mut writer = RunWriter { dir, runs: Vec::new() };
    let mut buf: Vec<(u32, u32)> = Vec::with_capacity(cap.min(1 << 24));

    for citer in 0..g.node_count() as u32 {
        let refs = citer_retained_refs(g, mask, citer);
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                buf.push((refs[i], refs[j]));
                if buf.len() >= cap {
                    writer.spill(&mut buf)?;
                }
            }
        }
    }
    if !buf.is_empty() {
        writer.spill(&mut buf)?;
    }
    log::debug!("pair generation spilled {} sorted runs", writer.runs.len());
    merge_runs(writer.runs)
}

fn merge_runs(runs: Vec<File>) -> Result<PairCounts> {
    let mut readers: Vec<RunReader> = runs
        .into_iter()
        .map(|f| RunReader { reader: BufReader::new(f) })
        .collect();

    // Min-heap over (pair, run index); counts ride along outside the key.
    let mut heap: BinaryHeap<std::cmp::Reverse<(u32, u32, usize, u32)>> = BinaryHeap::new();
    for (idx, r) in readers.iter_mut().enumerate() {
        if let Some((a, b, c)) = r.next_triple()? {
            heap.push(std::cmp::Reverse((a, b, idx, c)));
        }
    }

    let mut out: Vec<(u32, u32, u32)> = Vec::new();
    while let Some(std::cmp::Reverse((a, b, idx, c))) = heap.pop() {
        match out.last_mut() {
            Some(last) if last.0 == a && last.1 == b => {
                last.2 = last
                    .2
                    .checked_add(c)
                    .expect("raw co-citation count exceeds u32::MAX");
            }
            _ => out.push((a, b, c)),
        }
        if let Some((na, nb, nc)) = readers[idx].next_triple()? {
            heap.push(std::cmp::Reverse((na, nb, idx, nc)));
        }
    }
    Ok(PairCounts::from_sorted(out))
}

/// One normalized co-citation edge between retained corpus indices `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoEdge {
    pub a: u32,
    pub b: u32,
    pub raw: u32,
    pub ncf: f64,
}

/// Undirected weighted graph over the retained highly cited nodes; edge
/// weight is the Salton-normalized co-citation frequency.
#[derive(Debug, Clone)]
pub struct CoCitationGraph {
    universe: usize,
    nodes: Vec<u32>,
    edges: Vec<CoEdge>,
}

impl CoCitationGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted retained corpus indices.
    pub fn nodes(&self) -> &[u32] {
        &self.nodes
    }

    /// Edges sorted by `(a, b)`.
    pub fn edges(&self) -> &[CoEdge] {
        &self.edges
    }

    /// Size of the underlying corpus node universe.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn from_parts(universe: usize, mut nodes: Vec<u32>, mut edges: Vec<CoEdge>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        edges.sort_by_key(|x| (x.a, x.b));
        CoCitationGraph { universe, nodes, edges }
    }

    /// Writes the pair dump: `a_pub_id<TAB>b_pub_id<TAB>raw<TAB>ncf`, sorted
    /// by `(a, b)`. The ncf field uses shortest round-trip formatting so the
    /// dump reloads to bit-identical weights.
    pub fn write_pair_dump(&self, corpus: &Corpus, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        for e in &self.edges {
            writeln!(
                w,
                "{}\t{}\t{}\t{}",
                corpus.record(e.a).pub_id,
                corpus.record(e.b).pub_id,
                e.raw,
                e.ncf
            )
            .map_err(|er| Error::io(path, er))?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Writes the retained node list, one pub_id per line in index order.
    pub fn write_retained(&self, corpus: &Corpus, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        for &v in &self.nodes {
            writeln!(w, "{}", corpus.record(v).pub_id).map_err(|e| Error::io(path, e))?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Reloads a graph from the pair dump and retained list written above.
    pub fn read_dump(
        corpus: &Corpus,
        pairs_path: &Path,
        retained_path: &Path,
    ) -> Result<CoCitationGraph> {
        let resolve = |id: &str, path: &Path, line: usize| {
            corpus.index_of(id).ok_or_else(|| Error::UnknownPubId {
                pub_id: id.to_string(),
                path: path.to_path_buf(),
                line,
            })
        };

        let file = File::open(retained_path).map_err(|e| Error::io(retained_path, e))?;
        let mut nodes = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(retained_path, e))?;
            if line.is_empty() {
                continue;
            }
            nodes.push(resolve(&line, retained_path, i + 1)?);
        }

        let file = File::open(pairs_path).map_err(|e| Error::io(pairs_path, e))?;
        let mut edges = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::io(pairs_path, e))?;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(Error::parse(pairs_path, lineno, "expected 4 fields"));
            }
            let a = resolve(fields[0], pairs_path, lineno)?;
            let b = resolve(fields[1], pairs_path, lineno)?;
            let raw: u32 = fields[2]
                .parse()
                .map_err(|_| Error::parse(pairs_path, lineno, "bad raw count"))?;
            let ncf: f64 = fields[3]
                .parse()
                .map_err(|_| Error::parse(pairs_path, lineno, "bad ncf value"))?;
            edges.push(CoEdge { a, b, raw, ncf });
        }
        Ok(CoCitationGraph::from_parts(corpus.len(), nodes, edges))
    }
}

/// Applies Salton's cosine formula: `ncf = raw / sqrt(count(a) * count(b))`.
/// Every endpoint must have a nonzero citation count (the zero-discard
/// precondition of the percentile filter).
pub fn normalize_salton(
    pairs: &PairCounts,
    counts: &CitationCounts,
    retained: Vec<u32>,
) -> Result<CoCitationGraph> {
    let mut edges = Vec::with_capacity(pairs.len());
    for &(a, b, raw) in pairs.pairs() {
        let ca = counts.get(a);
        let cb = counts.get(b);
        if ca == 0 {
            return Err(Error::ZeroCitationCount { node: a });
        }
        if cb == 0 {
            return Err(Error::ZeroCitationCount { node: b });
        }
        let ncf = raw as f64 / ((ca as u64 * cb as u64) as f64).sqrt();
        edges.push(CoEdge { a, b, raw, ncf });
    }
    Ok(CoCitationGraph::from_parts(counts.len(), retained, edges))
}

//! Variable-level clustering: an iterative threshold cascade over the
//! co-citation graph with maximum-cluster-size chaining control.
//!
//! Each round deletes all edges below a scheduled quantile of the original
//! edge-weight distribution and extracts connected components. Components
//! within the size bounds are retained as clusters; oversized components are
//! returned to the process and broken at a higher threshold; undersized ones
//! are discarded. Quantiles are computed once against the full original
//! weight distribution and held fixed across rounds.

use crate::cocitation::CoCitationGraph;
use crate::corpus::{ClusterMethod, ClusterSet};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One phase of the biphasic threshold schedule: step by `increment` until
/// the quantile reaches `end`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SchedulePhase {
    pub end: f64,
    pub increment: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VlcParams {
    /// Starting quantile.
    pub t0: f64,
    /// Quantile phases after `t0`.
    pub schedule: Vec<SchedulePhase>,
    /// Last-resort quantile applied after the schedule.
    pub final_t: f64,
    /// Maximum cluster size; larger components carry over to the next round.
    pub mcs: usize,
    /// Reporting boundary for "small" clusters; retention itself is bounded
    /// by `mcs`.
    pub retain_below: usize,
    /// Minimum retained cluster size; smaller components are discarded.
    pub min_size: usize,
}

impl Default for VlcParams {
    fn default() -> Self {
        VlcParams {
            t0: 0.5,
            schedule: vec![
                SchedulePhase { end: 0.9, increment: 0.1 },
                SchedulePhase { end: 0.99, increment: 0.01 },
            ],
            final_t: 0.999,
            mcs: 200,
            retain_below: 100,
            min_size: 3,
        }
    }
}

impl VlcParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.t0) || !(0.0..=1.0).contains(&self.final_t) {
            return Err(Error::InvalidParams("quantiles must lie in [0, 1]".into()));
        }
        if self.t0 >= self.final_t {
            return Err(Error::InvalidParams(format!(
                "t0 ({}) must be below final_t ({})",
                self.t0, self.final_t
            )));
        }
        if self.min_size == 0 || self.min_size > self.retain_below || self.retain_below > self.mcs
        {
            return Err(Error::InvalidParams(format!(
                "need 1 <= min_size ({}) <= retain_below ({}) <= mcs ({})",
                self.min_size, self.retain_below, self.mcs
            )));
        }
        let mut prev = self.t0;
        for ph in &self.schedule {
            if ph.increment <= 0.0 {
                return Err(Error::InvalidParams("schedule increment must be positive".into()));
            }
            if ph.end <= prev || ph.end > self.final_t {
                return Err(Error::InvalidParams(
                    "schedule phase ends must increase and stay below final_t".into(),
                ));
            }
            prev = ph.end;
        }
        Ok(())
    }

    /// The full quantile ladder: t0, each scheduled step, then final_t.
    /// Steps are generated on an integer grid so float accumulation cannot
    /// perturb the ladder.
    pub fn quantiles(&self) -> Vec<f64> {
        const SCALE: f64 = 1e9;
        let to_units = |x: f64| (x * SCALE).round() as u64;
        let mut out = vec![self.t0];
        let mut cur = to_units(self.t0);
        for ph in &self.schedule {
            let end = to_units(ph.end);
            let inc = to_units(ph.increment).max(1);
            while cur + inc <= end {
                cur += inc;
                out.push(cur as f64 / SCALE);
            }
        }
        if to_units(self.final_t) > cur {
            out.push(self.final_t);
        }
        out
    }
}

fn nearest_rank(len: usize, q: f64) -> usize {
    ((q * len as f64).ceil() as usize).clamp(1, len)
}

/// Nearest-rank `q`-quantile of a weight multiset.
pub fn quantile_threshold(weights: &[f64], q: f64) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParams(format!("quantile {q} outside [0, 1]")));
    }
    let mut sorted = weights.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted[nearest_rank(sorted.len(), q) - 1])
}

fn threshold_of_sorted(sorted: &[f64], q: f64) -> f64 {
    sorted[nearest_rank(sorted.len(), q) - 1]
}

/// Connected components of the subgraph induced on `nodes`, keeping only
/// edges with `ncf >= threshold`. Components are ordered by descending
/// maximum internal edge weight, ties broken by smallest member index;
/// members are sorted ascending.
pub fn components_at(g: &CoCitationGraph, threshold: f64, nodes: &[u32]) -> Vec<Vec<u32>> {
    let mut local: Vec<u32> = nodes.to_vec();
    local.sort_unstable();
    local.dedup();
    let pos = |v: u32| local.binary_search(&v).ok();

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); local.len()];
    let mut kept: Vec<(u32, u32, f64)> = Vec::new();
    for e in g.edges() {
        if e.ncf >= threshold {
            if let (Some(a), Some(b)) = (pos(e.a), pos(e.b)) {
                adj[a].push(b as u32);
                adj[b].push(a as u32);
                kept.push((a as u32, b as u32, e.ncf));
            }
        }
    }

    // BFS labeling; the union-find route is kept to the test oracle.
    const UNSET: u32 = u32::MAX;
    let mut comp = vec![UNSET; local.len()];
    let mut n_comps = 0u32;
    let mut queue = std::collections::VecDeque::new();
    for start in 0..local.len() {
        if comp[start] != UNSET {
            continue;
        }
        let id = n_comps;
        n_comps += 1;
        comp[start] = id;
        queue.push_back(start as u32);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v as usize] {
                if comp[u as usize] == UNSET {
                    comp[u as usize] = id;
                    queue.push_back(u);
                }
            }
        }
    }

    let mut members: Vec<Vec<u32>> = vec![Vec::new(); n_comps as usize];
    for (i, &c) in comp.iter().enumerate() {
        members[c as usize].push(local[i]);
    }
    let mut max_w = vec![f64::NEG_INFINITY; n_comps as usize];
    for &(a, _, w) in &kept {
        let c = comp[a as usize] as usize;
        if w > max_w[c] {
            max_w[c] = w;
        }
    }

    let mut order: Vec<usize> = (0..n_comps as usize).collect();
    order.sort_by(|&x, &y| {
        max_w[y]
            .total_cmp(&max_w[x])
            .then_with(|| members[x][0].cmp(&members[y][0]))
    });
    order.into_iter().map(|i| std::mem::take(&mut members[i])).collect()
}

/// Per-round trace record, one JSON object per line in the trace artifact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VlcRound {
    pub quantile: f64,
    pub threshold_value: f64,
    pub emitted: usize,
    pub carried_over_nodes: usize,
}

#[derive(Debug, Clone)]
pub struct VlcResult {
    pub clusters: ClusterSet,
    pub trace: Vec<VlcRound>,
    pub retained_nodes: usize,
    pub dropped_small_nodes: usize,
    pub dropped_oversized_nodes: usize,
}

impl VlcResult {
    pub fn trace_jsonl(&self) -> String {
        let mut s = String::new();
        for round in &self.trace {
            s.push_str(&serde_json::to_string(round).expect("trace serializes"));
            s.push('\n');
        }
        s
    }
}

/// Runs the full threshold cascade of the clustering protocol.
pub fn run_vlc(g: &CoCitationGraph, p: &VlcParams) -> Result<VlcResult> {
    p.validate()?;
    if g.node_count() == 0 {
        return Err(Error::InvalidParams("co-citation graph has no nodes".into()));
    }

    let mut clusters = ClusterSet::new(ClusterMethod::Cocitation, g.universe());
    let mut trace = Vec::new();
    let mut retained_nodes = 0usize;
    let mut dropped_small = 0usize;

    if g.edge_count() == 0 {
        // Every node is a singleton; nothing can reach min_size.
        return Ok(VlcResult {
            clusters,
            trace,
            retained_nodes: 0,
            dropped_small_nodes: g.node_count(),
            dropped_oversized_nodes: 0,
        });
    }

    let mut sorted_weights: Vec<f64> = g.edges().iter().map(|e| e.ncf).collect();
    sorted_weights.sort_by(f64::total_cmp);

    let mut in_play: Vec<u32> = g.nodes().to_vec();
    let mut next_cluster = 0u32;

    for q in p.quantiles() {
        if in_play.is_empty() {
            break;
        }
        let threshold = threshold_of_sorted(&sorted_weights, q);
        let comps = components_at(g, threshold, &in_play);
        let mut carried: Vec<u32> = Vec::new();
        let mut emitted = 0usize;
        for comp in comps {
            if comp.len() > p.mcs {
                carried.extend_from_slice(&comp);
            } else if comp.len() >= p.min_size {
                for &v in &comp {
                    clusters.assign(v, next_cluster);
                }
                retained_nodes += comp.len();
                next_cluster += 1;
                emitted += 1;
            } else {
                dropped_small += comp.len();
            }
        }
        carried.sort_unstable();
        trace.push(VlcRound {
            quantile: q,
            threshold_value: threshold,
            emitted,
            carried_over_nodes: carried.len(),
        });
        in_play = carried;
    }

    let dropped_oversized = in_play.len();
    if dropped_oversized > 0 {
        log::warn!(
            "schedule exhausted with {dropped_oversized} nodes still in oversized components; dropped"
        );
    }
    debug_assert_eq!(
        retained_nodes + dropped_small + dropped_oversized,
        g.node_count()
    );

    Ok(VlcResult {
        clusters,
        trace,
        retained_nodes,
        dropped_small_nodes: dropped_small,
        dropped_oversized_nodes: dropped_oversized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocitation::CoEdge;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn graph(universe: usize, nodes: &[u32], edges: &[(u32, u32, f64)]) -> CoCitationGraph {
        CoCitationGraph::from_parts(
            universe,
            nodes.to_vec(),
            edges
                .iter()
                .map(|&(a, b, ncf)| CoEdge { a, b, raw: 1, ncf })
                .collect(),
        )
    }

    #[test]
    fn quantile_examples() {
        let w: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
        assert_eq!(quantile_threshold(&w, 0.5).unwrap(), 0.5);
        assert_eq!(quantile_threshold(&w, 1.0).unwrap(), 1.0);
        assert_eq!(quantile_threshold(&w, 1e-12).unwrap(), 0.1);
        assert!(matches!(quantile_threshold(&[], 0.5), Err(Error::EmptyWeights)));
        assert!(matches!(quantile_threshold(&w, 1.5), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn default_quantile_ladder() {
        let qs = VlcParams::default().quantiles();
        let expected = [
            0.5, 0.6, 0.7, 0.8, 0.9, 0.91, 0.92, 0.93, 0.94, 0.95, 0.96, 0.97, 0.98, 0.99, 0.999,
        ];
        assert_eq!(qs.len(), expected.len());
        for (got, want) in qs.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn components_triangle_and_pendant() {
        let g = graph(
            5,
            &[0, 1, 2, 3, 4],
            &[(0, 1, 0.9), (1, 2, 0.9), (0, 2, 0.9), (3, 4, 0.1)],
        );
        let comps = components_at(&g, 0.5, g.nodes());
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn components_threshold_zero_is_full_graph() {
        let g = graph(5, &[0, 1, 2, 3, 4], &[(0, 1, 0.2), (1, 2, 0.4), (3, 4, 0.9)]);
        let comps = components_at(&g, 0.0, g.nodes());
        // {3,4} has the heavier internal edge, so it sorts first.
        assert_eq!(comps, vec![vec![3, 4], vec![0, 1, 2]]);
    }

    struct UnionFind {
        parent: Vec<usize>,
    }

    impl UnionFind {
        fn new(n: usize) -> Self {
            UnionFind { parent: (0..n).collect() }
        }
        fn find(&mut self, x: usize) -> usize {
            let mut x = x;
            while self.parent[x] != x {
                self.parent[x] = self.parent[self.parent[x]];
                x = self.parent[x];
            }
            x
        }
        fn union(&mut self, a: usize, b: usize) {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra != rb {
                self.parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }

    #[test]
    fn components_match_union_find_oracle() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let n = rng.random_range(2..1000usize);
            let nodes: Vec<u32> = (0..n as u32).collect();
            let mut edges = Vec::new();
            for _ in 0..rng.random_range(0..3 * n) {
                let a = rng.random_range(0..n as u32);
                let b = rng.random_range(0..n as u32);
                if a != b {
                    edges.push((a.min(b), a.max(b), rng.random::<f64>()));
                }
            }
            edges.sort_by_key(|x| (x.0, x.1));
            edges.dedup_by_key(|e| (e.0, e.1));
            let g = graph(n, &nodes, &edges);
            let threshold = 0.3;

            let mut uf = UnionFind::new(n);
            for &(a, b, w) in &edges {
                if w >= threshold {
                    uf.union(a as usize, b as usize);
                }
            }
            let mut oracle: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
            for v in 0..n {
                oracle.entry(uf.find(v)).or_default().push(v as u32);
            }
            let mut oracle: Vec<Vec<u32>> = oracle.into_values().collect();
            oracle.sort();

            let mut got = components_at(&g, threshold, g.nodes());
            got.sort();
            assert_eq!(got, oracle);
        }
    }

    #[test]
    fn vlc_two_cliques_with_bridge() {
        // cliques {0,1,2} at 0.9 and {3,4,5} at 0.8 joined by a 0.1 bridge
        let g = graph(
            6,
            &[0, 1, 2, 3, 4, 5],
            &[
                (0, 1, 0.9),
                (0, 2, 0.9),
                (1, 2, 0.9),
                (3, 4, 0.8),
                (3, 5, 0.8),
                (4, 5, 0.8),
                (2, 3, 0.1),
            ],
        );
        let res = run_vlc(&g, &VlcParams::default()).unwrap();
        let clusters = res.clusters.clusters();
        assert_eq!(clusters.len(), 2);
        assert_eq!(clusters[&0], vec![0, 1, 2]); // heavier clique emitted first
        assert_eq!(clusters[&1], vec![3, 4, 5]);
        assert_eq!(res.trace[0].emitted, 2);
        assert_eq!(res.trace[0].threshold_value, 0.8); // median of the 7 weights
        assert_eq!(res.retained_nodes, 6);
    }

    #[test]
    fn vlc_single_pair_discarded() {
        let g = graph(2, &[0, 1], &[(0, 1, 0.5)]);
        let res = run_vlc(&g, &VlcParams::default()).unwrap();
        assert_eq!(res.clusters.assigned_count(), 0);
        assert_eq!(res.dropped_small_nodes, 2);
    }

    #[test]
    fn vlc_edgeless_graph_drops_everything() {
        let g = graph(4, &[0, 1, 2, 3], &[]);
        let res = run_vlc(&g, &VlcParams::default()).unwrap();
        assert_eq!(res.clusters.assigned_count(), 0);
        assert_eq!(res.dropped_small_nodes, 4);
        assert!(res.trace.is_empty());
    }

    fn chain_graph(n: usize) -> CoCitationGraph {
        // weights strictly increase along the chain
        let nodes: Vec<u32> = (0..n as u32).collect();
        let edges: Vec<(u32, u32, f64)> = (0..n - 1)
            .map(|i| (i as u32, i as u32 + 1, (i + 1) as f64 / n as f64))
            .collect();
        graph(n, &nodes, &edges)
    }

    #[test]
    fn vlc_chain_respects_mcs() {
        let g = chain_graph(500);
        for mcs in [10usize, 50, 200] {
            let params = VlcParams { mcs, retain_below: mcs.min(100), ..VlcParams::default() };
            let res = run_vlc(&g, &params).unwrap();
            let clusters = res.clusters.clusters();
            assert!(!clusters.is_empty(), "mcs={mcs} retained nothing");
            for members in clusters.values() {
                assert!(
                    members.len() >= 3 && members.len() <= mcs,
                    "mcs={mcs}: cluster size {} out of range",
                    members.len()
                );
            }
            assert_eq!(
                res.retained_nodes + res.dropped_small_nodes + res.dropped_oversized_nodes,
                g.node_count()
            );
        }
    }

    fn random_cograph(rng: &mut StdRng, n: usize, e: usize) -> CoCitationGraph {
        let nodes: Vec<u32> = (0..n as u32).collect();
        let mut edges = Vec::new();
        for _ in 0..e {
            let a = rng.random_range(0..n as u32);
            let b = rng.random_range(0..n as u32);
            if a != b {
                edges.push((a.min(b), a.max(b), rng.random::<f64>()));
            }
        }
        edges.sort_by_key(|x| (x.0, x.1));
        edges.dedup_by_key(|e| (e.0, e.1));
        graph(n, &nodes, &edges)
    }

    #[test]
    fn rising_threshold_refines_components() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..10 {
            let g = random_cograph(&mut rng, 80, 160);
            let mut weights: Vec<f64> = g.edges().iter().map(|e| e.ncf).collect();
            weights.sort_by(f64::total_cmp);
            let qs = VlcParams::default().quantiles();
            let mut prev: Option<Vec<Vec<u32>>> = None;
            for q in qs {
                let t = threshold_of_sorted(&weights, q);
                let comps = components_at(&g, t, g.nodes());
                if let Some(coarse) = &prev {
                    let mut coarse_of = vec![usize::MAX; g.node_count()];
                    for (i, c) in coarse.iter().enumerate() {
                        for &v in c {
                            coarse_of[v as usize] = i;
                        }
                    }
                    for fine in &comps {
                        let first = coarse_of[fine[0] as usize];
                        assert!(fine.iter().all(|&v| coarse_of[v as usize] == first));
                    }
                }
                prev = Some(comps);
            }
        }
    }

    #[test]
    fn node_conservation() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let g = random_cograph(&mut rng, 120, 300);
            let params = VlcParams { mcs: 20, retain_below: 20, ..VlcParams::default() };
            let res = run_vlc(&g, &params).unwrap();
            assert_eq!(
                res.retained_nodes + res.dropped_small_nodes + res.dropped_oversized_nodes,
                g.node_count()
            );
            // disjointness: assigned_count equals the sum of cluster sizes
            let total: usize = res.clusters.clusters().values().map(|m| m.len()).sum();
            assert_eq!(total, res.clusters.assigned_count());
            assert_eq!(total, res.retained_nodes);
        }
    }

    #[test]
    fn vlc_is_thread_count_independent() {
        let mut rng = StdRng::seed_from_u64(37);
        let g = random_cograph(&mut rng, 150, 400);
        let mut outputs = Vec::new();
        for threads in [1usize, 4] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let res = pool.install(|| run_vlc(&g, &VlcParams::default()).unwrap());
            outputs.push((res.trace_jsonl(), format!("{:?}", res.clusters.clusters())));
        }
        assert_eq!(outputs[0], outputs[1]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn retained_sizes_always_in_bounds(seed in 0u64..500) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.random_range(4..100usize);
            let g = random_cograph(&mut rng, n, 3 * n);
            let params = VlcParams { mcs: 12, retain_below: 10, ..VlcParams::default() };
            let res = run_vlc(&g, &params).unwrap();
            for members in res.clusters.clusters().values() {
                prop_assert!(members.len() >= params.min_size && members.len() <= params.mcs);
            }
        }
    }
}

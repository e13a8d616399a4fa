//! Agglomerative merging of co-citation clusters: each cluster becomes a
//! node, inter-cluster edge weight is the maximum co-citation weight across
//! the two member sets, and the heaviest edge is merged round by round up to
//! a fixed round budget (the budget guards against giant outlier clusters).

use crate::cocitation::CoCitationGraph;
use crate::corpus::{ClusterMethod, ClusterSet};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

/// Clusters as nodes with max-linkage inter-cluster weights.
#[derive(Debug, Clone)]
pub struct ClusterGraph {
    universe: usize,
    method: ClusterMethod,
    members: BTreeMap<u32, Vec<u32>>,
    weights: BTreeMap<(u32, u32), f64>,
}

impl ClusterGraph {
    /// Builds the cluster graph from co-citation edges; clusters smaller than
    /// `min_input_size` are excluded.
    pub fn build(
        g: &CoCitationGraph,
        clusters: &ClusterSet,
        min_input_size: usize,
    ) -> ClusterGraph {
        let members: BTreeMap<u32, Vec<u32>> = clusters
            .clusters()
            .into_iter()
            .filter(|(_, m)| m.len() >= min_input_size)
            .collect();
        let mut of_node: HashMap<u32, u32> = HashMap::new();
        for (&c, m) in &members {
            for &v in m {
                of_node.insert(v, c);
            }
        }
        let mut weights: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for e in g.edges() {
            if let (Some(&ca), Some(&cb)) = (of_node.get(&e.a), of_node.get(&e.b)) {
                if ca != cb {
                    let key = (ca.min(cb), ca.max(cb));
                    let w = weights.entry(key).or_insert(f64::NEG_INFINITY);
                    if e.ncf > *w {
                        *w = e.ncf;
                    }
                }
            }
        }
        ClusterGraph { universe: g.universe(), method: clusters.method(), members, weights }
    }

    /// Assembles a cluster graph directly from member sets and inter-cluster
    /// weights (canonicalized internally).
    pub fn from_parts(
        universe: usize,
        method: ClusterMethod,
        members: BTreeMap<u32, Vec<u32>>,
        edges: impl IntoIterator<Item = (u32, u32, f64)>,
    ) -> ClusterGraph {
        let mut weights: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for (a, b, w) in edges {
            assert!(a != b, "self edge in cluster graph");
            let key = (a.min(b), a.max(b));
            let cur = weights.entry(key).or_insert(f64::NEG_INFINITY);
            if w > *cur {
                *cur = w;
            }
        }
        ClusterGraph { universe, method, members, weights }
    }

    pub fn cluster_count(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &BTreeMap<u32, Vec<u32>> {
        &self.members
    }

    pub fn weights(&self) -> &BTreeMap<(u32, u32), f64> {
        &self.weights
    }

    pub fn universe(&self) -> usize {
        self.universe
    }
}

/// One executed merge, in the order performed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MergeEvent {
    pub round: usize,
    pub merged_a: u32,
    pub merged_b: u32,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct AggloResult {
    pub clusters: ClusterSet,
    pub merges: Vec<MergeEvent>,
}

impl AggloResult {
    pub fn merges_jsonl(&self) -> String {
        let mut s = String::new();
        for m in &self.merges {
            s.push_str(&serde_json::to_string(m).expect("merge event serializes"));
            s.push('\n');
        }
        s
    }
}

// Max-heap entry: heavier weight wins, ties go to the smallest pair of ids.
#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEdge {
    w: f64,
    a: u32,
    b: u32,
}

impl Eq for HeapEdge {}

impl Ord for HeapEdge {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.w
            .total_cmp(&other.w)
            .then_with(|| other.a.cmp(&self.a))
            .then_with(|| other.b.cmp(&self.b))
    }
}

impl PartialOrd for HeapEdge {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Performs `min(rounds, possible merges)` max-edge-weight merges. The merged
/// cluster keeps the smaller constituent id, and its weight to any third
/// cluster becomes the maximum of the two prior weights.
pub fn merge_rounds(cg: &ClusterGraph, rounds: usize) -> Result<AggloResult> {
    let mut members: HashMap<u32, Vec<u32>> =
        cg.members.iter().map(|(&c, m)| (c, m.clone())).collect();
    let mut weights: HashMap<(u32, u32), f64> =
        cg.weights.iter().map(|(&k, &w)| (k, w)).collect();
    let mut adj: HashMap<u32, BTreeSet<u32>> = HashMap::new();
    for &(a, b) in cg.weights.keys() {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }

    let mut heap: BinaryHeap<HeapEdge> =
        weights.iter().map(|(&(a, b), &w)| HeapEdge { w, a, b }).collect();

    let mut merges = Vec::new();
    let mut round = 0usize;
    while round < rounds {
        let edge = loop {
            match heap.pop() {
                Some(e) => {
                    // Lazy deletion: stale entries no longer match the live
                    // weight table.
                    if weights.get(&(e.a, e.b)) == Some(&e.w) {
                        break Some(e);
                    }
                }
                None => break None,
            }
        };
        let Some(HeapEdge { w, a, b }) = edge else {
            break;
        };
        round += 1;
        merges.push(MergeEvent { round, merged_a: a, merged_b: b, weight: w });

        // a < b by canonical storage; a survives.
        let absorbed = members.remove(&b).expect("absorbed cluster exists");
        members.get_mut(&a).expect("surviving cluster exists").extend(absorbed);

        weights.remove(&(a, b));
        let b_neighbors = adj.remove(&b).unwrap_or_default();
        adj.get_mut(&a).map(|s| s.remove(&b));
        for x in b_neighbors {
            if x == a {
                continue;
            }
            let old_bx = weights
                .remove(&(b.min(x), b.max(x)))
                .expect("edge weight tracked for adjacency");
            adj.get_mut(&x).map(|s| {
                s.remove(&b);
                s.insert(a)
            });
            adj.get_mut(&a).map(|s| s.insert(x));
            let key = (a.min(x), a.max(x));
            let new_w = match weights.get(&key) {
                Some(&ax) => ax.max(old_bx),
                None => old_bx,
            };
            weights.insert(key, new_w);
            heap.push(HeapEdge { w: new_w, a: key.0, b: key.1 });
        }
    }

    let mut clusters = ClusterSet::new(cg.method, cg.universe);
    for (cid, m) in members.iter() {
        for &v in m {
            clusters.assign(v, *cid);
        }
    }
    Ok(AggloResult { clusters, merges })
}

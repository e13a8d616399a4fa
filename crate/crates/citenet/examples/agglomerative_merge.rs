//! Agglomerative merging of clusters by maximum inter-cluster edge weight,
//! with the recalculated-maximum rule and a fixed round budget.
//!
//! ```bash
//! cargo run -p citenet --example agglomerative_merge
//! ```

use citenet::agglomerate::{merge_rounds, ClusterGraph};
use citenet::corpus::ClusterMethod;
use std::collections::BTreeMap;

fn main() -> citenet::Result<()> {
    // Five clusters with weighted inter-cluster edges.
    let members: BTreeMap<u32, Vec<u32>> = (0..5u32).map(|c| (c, vec![c * 10, c * 10 + 1])).collect();
    let edges = [
        (0u32, 1u32, 0.9),
        (0, 2, 0.3),
        (1, 2, 0.5),
        (2, 3, 0.85),
        (3, 4, 0.2),
        (1, 4, 0.6),
    ];
    let cg = ClusterGraph::from_parts(50, ClusterMethod::Cocitation, members, edges);

    for rounds in [0usize, 1, 2, 600] {
        let res = merge_rounds(&cg, rounds)?;
        println!("rounds budget {rounds}:");
        for m in &res.merges {
            println!(
                "  round {}: merged {} + {} at weight {:.2}",
                m.round, m.merged_a, m.merged_b, m.weight
            );
        }
        let sizes: Vec<usize> = res.clusters.clusters().values().map(Vec::len).collect();
        println!("  -> {} clusters with sizes {:?}\n", sizes.len(), sizes);
    }

    // The merge log is what the pipeline writes as JSON lines.
    let res = merge_rounds(&cg, 2)?;
    print!("{}", res.merges_jsonl());
    Ok(())
}

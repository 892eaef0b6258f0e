use std::collections::BinaryHeap;

use super::{
    assign_leftovers, priority, select_seeds, PartitionConfig, PartitionSet, Provenance, UNASSIGNED,
};
use crate::error::Result;
use crate::graph::Graph;

/// Large-degree-first growth.
///
/// The unassigned vertex of largest degree that touches some partition joins
/// the partition of its largest-degree assigned neighbor (ties go to the
/// lower partition index). Candidates live in a max-heap; degrees never
/// change, so an entry only goes stale by being assigned.
pub fn partition_ldfs(g: &Graph, cfg: &PartitionConfig) -> Result<PartitionSet> {
    cfg.validate(g)?;
    let k = cfg.k;
    let seeds = select_seeds(g, k)?;
    let n = g.vertex_count();
    let mut part = vec![UNASSIGNED; n];
    let mut sizes = vec![1usize; k];
    let mut queued = vec![false; n];
    let mut heap = BinaryHeap::new();
    for (i, &s) in seeds.iter().enumerate() {
        part[s as usize] = i as u32;
    }
    for &s in &seeds {
        for &w in g.neighbors(s) {
            if part[w as usize] == UNASSIGNED && !queued[w as usize] {
                queued[w as usize] = true;
                heap.push(priority(g, w));
            }
        }
    }
    while let Some((_, std::cmp::Reverse(v))) = heap.pop() {
        let mut target = (0usize, UNASSIGNED);
        for &w in g.neighbors(v) {
            let p = part[w as usize];
            if p == UNASSIGNED {
                continue;
            }
            let d = g.degree(w);
            if target.1 == UNASSIGNED || d > target.0 || (d == target.0 && p < target.1) {
                target = (d, p);
            }
        }
        let p = target.1;
        debug_assert_ne!(p, UNASSIGNED, "queued vertex has an assigned neighbor");
        part[v as usize] = p;
        sizes[p as usize] += 1;
        for &w in g.neighbors(v) {
            if part[w as usize] == UNASSIGNED && !queued[w as usize] {
                queued[w as usize] = true;
                heap.push(priority(g, w));
            }
        }
    }
    let leftover_components = assign_leftovers(g, &mut part, &mut sizes);
    PartitionSet::from_assignment(
        g,
        k,
        &part,
        Provenance {
            algorithm: cfg.algorithm,
            seed: cfg.seed,
            build_time: None,
            leftover_components,
        },
    )
}

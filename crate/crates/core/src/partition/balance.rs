use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{
    assign_leftovers, priority, select_seeds, PartitionConfig, PartitionSet, Provenance, UNASSIGNED,
};
use crate::error::Result;
use crate::graph::Graph;

/// Round-robin growth by one vertex per turn.
///
/// On its turn a partition merges its unassigned neighbor of largest degree;
/// a partition with no unassigned neighbor skips the turn.
pub fn partition_balance(g: &Graph, cfg: &PartitionConfig) -> Result<PartitionSet> {
    cfg.validate(g)?;
    let k = cfg.k;
    let seeds = select_seeds(g, k)?;
    let mut part = vec![UNASSIGNED; g.vertex_count()];
    let mut sizes = vec![1usize; k];
    let mut frontier: Vec<BinaryHeap<(usize, Reverse<u32>)>> = vec![BinaryHeap::new(); k];
    for (i, &s) in seeds.iter().enumerate() {
        part[s as usize] = i as u32;
    }
    for (i, &s) in seeds.iter().enumerate() {
        for &w in g.neighbors(s) {
            if part[w as usize] == UNASSIGNED {
                frontier[i].push(priority(g, w));
            }
        }
    }
    let mut unassigned = g.vertex_count() - k;
    while unassigned > 0 {
        let mut acted = false;
        for i in 0..k {
            // Entries already taken by any partition are stale.
            let next = loop {
                match frontier[i].pop() {
                    Some((_, Reverse(v))) if part[v as usize] == UNASSIGNED => break Some(v),
                    Some(_) => continue,
                    None => break None,
                }
            };
            let Some(v) = next else { continue };
            part[v as usize] = i as u32;
            sizes[i] += 1;
            unassigned -= 1;
            acted = true;
            for &w in g.neighbors(v) {
                if part[w as usize] == UNASSIGNED {
                    frontier[i].push(priority(g, w));
                }
            }
        }
        if !acted {
            break;
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

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Algorithm;
    use super::*;

    fn run(g: &Graph) -> PartitionSet {
        partition_balance(g, &PartitionConfig::new(Algorithm::Balance, 2)).unwrap()
    }

    #[test]
    fn path_trace() {
        let ps = run(&path5());
        assert_eq!(ps.members(0), &[0, 1, 2]);
        assert_eq!(ps.members(1), &[3, 4]);
    }

    #[test]
    fn cycle_splits_evenly() {
        let ps = run(&cycle(6));
        assert_eq!(ps.member_count(0), 3);
        assert_eq!(ps.member_count(1), 3);
    }

    #[test]
    fn disjoint_triangles() {
        let ps = run(&two_triangles());
        assert_eq!(ps.members(0), &[0, 1, 2]);
        assert_eq!(ps.members(1), &[3, 4, 5]);
    }
}

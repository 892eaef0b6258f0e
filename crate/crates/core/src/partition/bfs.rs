use super::{assign_leftovers, select_seeds, PartitionConfig, PartitionSet, Provenance, UNASSIGNED};
use crate::error::Result;
use crate::graph::Graph;

/// Round-robin breadth-first growth.
///
/// On its turn a partition absorbs every still-unassigned neighbor of its
/// members; the vertices it absorbed are expanded on its next turn.
pub fn partition_bfs(g: &Graph, cfg: &PartitionConfig) -> Result<PartitionSet> {
    cfg.validate(g)?;
    let k = cfg.k;
    let seeds = select_seeds(g, k)?;
    let mut part = vec![UNASSIGNED; g.vertex_count()];
    let mut sizes = vec![1usize; k];
    let mut frontier: Vec<Vec<u32>> = seeds.iter().map(|&s| vec![s]).collect();
    for (i, &s) in seeds.iter().enumerate() {
        part[s as usize] = i as u32;
    }
    let mut unassigned = g.vertex_count() - k;
    let mut next = Vec::new();
    while unassigned > 0 {
        let mut progressed = false;
        for i in 0..k {
            next.clear();
            for &u in &frontier[i] {
                for &w in g.neighbors(u) {
                    if part[w as usize] == UNASSIGNED {
                        part[w as usize] = i as u32;
                        next.push(w);
                    }
                }
            }
            unassigned -= next.len();
            sizes[i] += next.len();
            progressed |= !next.is_empty();
            std::mem::swap(&mut frontier[i], &mut next);
        }
        if !progressed {
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
        partition_bfs(g, &PartitionConfig::new(Algorithm::Bfs, 2)).unwrap()
    }

    #[test]
    fn disjoint_triangles_split_cleanly() {
        let ps = run(&two_triangles());
        assert_eq!(ps.members(0), &[0, 1, 2]);
        assert_eq!(ps.members(1), &[3, 4, 5]);
    }

    #[test]
    fn bridged_triangles_first_partition_takes_bridge_end() {
        let ps = run(&bridged_triangles());
        assert_eq!(ps.members(0), &[0, 1, 2, 3]);
        assert_eq!(ps.members(1), &[4, 5]);
    }

    #[test]
    fn path_trace() {
        let ps = run(&path5());
        assert_eq!(ps.members(0), &[0, 1, 2]);
        assert_eq!(ps.members(1), &[3, 4]);
    }

    #[test]
    fn unreachable_component_goes_to_smallest() {
        // Square 0-1-2-3 with seeds 0 and 2, plus an unseeded edge 4-5.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5)]).unwrap();
        let ps = run(&g);
        assert_eq!(ps.provenance.leftover_components, 1);
        assert_eq!(ps.total_members(), 6);
        assert!(ps.members(1).contains(&4) && ps.members(1).contains(&5));
    }
}

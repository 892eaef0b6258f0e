use super::PartitionSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// One row of a vertex-neighbor table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberRecord {
    pub vertex: u32,
    pub is_replica: bool,
    start: usize,
    nop_len: u32,
    end: usize,
}

/// Vertex-neighbor tables for every partition plus the vertex-partition
/// table. This is all a walker sees of the partitioning.
///
/// For a member `v` of partition `p`, `NoP` holds the neighbors reached over
/// edges owned by `p` (both endpoints in `p`) and `NoOP` the remaining graph
/// neighbors. Both lists are ascending and together they are exactly the
/// neighbor list of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTables {
    records: Vec<Vec<MemberRecord>>,
    /// NoP followed by NoOP for every record, back to back.
    arena: Vec<u32>,
    vp_offsets: Vec<usize>,
    /// `(partition, record index)`, ascending by partition.
    vp_entries: Vec<(u32, u32)>,
    owned_edges: Vec<usize>,
    degree_sum: usize,
}

impl PartitionTables {
    pub fn build(g: &Graph, ps: &PartitionSet) -> Result<PartitionTables> {
        let n = g.vertex_count();
        if ps.vertex_count() != n {
            return Err(Error::Integrity(format!(
                "partition set covers {} vertices, graph has {n}",
                ps.vertex_count()
            )));
        }
        let k = ps.k();
        let owned_total: usize = (0..k).map(|p| ps.owned_edge_count(p)).sum();
        if owned_total != g.edge_count() {
            return Err(Error::Integrity(format!(
                "partitions own {owned_total} edges, graph has {}",
                g.edge_count()
            )));
        }
        let mut records: Vec<Vec<MemberRecord>> = Vec::with_capacity(k);
        let mut arena = Vec::new();
        let mut noop = Vec::new();
        for p in 0..k {
            let pu = p as u32;
            let mut rows = Vec::with_capacity(ps.member_count(p));
            for (&v, &d_in) in ps.members(p).iter().zip(ps.internal_degrees(p)) {
                let start = arena.len();
                noop.clear();
                for (&w, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
                    if ps.edge_owner(e) == pu && ps.is_member(pu, w) {
                        arena.push(w);
                    } else {
                        noop.push(w);
                    }
                }
                let nop_len = arena.len() - start;
                if nop_len != d_in as usize {
                    return Err(Error::Integrity(format!(
                        "vertex {v} in partition {p}: {nop_len} owned neighbors but d_in = {d_in}"
                    )));
                }
                arena.extend_from_slice(&noop);
                rows.push(MemberRecord {
                    vertex: v,
                    is_replica: ps.is_replica(pu, v),
                    start,
                    nop_len: nop_len as u32,
                    end: arena.len(),
                });
            }
            records.push(rows);
        }

        let mut counts = vec![0usize; n];
        for rows in &records {
            for r in rows {
                counts[r.vertex as usize] += 1;
            }
        }
        let mut vp_offsets = Vec::with_capacity(n + 1);
        vp_offsets.push(0);
        for (v, c) in counts.iter().enumerate() {
            if *c == 0 {
                return Err(Error::Integrity(format!("vertex {v} belongs to no partition")));
            }
            vp_offsets.push(vp_offsets[v] + c);
        }
        let mut cursor = vp_offsets[..n].to_vec();
        let mut vp_entries = vec![(0u32, 0u32); vp_offsets[n]];
        for (p, rows) in records.iter().enumerate() {
            for (i, r) in rows.iter().enumerate() {
                let slot = &mut cursor[r.vertex as usize];
                vp_entries[*slot] = (p as u32, i as u32);
                *slot += 1;
            }
        }
        Ok(PartitionTables {
            records,
            arena,
            vp_offsets,
            vp_entries,
            owned_edges: (0..k).map(|p| ps.owned_edge_count(p)).collect(),
            degree_sum: g.degree_sum(),
        })
    }

    pub fn k(&self) -> usize {
        self.records.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vp_offsets.len() - 1
    }

    pub fn degree_sum(&self) -> usize {
        self.degree_sum
    }

    pub fn records(&self, p: usize) -> &[MemberRecord] {
        &self.records[p]
    }

    /// `Ne` of partition `p`.
    pub fn owned_edge_count(&self, p: usize) -> usize {
        self.owned_edges[p]
    }

    pub fn nop(&self, r: &MemberRecord) -> &[u32] {
        &self.arena[r.start..r.start + r.nop_len as usize]
    }

    pub fn noop(&self, r: &MemberRecord) -> &[u32] {
        &self.arena[r.start + r.nop_len as usize..r.end]
    }

    /// NoP followed by NoOP; its length is the vertex degree.
    #[inline]
    pub fn neighbors(&self, r: &MemberRecord) -> &[u32] {
        &self.arena[r.start..r.end]
    }

    #[inline]
    pub(crate) fn entries(&self, v: u32) -> &[(u32, u32)] {
        let v = v as usize;
        &self.vp_entries[self.vp_offsets[v]..self.vp_offsets[v + 1]]
    }

    /// The vertex-partition table row of `v`, ascending.
    pub fn partitions_of(&self, v: u32) -> Vec<u32> {
        self.entries(v).iter().map(|&(p, _)| p).collect()
    }

    #[inline]
    pub fn record(&self, p: u32, v: u32) -> Option<&MemberRecord> {
        self.entries(v)
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(q, i)| &self.records[q as usize][i as usize])
    }

    #[inline]
    pub(crate) fn record_at(&self, entry: (u32, u32)) -> &MemberRecord {
        &self.records[entry.0 as usize][entry.1 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{partition, Algorithm, PartitionConfig, PartitionSet, Provenance};
    use super::*;

    /// Two triangles sharing v3 (the cut vertex): {0,1,3} and {2,3,4}
    /// plus the edge 1-2 across, with v3 replicated in both partitions.
    #[test]
    fn cut_vertex_records() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 3), (1, 3), (2, 3), (2, 4), (3, 4), (1, 2)])
            .unwrap();
        let acquired = vec![vec![0], vec![0], vec![1], vec![0, 1], vec![1]];
        let owners: Vec<Option<u32>> = g
            .edges()
            .iter()
            .map(|&(u, v)| match (u, v) {
                (0, 1) | (0, 3) | (1, 3) => Some(0),
                (1, 2) => None,
                _ => Some(1),
            })
            .collect();
        let prov = Provenance {
            algorithm: Algorithm::VertexCut,
            seed: 0,
            build_time: None,
            leftover_components: 0,
        };
        let ps = PartitionSet::from_memberships(&g, 2, acquired, owners, prov).unwrap();
        let t = PartitionTables::build(&g, &ps).unwrap();
        assert_eq!(t.partitions_of(3), vec![0, 1]);
        let r0 = t.record(0, 3).unwrap();
        assert_eq!(t.nop(r0), &[0, 1]);
        assert_eq!(t.noop(r0), &[2, 4]);
        assert!(!r0.is_replica);
        let r1 = t.record(1, 3).unwrap();
        assert_eq!(t.nop(r1), &[2, 4]);
        assert_eq!(t.noop(r1), &[0, 1]);
        assert!(r1.is_replica);
        // Cross edge 1-2 is in nobody's NoP.
        assert_eq!(t.noop(t.record(0, 1).unwrap()), &[2]);
    }

    #[test]
    fn structural_invariants_for_all_algorithms() {
        let g = crate::graph::generate_power_law(300, 3, 2).unwrap();
        for a in Algorithm::ALL {
            let ps = partition(&g, &PartitionConfig::new(a, 4).with_seed(5)).unwrap();
            let t = PartitionTables::build(&g, &ps).unwrap();
            let mut nop_total = 0;
            for p in 0..t.k() {
                for r in t.records(p) {
                    let mut all: Vec<u32> = t.neighbors(r).to_vec();
                    all.sort_unstable();
                    assert_eq!(all, g.neighbors(r.vertex));
                    assert_eq!(t.nop(r).len(), ps.d_in(p, r.vertex));
                    nop_total += t.nop(r).len();
                }
            }
            assert_eq!(nop_total, 2 * (g.edge_count() - ps.cross_edge_count(&g)), "{a}");
            for v in 0..g.vertex_count() as u32 {
                assert_eq!(t.partitions_of(v), ps.memberships(v));
            }
        }
    }

    #[test]
    fn uncut_interior_vertices_have_empty_noop() {
        let g = two_triangles();
        let ps = partition(&g, &PartitionConfig::new(Algorithm::Bfs, 2)).unwrap();
        let t = PartitionTables::build(&g, &ps).unwrap();
        for p in 0..2 {
            for r in t.records(p) {
                assert!(t.noop(r).is_empty());
            }
        }
    }

    #[test]
    fn mismatched_graph_is_rejected() {
        let g = two_triangles();
        let ps = partition(&g, &PartitionConfig::new(Algorithm::Bfs, 2)).unwrap();
        let other = path5();
        assert!(matches!(PartitionTables::build(&other, &ps), Err(Error::Integrity(_))));
    }
}

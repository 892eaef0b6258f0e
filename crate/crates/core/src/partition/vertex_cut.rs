use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{priority, select_seeds, PartitionConfig, PartitionSet, Provenance, UNASSIGNED};
use crate::error::Result;
use crate::graph::Graph;

struct State<'g> {
    g: &'g Graph,
    k: usize,
    n: usize,
    /// Partitions holding each vertex, in acquisition order.
    acquired: Vec<Vec<u32>>,
    owner: Vec<u32>,
    frontier: Vec<BinaryHeap<(usize, Reverse<u32>)>>,
    /// `in_frontier[p * n + v]`; heap entries without the flag are stale.
    in_frontier: Vec<bool>,
    sizes: Vec<usize>,
}

impl State<'_> {
    fn is_member(&self, p: u32, v: u32) -> bool {
        self.acquired[v as usize].contains(&p)
    }

    fn enqueue(&mut self, p: u32, v: u32) {
        let slot = p as usize * self.n + v as usize;
        if !self.in_frontier[slot] {
            self.in_frontier[slot] = true;
            self.frontier[p as usize].push(priority(self.g, v));
        }
    }

    fn dequeue(&mut self, p: u32) -> Option<u32> {
        while let Some((_, Reverse(v))) = self.frontier[p as usize].pop() {
            let slot = p as usize * self.n + v as usize;
            if self.in_frontier[slot] {
                self.in_frontier[slot] = false;
                if !self.is_member(p, v) {
                    return Some(v);
                }
            }
        }
        None
    }

    /// Adds `v` to `p` and gives `p` every unowned edge from `v` to a member of `p`.
    fn join(&mut self, p: u32, v: u32) {
        self.acquired[v as usize].push(p);
        self.sizes[p as usize] += 1;
        let g = self.g;
        for (&w, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
            if self.owner[e as usize] == UNASSIGNED && self.is_member(p, w) {
                self.owner[e as usize] = p;
            }
        }
    }

    fn merge(&mut self, p: u32, v: u32) {
        self.join(p, v);
        let g = self.g;
        for &w in g.neighbors(v) {
            if !self.is_member(p, w) {
                self.enqueue(p, w);
            }
        }
    }

    fn cut(&mut self, p: u32, v: u32) {
        self.join(p, v);
        let g = self.g;
        for &w in g.neighbors(v) {
            if self.acquired[w as usize].is_empty() {
                self.enqueue(p, w);
            }
        }
        let others: Vec<u32> = self.acquired[v as usize]
            .iter()
            .copied()
            .filter(|&q| q != p)
            .collect();
        for q in others {
            for &w in g.neighbors(v) {
                if self.is_member(p, w) {
                    self.in_frontier[q as usize * self.n + w as usize] = false;
                }
            }
        }
    }
}

/// Round-robin growth that cuts vertices instead of skipping them.
///
/// On its turn a partition takes the largest-degree vertex of its neighbor
/// set. An unassigned vertex is merged and all of its neighbors outside the
/// partition join the neighbor set. A vertex already held elsewhere is cut:
/// the partition gets a replica, only its unassigned neighbors join the
/// neighbor set, and every other partition holding it drops from its own
/// neighbor set the vertex's neighbors that belong to this partition.
///
/// Whenever a vertex joins a partition, the partition takes ownership of
/// the unowned edges between the vertex and its current members. Growth
/// stops once every vertex is assigned; unseeded components then go to the
/// smallest partition, and any edge still unowned is closed by replicating
/// its lower-degree endpoint into the home partition of the other.
pub fn partition_vertexcut(g: &Graph, cfg: &PartitionConfig) -> Result<PartitionSet> {
    cfg.validate(g)?;
    let k = cfg.k;
    let n = g.vertex_count();
    let seeds = select_seeds(g, k)?;
    let mut st = State {
        g,
        k,
        n,
        acquired: vec![Vec::new(); n],
        owner: vec![UNASSIGNED; g.edge_count()],
        frontier: vec![BinaryHeap::new(); k],
        in_frontier: vec![false; k * n],
        sizes: vec![0; k],
    };
    for (i, &s) in seeds.iter().enumerate() {
        st.merge(i as u32, s);
    }
    let mut unassigned = n - k;
    while unassigned > 0 {
        let mut acted = false;
        for i in 0..st.k as u32 {
            let Some(v) = st.dequeue(i) else { continue };
            acted = true;
            if st.acquired[v as usize].is_empty() {
                st.merge(i, v);
                unassigned -= 1;
            } else {
                st.cut(i, v);
            }
        }
        if !acted {
            break;
        }
    }

    let leftover_components = if unassigned > 0 {
        let mut part: Vec<u32> = st
            .acquired
            .iter()
            .map(|a| a.first().copied().unwrap_or(UNASSIGNED))
            .collect();
        let mut sizes = st.sizes.clone();
        let comps = super::assign_leftovers(g, &mut part, &mut sizes);
        for v in 0..n as u32 {
            if st.acquired[v as usize].is_empty() {
                st.join(part[v as usize], v);
            }
        }
        comps
    } else {
        0
    };

    // Close edges the growth phase never covered.
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if st.owner[e] != UNASSIGNED {
            continue;
        }
        let shared = st.acquired[u as usize]
            .iter()
            .copied()
            .filter(|&p| st.is_member(p, v))
            .min();
        let p = match shared {
            Some(p) => p,
            None => {
                let (small, large) = if priority(g, u) < priority(g, v) { (u, v) } else { (v, u) };
                let p = st.acquired[large as usize][0];
                st.acquired[small as usize].push(p);
                st.sizes[p as usize] += 1;
                p
            }
        };
        st.owner[e] = p;
    }

    let owners = st.owner.iter().map(|&p| Some(p)).collect();
    PartitionSet::from_memberships(
        g,
        k,
        st.acquired,
        owners,
        Provenance {
            algorithm: cfg.algorithm,
            seed: cfg.seed,
            build_time: None,
            leftover_components,
        },
    )
}

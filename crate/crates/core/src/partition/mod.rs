//! Partitioning a [`Graph`] into `k` partitions.
//!
//! All algorithms except [`Algorithm::VertexCut`] place every vertex in
//! exactly one partition (edge-cut). An edge whose endpoints share a
//! partition is owned there; a cross edge is owned by the lower-indexed of
//! its endpoints' partitions but its far endpoint is not replicated, so it
//! counts toward that partition's edge total without being internal to it.
//! The vertex-cut algorithm replicates vertices instead and leaves no cross
//! edges.
//!
//! Partition ids are `0..k`. Tie-breaks are fixed everywhere: degree
//! descending, then vertex id ascending, and partitions act in index order.

mod balance;
mod bfs;
mod format;
mod ldfs;
mod random_hash;
mod seeds;
mod tables;
mod vertex_cut;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use format::{read_partition_file, write_partition_file, PartitionFile};
pub use seeds::select_seeds;
pub use tables::{MemberRecord, PartitionTables};

pub(crate) const UNASSIGNED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Bfs,
    Ldfs,
    Balance,
    VertexCut,
    RandomHash,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Bfs,
        Algorithm::Ldfs,
        Algorithm::Balance,
        Algorithm::VertexCut,
        Algorithm::RandomHash,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::Ldfs => "ldfs",
            Algorithm::Balance => "balance",
            Algorithm::VertexCut => "vertexcut",
            Algorithm::RandomHash => "random",
        }
    }

    /// Human-readable name used in comparison tables.
    pub fn title(self) -> &'static str {
        match self {
            Algorithm::Bfs => "BFS",
            Algorithm::Ldfs => "LDFS",
            Algorithm::Balance => "Balance",
            Algorithm::VertexCut => "Vertex-cut",
            Algorithm::RandomHash => "Random hash",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionConfig {
    pub algorithm: Algorithm,
    pub k: usize,
    /// Only consumed by [`Algorithm::RandomHash`]; recorded for the others.
    pub seed: u64,
}

impl PartitionConfig {
    pub fn new(algorithm: Algorithm, k: usize) -> Self {
        PartitionConfig { algorithm, k, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!("k must be at least 2, got {}", self.k)));
        }
        if self.k > g.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "k = {} exceeds the vertex count {}",
                self.k,
                g.vertex_count()
            )));
        }
        Ok(())
    }
}

/// Where a [`PartitionSet`] came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub build_time: Option<Duration>,
    /// Components with no seed that were handed to the smallest partition.
    pub leftover_components: usize,
}

/// Runs the configured algorithm and records its wall-clock time.
pub fn partition(g: &Graph, cfg: &PartitionConfig) -> Result<PartitionSet> {
    cfg.validate(g)?;
    let start = Instant::now();
    let mut ps = match cfg.algorithm {
        Algorithm::Bfs => bfs::partition_bfs(g, cfg),
        Algorithm::Ldfs => ldfs::partition_ldfs(g, cfg),
        Algorithm::Balance => balance::partition_balance(g, cfg),
        Algorithm::VertexCut => vertex_cut::partition_vertexcut(g, cfg),
        Algorithm::RandomHash => random_hash::partition_random_hash(g, cfg),
    }?;
    ps.provenance.build_time = Some(start.elapsed());
    Ok(ps)
}

pub use balance::partition_balance;
pub use bfs::partition_bfs;
pub use ldfs::partition_ldfs;
pub use random_hash::partition_random_hash;
pub use vertex_cut::partition_vertexcut;

/// `k` partitions of a graph with per-edge ownership and replica bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionSet {
    k: usize,
    members: Vec<Vec<u32>>,
    /// Internal owned degree per member, parallel to `members`.
    d_in: Vec<Vec<u32>>,
    /// Memberships of `v` are `parts[offsets[v]..offsets[v + 1]]`, ascending.
    offsets: Vec<usize>,
    parts: Vec<u32>,
    /// Position of `v` in `members[parts[j]]`, parallel to `parts`.
    slots: Vec<u32>,
    home: Vec<u32>,
    edge_owner: Vec<u32>,
    owned_edges: Vec<usize>,
    pub provenance: Provenance,
}

impl PartitionSet {
    /// Assembles and validates a partition set.
    ///
    /// `acquired[v]` lists the partitions holding `v` in the order they
    /// acquired it; the first is its home. An edge whose endpoints share a
    /// partition must be owned by one of the shared partitions. An edge whose
    /// endpoints share none is a cross edge: pass `None` and it is assigned
    /// to the lowest partition index among its endpoints' memberships.
    pub fn from_memberships(
        g: &Graph,
        k: usize,
        acquired: Vec<Vec<u32>>,
        owners: Vec<Option<u32>>,
        provenance: Provenance,
    ) -> Result<PartitionSet> {
        let mut offsets = Vec::with_capacity(acquired.len() + 1);
        offsets.push(0);
        let mut parts = Vec::with_capacity(acquired.len());
        for a in &acquired {
            parts.extend_from_slice(a);
            offsets.push(parts.len());
        }
        Self::assemble(g, k, offsets, parts, owners, provenance)
    }

    /// Edge-cut assembly from a complete vertex → partition map.
    pub(crate) fn from_assignment(
        g: &Graph,
        k: usize,
        part: &[u32],
        provenance: Provenance,
    ) -> Result<PartitionSet> {
        let owners = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (pu, pv) = (part[u as usize], part[v as usize]);
                (pu == pv).then_some(pu)
            })
            .collect();
        Self::assemble(g, k, (0..=part.len()).collect(), part.to_vec(), owners, provenance)
    }

    /// `parts[offsets[v]..offsets[v + 1]]` is `v`'s acquisition order.
    fn assemble(
        g: &Graph,
        k: usize,
        offsets: Vec<usize>,
        mut parts: Vec<u32>,
        owners: Vec<Option<u32>>,
        provenance: Provenance,
    ) -> Result<PartitionSet> {
        let n = g.vertex_count();
        if offsets.len() != n + 1 {
            return Err(Error::Integrity(format!(
                "membership table covers {} vertices, graph has {n}",
                offsets.len() - 1
            )));
        }
        if owners.len() != g.edge_count() {
            return Err(Error::Integrity(format!(
                "ownership table covers {} edges, graph has {}",
                owners.len(),
                g.edge_count()
            )));
        }
        let mut home = Vec::with_capacity(n);
        let mut members = vec![Vec::new(); k];
        let mut slots = vec![0u32; parts.len()];
        for v in 0..n {
            let range = offsets[v]..offsets[v + 1];
            let Some(&first) = parts[range.clone()].first() else {
                return Err(Error::Integrity(format!("vertex {v} belongs to no partition")));
            };
            let sorted = &mut parts[range.clone()];
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Integrity(format!("vertex {v} listed twice in one partition")));
            }
            if let Some(&p) = sorted.iter().find(|&&p| p as usize >= k) {
                return Err(Error::Integrity(format!("vertex {v} assigned to partition {p} >= k")));
            }
            for j in range {
                let m = &mut members[parts[j] as usize];
                slots[j] = m.len() as u32;
                m.push(v as u32);
            }
            home.push(first);
        }

        let mut set = PartitionSet {
            k,
            d_in: members.iter().map(|m| vec![0; m.len()]).collect(),
            members,
            offsets,
            parts,
            slots,
            home,
            edge_owner: Vec::with_capacity(owners.len()),
            owned_edges: vec![0usize; k],
            provenance,
        };
        for (e, (&(u, v), owner)) in g.edges().iter().zip(owners).enumerate() {
            let p = match owner {
                Some(p) => {
                    let (Some(iu), Some(iv)) = (set.slot(p, u), set.slot(p, v)) else {
                        return Err(Error::Integrity(format!(
                            "edge {e} ({u}, {v}) owned by partition {p}, which does not hold both endpoints"
                        )));
                    };
                    set.d_in[p as usize][iu] += 1;
                    set.d_in[p as usize][iv] += 1;
                    p
                }
                None => {
                    let (mu, mv) = (set.memberships(u), set.memberships(v));
                    if mu.iter().any(|p| mv.binary_search(p).is_ok()) {
                        return Err(Error::Integrity(format!(
                            "edge {e} ({u}, {v}) has endpoints in a common partition but no owner"
                        )));
                    }
                    mu[0].min(mv[0])
                }
            };
            set.owned_edges[p as usize] += 1;
            set.edge_owner.push(p);
        }
        Ok(set)
    }

    /// Position of `v` in `members(p)`.
    #[inline]
    fn slot(&self, p: u32, v: u32) -> Option<usize> {
        let lo = self.offsets[v as usize];
        self.memberships(v)
            .binary_search(&p)
            .ok()
            .map(|j| self.slots[lo + j] as usize)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.home.len()
    }

    /// Members of partition `p`, ascending (`N_i` is the length).
    #[inline]
    pub fn members(&self, p: usize) -> &[u32] {
        &self.members[p]
    }

    #[inline]
    pub fn member_count(&self, p: usize) -> usize {
        self.members[p].len()
    }

    /// Total member records, replicas included.
    pub fn total_members(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    /// Partitions holding `v`, ascending.
    #[inline]
    pub fn memberships(&self, v: u32) -> &[u32] {
        &self.parts[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    pub fn is_member(&self, p: u32, v: u32) -> bool {
        self.memberships(v).binary_search(&p).is_ok()
    }

    /// `NR(v)`, the number of partitions holding `v`.
    #[inline]
    pub fn replication(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn is_cut(&self, v: u32) -> bool {
        self.replication(v) >= 2
    }

    /// The first partition that acquired `v`.
    #[inline]
    pub fn home(&self, v: u32) -> u32 {
        self.home[v as usize]
    }

    /// A record of `v` in `p` is a replica when `v` is cut and `p` is not its home.
    pub fn is_replica(&self, p: u32, v: u32) -> bool {
        self.is_cut(v) && self.home(v) != p && self.is_member(p, v)
    }

    pub fn cut_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.vertex_count() as u32).filter(|&v| self.is_cut(v))
    }

    #[inline]
    pub fn edge_owner(&self, e: u32) -> u32 {
        self.edge_owner[e as usize]
    }

    /// An owned edge is internal when its owner holds both endpoints.
    pub fn is_internal(&self, g: &Graph, e: u32) -> bool {
        let (u, v) = g.edges()[e as usize];
        let p = self.edge_owner(e);
        self.is_member(p, u) && self.is_member(p, v)
    }

    /// `Ne(Pa_p)`, edges owned by partition `p`, cross edges included.
    #[inline]
    pub fn owned_edge_count(&self, p: usize) -> usize {
        self.owned_edges[p]
    }

    /// Internal owned degree of each member of `p`, parallel to [`Self::members`].
    #[inline]
    pub fn internal_degrees(&self, p: usize) -> &[u32] {
        &self.d_in[p]
    }

    /// `d_in(Pa_p, v)`: edges of `v` owned by `p` whose other endpoint is also in `p`.
    pub fn d_in(&self, p: usize, v: u32) -> usize {
        self.slot(p as u32, v)
            .map(|i| self.d_in[p][i] as usize)
            .unwrap_or(0)
    }

    /// Edges whose endpoints share no partition.
    pub fn cross_edge_count(&self, g: &Graph) -> usize {
        (0..g.edge_count() as u32).filter(|&e| !self.is_internal(g, e)).count()
    }
}

/// Assigns vertices no seed could reach, one component at a time, to the
/// partition that is currently smallest. Returns the number of components.
pub(crate) fn assign_leftovers(g: &Graph, part: &mut [u32], sizes: &mut [usize]) -> usize {
    let mut components = 0;
    let mut queue = VecDeque::new();
    for s in 0..part.len() {
        if part[s] != UNASSIGNED {
            continue;
        }
        let target = smallest(sizes);
        components += 1;
        part[s] = target;
        sizes[target as usize] += 1;
        queue.push_back(s as u32);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if part[w as usize] == UNASSIGNED {
                    part[w as usize] = target;
                    sizes[target as usize] += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    components
}

fn smallest(sizes: &[usize]) -> u32 {
    let mut best = 0;
    for (i, &s) in sizes.iter().enumerate() {
        if s < sizes[best] {
            best = i;
        }
    }
    best as u32
}

/// Max-heap key: larger degree first, then smaller id.
#[inline]
pub(crate) fn priority(g: &Graph, v: u32) -> (usize, std::cmp::Reverse<u32>) {
    (g.degree(v), std::cmp::Reverse(v))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::graph::Graph;

    /// Triangles {a,b,c} and {d,e,f} (ids 0..5) joined by the bridge c-d.
    pub fn bridged_triangles() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    pub fn two_triangles() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    pub fn path5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()
    }

    pub fn cycle(n: u32) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &e).unwrap()
    }
}

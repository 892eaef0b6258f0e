//! Immutable undirected, unweighted graphs in compressed adjacency form.

mod components;
mod generate;
mod load;

use std::collections::VecDeque;
use std::io::Write;

use crate::error::{Error, Result};

pub use components::{connected_components, ComponentLabeling};
pub use generate::generate_power_law;
pub use load::{load_edge_list, LoadReport, LoadedGraph, NormalizeOptions};

/// A simple undirected graph with dense vertex ids `0..n`.
///
/// Neighbor lists are sorted ascending. Every undirected edge has an id in
/// `0..m`; edge ids follow the lexicographic order of `(min, max)` endpoint
/// pairs. The original (user-facing) id of every vertex is kept in
/// [`Graph::label`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    slot_edge: Vec<u32>,
    edges: Vec<(u32, u32)>,
    labels: Vec<u64>,
}

pub(crate) struct BuildStats {
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph over vertices `0..n` from an edge list, dropping
    /// self-loops and duplicate (or reversed duplicate) edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u as usize >= n || v as usize >= n)
        {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) references a vertex outside 0..{n}"
            )));
        }
        let labels = (0..n as u64).collect();
        Ok(Self::build(labels, edges.to_vec()).0)
    }

    pub(crate) fn build(labels: Vec<u64>, mut pairs: Vec<(u32, u32)>) -> (Graph, BuildStats) {
        let n = labels.len();
        let before = pairs.len();
        pairs.retain(|&(u, v)| u != v);
        let self_loops = before - pairs.len();
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let duplicates = before - self_loops - pairs.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; 2 * pairs.len()];
        let mut slot_edge = vec![0u32; 2 * pairs.len()];
        // Filling in edge-id order leaves every neighbor list sorted: all
        // smaller neighbors of x precede the edges that start at x.
        for (id, &(u, v)) in pairs.iter().enumerate() {
            targets[cursor[u as usize]] = v;
            slot_edge[cursor[u as usize]] = id as u32;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            slot_edge[cursor[v as usize]] = id as u32;
            cursor[v as usize] += 1;
        }
        let graph = Graph {
            offsets,
            targets,
            slot_edge,
            edges: pairs,
            labels,
        };
        (graph, BuildStats { duplicates })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sum of all degrees, `2m`.
    #[inline]
    pub fn degree_sum(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    #[inline]
    pub fn incident_edges(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.slot_edge[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edges as `(min, max)` pairs indexed by edge id.
    #[inline]
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_id(&self, u: u32, v: u32) -> Option<u32> {
        let pos = self.neighbors(u).binary_search(&v).ok()?;
        Some(self.incident_edges(u)[pos])
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Original id of a dense vertex.
    #[inline]
    pub fn label(&self, v: u32) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of an original label.
    pub fn vertex_of_label(&self, label: u64) -> Option<u32> {
        // Labels are strictly increasing for loaded and generated graphs.
        if self.labels.windows(2).all(|w| w[0] < w[1]) {
            self.labels.binary_search(&label).ok().map(|i| i as u32)
        } else {
            self.labels.iter().position(|&l| l == label).map(|i| i as u32)
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Two-colours the graph; `true` when every component is bipartite.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut colour = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s as u32);
            while let Some(u) = queue.pop_front() {
                let c = colour[u as usize];
                for &w in self.neighbors(u) {
                    match colour[w as usize] {
                        u8::MAX => {
                            colour[w as usize] = 1 - c;
                            queue.push_back(w);
                        }
                        x if x == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Writes one `label label` line per edge, smaller dense endpoint first.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", self.label(u), self.label(v))?;
        }
        out.flush()?;
        Ok(())
    }
}

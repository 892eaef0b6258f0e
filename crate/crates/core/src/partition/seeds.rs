use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex ids ordered by degree descending, then id ascending.
pub(crate) fn degree_order(g: &Graph) -> Vec<u32> {
    let mut order: Vec<u32> = (0..g.vertex_count() as u32).collect();
    order.sort_unstable_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Picks `k` pairwise non-adjacent vertices, scanning in degree order and
/// skipping anything adjacent to a seed already taken.
pub fn select_seeds(g: &Graph, k: usize) -> Result<Vec<u32>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let mut blocked = vec![false; g.vertex_count()];
    let mut seeds = Vec::with_capacity(k);
    for v in degree_order(g) {
        if blocked[v as usize] {
            continue;
        }
        seeds.push(v);
        if seeds.len() == k {
            return Ok(seeds);
        }
        blocked[v as usize] = true;
        for &w in g.neighbors(v) {
            blocked[w as usize] = true;
        }
    }
    Err(Error::SeedSelection {
        requested: k,
        found: seeds.len(),
    })
}

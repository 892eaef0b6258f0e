use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Preferential-attachment graph on `n` vertices.
///
/// Vertices `0..=epv` form a clique; every later vertex attaches to `epv`
/// distinct earlier vertices picked with probability proportional to their
/// current degree. The result is connected, simple and has
/// `C(epv + 1, 2) + (n - epv - 1) * epv` edges.
pub fn generate_power_law(n: usize, edges_per_new_vertex: usize, seed: u64) -> Result<Graph> {
    let epv = edges_per_new_vertex;
    if epv < 1 || n < epv + 1 {
        return Err(Error::InvalidParameter(format!(
            "power-law generator needs n >= edges_per_new_vertex + 1 >= 2 (n = {n}, edges_per_new_vertex = {epv})"
        )));
    }
    if n > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds the vertex id range")));
    }
    let clique = epv + 1;
    let m = clique * (clique - 1) / 2 + (n - clique) * epv;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(m);
    // Every edge endpoint once; sampling a uniform slot is degree-proportional.
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * m);
    for u in 0..clique as u32 {
        for v in u + 1..clique as u32 {
            pairs.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets: Vec<u32> = Vec::with_capacity(epv);
    for v in clique as u32..n as u32 {
        targets.clear();
        while targets.len() < epv {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            pairs.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    let labels = (0..n as u64).collect();
    Ok(Graph::build(labels, pairs).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::connected_components;

    #[test]
    fn tree_case() {
        let g = generate_power_law(5, 1, 42).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(connected_components(&g, None).component_count, 1);
    }

    #[test]
    fn edge_count_formula() {
        let g = generate_power_law(10_000, 5, 1).unwrap();
        assert_eq!(g.edge_count(), (10_000 - 6) * 5 + 15);
        assert_eq!(connected_components(&g, None).component_count, 1);
        let max = g.degrees().max().unwrap();
        // Heavy tail: the largest hub is far above the mean degree of ~10.
        assert!(max > 100, "max degree {max}");
    }

    #[test]
    fn deterministic() {
        let a = generate_power_law(500, 3, 9).unwrap();
        let b = generate_power_law(500, 3, 9).unwrap();
        assert_eq!(a, b);
        let c = generate_power_law(500, 3, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_power_law(2, 5, 0).is_err());
        assert!(generate_power_law(10, 0, 0).is_err());
        assert!(generate_power_law(1, 1, 0).is_err());
        assert!(generate_power_law(2, 1, 0).is_ok());
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PartitionConfig, PartitionSet, Provenance};
use crate::error::Result;
use crate::graph::Graph;

/// Uniform random assignment, vertex by vertex in id order.
pub fn partition_random_hash(g: &Graph, cfg: &PartitionConfig) -> Result<PartitionSet> {
    cfg.validate(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let part: Vec<u32> = (0..g.vertex_count())
        .map(|_| rng.gen_range(0..cfg.k as u32))
        .collect();
    PartitionSet::from_assignment(
        g,
        cfg.k,
        &part,
        Provenance {
            algorithm: cfg.algorithm,
            seed: cfg.seed,
            build_time: None,
            leftover_components: 0,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::super::Algorithm;
    use super::*;
    use crate::graph::generate_power_law;

    #[test]
    fn deterministic_for_seed() {
        let g = generate_power_law(300, 2, 3).unwrap();
        let cfg = PartitionConfig::new(Algorithm::RandomHash, 4).with_seed(11);
        let a = partition_random_hash(&g, &cfg).unwrap();
        let b = partition_random_hash(&g, &cfg).unwrap();
        assert_eq!(a, b);
        let c = partition_random_hash(&g, &cfg.with_seed(12)).unwrap();
        assert_ne!(a.members(0), c.members(0));
    }

    #[test]
    fn sizes_concentrate() {
        let n = 100_000;
        let k = 10;
        let g = generate_power_law(n, 1, 5).unwrap();
        let ps = partition_random_hash(&g, &PartitionConfig::new(Algorithm::RandomHash, k).with_seed(1))
            .unwrap();
        let p = 1.0 / k as f64;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for i in 0..k {
            let dev = (ps.member_count(i) as f64 - n as f64 * p).abs();
            assert!(dev < 5.0 * sigma, "partition {i} deviates by {dev}");
        }
    }
}

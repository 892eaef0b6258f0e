//! Partitions one generated graph with every algorithm and prints the
//! metrics table followed by walk statistics.
//!
//! cargo run --release -p rwpart --example compare -- [n] [edges_per_vertex] [k]

use rwpart::graph::generate_power_law;
use rwpart::metrics::MetricsReport;
use rwpart::partition::{partition, Algorithm, PartitionConfig, PartitionTables};
use rwpart::walk::{ccdf, run_walk_ensemble, WalkOptions};

fn arg(i: usize, default: usize) -> usize {
    std::env::args().nth(i).map_or(default, |s| s.parse().expect("numeric argument"))
}

fn main() -> rwpart::Result<()> {
    let (n, epv, k) = (arg(1, 20_000), arg(2, 5), arg(3, 10));
    let g = generate_power_law(n, epv, 1)?;
    println!("{} vertices, {} edges, k = {k}\n", g.vertex_count(), g.edge_count());

    let mut reports = Vec::new();
    let mut walks = Vec::new();
    for a in Algorithm::ALL {
        let ps = partition(&g, &PartitionConfig::new(a, k).with_seed(7))?;
        reports.push(MetricsReport::compute(&g, &ps)?);
        let tables = PartitionTables::build(&g, &ps)?;
        let records = run_walk_ensemble(&tables, 8, 50_000, 7, None, &WalkOptions::default())?;
        let jumps: u64 = records.iter().map(|r| r.communication_count).sum();
        let steps: u64 = records.iter().map(|r| r.total_steps).sum();
        walks.push((a, jumps as f64 / steps as f64, ccdf(&records)?.mean()));
    }
    println!("{}", MetricsReport::render_table(&reports));
    println!("algorithm\tjump_rate\tmean_segment");
    for (a, rate, mean) in walks {
        println!("{a}\t{rate:.5}\t{mean:.2}");
    }
    Ok(())
}

//! Quality metrics for a [`PartitionSet`].
//!
//! Member counts include replicas: `N_i` is the number of member records of
//! partition `i` and `N = Σ N_i`. `d_in(i, v)` counts the edges of `v` owned
//! by partition `i` whose other endpoint is also in `i`; cross edges of
//! edge-cut partitionings are internal to no partition.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{Algorithm, PartitionSet};

/// Per-partition modularity contributions `tp_i - ep_i`.
pub fn partition_improvements(g: &Graph, ps: &PartitionSet) -> Result<Vec<f64>> {
    let two_m = g.degree_sum() as f64;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok((0..ps.k())
        .map(|p| {
            let internal: u64 = ps.internal_degrees(p).iter().map(|&d| d as u64).sum();
            let volume: usize = ps.members(p).iter().map(|&v| g.degree(v)).sum();
            let tp = internal as f64 / two_m;
            let share = volume as f64 / two_m;
            tp - share * share
        })
        .collect())
}

/// Sum of the per-partition improvements. With no replicas this is Newman
/// modularity of the vertex partition.
pub fn modularity(g: &Graph, ps: &PartitionSet) -> Result<f64> {
    Ok(partition_improvements(g, ps)?.iter().sum())
}

/// `Σ_i (N_i - N/k)² / N²`, in `[0, (k-1)/k]`.
pub fn balance_variance(ps: &PartitionSet) -> f64 {
    let total = ps.total_members() as f64;
    if total == 0.0 {
        return 0.0;
    }
    let mean = total / ps.k() as f64;
    (0..ps.k())
        .map(|p| {
            let dev = ps.member_count(p) as f64 - mean;
            dev * dev
        })
        .sum::<f64>()
        / (total * total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionReport {
    /// Connected pieces of each partition's owned-edge subgraph.
    pub subgraph_counts: Vec<usize>,
}

impl ConnectionReport {
    pub fn all_connected(&self) -> bool {
        self.subgraph_counts.iter().all(|&c| c == 1)
    }
}

/// Counts the connected pieces of every partition, following only the edges
/// that partition owns between its members.
pub fn connection_report(g: &Graph, ps: &PartitionSet) -> ConnectionReport {
    let mut subgraph_counts = Vec::with_capacity(ps.k());
    let mut queue = VecDeque::new();
    for p in 0..ps.k() {
        let members = ps.members(p);
        let pu = p as u32;
        let mut seen = vec![false; members.len()];
        let mut count = 0;
        for start in 0..members.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(members[start]);
            while let Some(u) = queue.pop_front() {
                for (&w, &e) in g.neighbors(u).iter().zip(g.incident_edges(u)) {
                    if ps.edge_owner(e) != pu {
                        continue;
                    }
                    if let Ok(i) = members.binary_search(&w) {
                        if !seen[i] {
                            seen[i] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        subgraph_counts.push(count);
    }
    ConnectionReport { subgraph_counts }
}

/// Observed minus expected share of cut-vertex records, summed over
/// partitions; `None` when nothing was cut. Negative values mean fewer
/// replicas than a random assignment would produce.
pub fn vertexcut_improvement(g: &Graph, ps: &PartitionSet) -> Option<f64> {
    if ps.cut_vertices().next().is_none() {
        return None;
    }
    let total = ps.total_members() as f64;
    let mut sum = 0.0;
    for p in 0..ps.k() {
        let members = ps.members(p);
        let cut = members.iter().filter(|&&v| ps.is_cut(v)).count() as f64;
        let share = members.len() as f64 / total;
        let expected: f64 = members
            .iter()
            .map(|&v| 1.0 - share.powi(g.degree(v) as i32))
            .sum::<f64>()
            / total;
        sum += cut / total - expected;
    }
    Some(sum)
}

/// Mean replicas per vertex; 1 exactly when nothing is cut.
pub fn replication_objective(ps: &PartitionSet) -> f64 {
    ps.total_members() as f64 / ps.vertex_count() as f64
}

/// Expected partition hand-offs per walk step at stationarity.
///
/// A walker at `v` sits in partition `i` with probability
/// `d_in(i, v) / Σ_j d_in(j, v)` and leaves it with probability
/// `(d(v) - d_in(i, v)) / d(v)`. When the owned edges of `v` cover its whole
/// degree this is `Σ_v Σ_i (d_in - d_in² / d(v)) / Σ d`. A vertex whose
/// memberships own none of its edges is weighted uniformly over them.
pub fn expected_communication(g: &Graph, ps: &PartitionSet) -> f64 {
    let degree_sum = g.degree_sum() as f64;
    if degree_sum == 0.0 {
        return 0.0;
    }
    let mut total = 0.0;
    let mut d_in = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        let d = g.degree(v) as f64;
        d_in.clear();
        d_in.extend(ps.memberships(v).iter().map(|&p| ps.d_in(p as usize, v) as f64));
        let covered: f64 = d_in.iter().sum();
        for &x in &d_in {
            let weight = if covered > 0.0 { x / covered } else { 1.0 / d_in.len() as f64 };
            total += weight * (d - x);
        }
    }
    total / degree_sum
}

/// The five partition metrics plus the two objective values.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub algorithm: Algorithm,
    pub k: usize,
    pub modularity: f64,
    pub partition_improvements: Vec<f64>,
    pub balance_variance: f64,
    pub build_time_secs: Option<f64>,
    pub connection: ConnectionReport,
    pub vertexcut_improvement: Option<f64>,
    pub replication_objective: f64,
    pub expected_communication: f64,
    /// Expected hand-offs per step divided by `k`.
    pub communication_objective: f64,
    /// `max_i Ne_i · k / m`.
    pub edge_imbalance: f64,
    /// `max_i N_i · k / N`.
    pub vertex_imbalance: f64,
}

impl MetricsReport {
    pub fn compute(g: &Graph, ps: &PartitionSet) -> Result<MetricsReport> {
        let k = ps.k();
        let partition_improvements = partition_improvements(g, ps)?;
        let expected_communication = expected_communication(g, ps);
        let max_ne = (0..k).map(|p| ps.owned_edge_count(p)).max().unwrap_or(0);
        let max_n = (0..k).map(|p| ps.member_count(p)).max().unwrap_or(0);
        Ok(MetricsReport {
            algorithm: ps.provenance.algorithm,
            k,
            modularity: partition_improvements.iter().sum(),
            partition_improvements,
            balance_variance: balance_variance(ps),
            build_time_secs: ps.provenance.build_time.map(|d| d.as_secs_f64()),
            connection: connection_report(g, ps),
            vertexcut_improvement: vertexcut_improvement(g, ps),
            replication_objective: replication_objective(ps),
            expected_communication,
            communication_objective: expected_communication / k as f64,
            edge_imbalance: max_ne as f64 * k as f64 / g.edge_count() as f64,
            vertex_imbalance: max_n as f64 * k as f64 / ps.total_members() as f64,
        })
    }

    /// One Table-1 style row per report.
    pub fn render_table(reports: &[MetricsReport]) -> String {
        let mut out = format!(
            "{:<12} {:>10} {:>8} {:>12} {:>10} {:>10}\n",
            "Algorithm", "Modularity", "Balance", "Time", "Connection", "Vertex-cut"
        );
        for r in reports {
            let time = r
                .build_time_secs
                .map(|t| format!("{t:.2}s"))
                .unwrap_or_else(|| "null".into());
            let cut = r
                .vertexcut_improvement
                .map(|x| format!("{x:.2}"))
                .unwrap_or_else(|| "null".into());
            out.push_str(&format!(
                "{:<12} {:>10.2} {:>8.2} {:>12} {:>10} {:>10}\n",
                r.algorithm.title(),
                r.modularity,
                r.balance_variance,
                time,
                if r.connection.all_connected() { "YES" } else { "NO" },
                cut
            ));
        }
        out
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "null".into())
}

impl fmt::Display for MetricsReport {
    /// Fixed `key=value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(",");
        writeln!(f, "algorithm={}", self.algorithm)?;
        writeln!(f, "k={}", self.k)?;
        writeln!(f, "modularity={}", self.modularity)?;
        writeln!(
            f,
            "partition_improvements={}",
            join(&mut self.partition_improvements.iter().map(f64::to_string))
        )?;
        writeln!(f, "balance_variance={}", self.balance_variance)?;
        writeln!(f, "build_time_secs={}", opt(self.build_time_secs))?;
        writeln!(
            f,
            "connection={}",
            if self.connection.all_connected() { "YES" } else { "NO" }
        )?;
        writeln!(
            f,
            "subgraph_counts={}",
            join(&mut self.connection.subgraph_counts.iter().map(usize::to_string))
        )?;
        writeln!(f, "vertexcut_improvement={}", opt(self.vertexcut_improvement))?;
        writeln!(f, "replication_objective={}", self.replication_objective)?;
        writeln!(f, "expected_communication={}", self.expected_communication)?;
        writeln!(f, "communication_objective={}", self.communication_objective)?;
        writeln!(f, "edge_imbalance={}", self.edge_imbalance)?;
        write!(f, "vertex_imbalance={}", self.vertex_imbalance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partition, PartitionConfig, Provenance};

    fn prov() -> Provenance {
        Provenance {
            algorithm: Algorithm::Bfs,
            seed: 0,
            build_time: None,
            leftover_components: 0,
        }
    }

    fn bridged() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    fn assigned(g: &Graph, k: usize, part: &[u32]) -> PartitionSet {
        let owners = g
            .edges()
            .iter()
            .map(|&(u, v)| (part[u as usize] == part[v as usize]).then_some(part[u as usize]))
            .collect();
        let acquired = part.iter().map(|&p| vec![p]).collect();
        PartitionSet::from_memberships(g, k, acquired, owners, prov()).unwrap()
    }

    /// Bridge end d cut: Pa0 = {a,b,c,d} owns the left triangle and c-d,
    /// Pa1 = {d,e,f} owns the right triangle.
    fn bridged_cut(g: &Graph) -> PartitionSet {
        let acquired = vec![vec![0], vec![0], vec![0], vec![0, 1], vec![1], vec![1]];
        let owners = g
            .edges()
            .iter()
            .map(|&(u, v)| Some(if u >= 3 && v >= 3 { 1 } else { 0 }))
            .collect();
        PartitionSet::from_memberships(g, 2, acquired, owners, prov()).unwrap()
    }

    /// Newman modularity by double loop over vertex pairs.
    fn newman_oracle(g: &Graph, part: &[u32]) -> f64 {
        let two_m = g.degree_sum() as f64;
        let n = g.vertex_count() as u32;
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if part[i as usize] != part[j as usize] {
                    continue;
                }
                let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                q += a - g.degree(i) as f64 * g.degree(j) as f64 / two_m;
            }
        }
        q / two_m
    }

    #[test]
    fn single_partition_has_zero_modularity_and_communication() {
        let g = bridged();
        // Second partition left empty.
        let ps = assigned(&g, 2, &[0; 6]);
        assert!(modularity(&g, &ps).unwrap().abs() < 1e-15);
        assert_eq!(expected_communication(&g, &ps), 0.0);
        assert_eq!(connection_report(&g, &ps).subgraph_counts, vec![1, 0]);
    }

    #[test]
    fn disjoint_triangles_modularity_is_half() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let part = [0, 0, 0, 1, 1, 1];
        assert!((newman_oracle(&g, &part) - 0.5).abs() < 1e-15);
        let ps = assigned(&g, 2, &part);
        assert!((modularity(&g, &ps).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn bridged_split_matches_newman() {
        // Oracle value: 2 * (3/7 - 1/4) = 5/14. The owned bridge is internal
        // to neither side, so it adds nothing to tp.
        let g = bridged();
        let part = [0, 0, 0, 1, 1, 1];
        let oracle = newman_oracle(&g, &part);
        assert!((oracle - 5.0 / 14.0).abs() < 1e-15);
        let ps = assigned(&g, 2, &part);
        assert!((modularity(&g, &ps).unwrap() - oracle).abs() < 1e-15);
    }

    #[test]
    fn improvements_bounded_by_quarter() {
        let g = crate::graph::generate_power_law(500, 2, 4).unwrap();
        for a in Algorithm::ALL {
            let ps = partition(&g, &PartitionConfig::new(a, 3)).unwrap();
            for imp in partition_improvements(&g, &ps).unwrap() {
                assert!(imp <= 0.25 + 1e-15);
            }
        }
    }

    #[test]
    fn no_edges_is_an_error() {
        // Builds a set against an edgeless graph through the generic constructor.
        let g = Graph::from_edges(2, &[]).unwrap();
        let ps = PartitionSet::from_memberships(&g, 2, vec![vec![0], vec![1]], vec![], prov()).unwrap();
        assert!(matches!(modularity(&g, &ps), Err(Error::NoEdges)));
    }

    #[test]
    fn balance_variance_cases() {
        let g = bridged();
        assert_eq!(balance_variance(&assigned(&g, 2, &[0, 0, 0, 1, 1, 1])), 0.0);
        assert!((balance_variance(&assigned(&g, 2, &[0; 6])) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn balance_variance_of_reported_sizes() {
        // Oracle: direct evaluation with exact integer arithmetic.
        let sizes: [i128; 10] = [34963, 34965, 34443, 34384, 34707, 34388, 39500, 35017, 34506, 34418];
        let total: i128 = sizes.iter().sum();
        assert_eq!(total, 351291);
        // Σ (N_i - N/k)² · k² = Σ (k N_i - N)², so var = Σ (k N_i - N)² / (k² N²).
        let num: i128 = sizes.iter().map(|&s| (10 * s - total).pow(2)).sum();
        let oracle = num as f64 / (100.0 * (total * total) as f64);
        assert!((oracle - 1.768_081_363_625_116_5e-4).abs() < 1e-15, "{oracle}");

        // Same sizes as contiguous blocks of a path.
        let n = total as u32;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(n as usize, &edges).unwrap();
        let mut part = Vec::with_capacity(n as usize);
        for (p, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat(p as u32).take(s as usize));
        }
        let ps = assigned(&g, 10, &part);
        assert!((balance_variance(&ps) - oracle).abs() < 1e-15);
    }

    #[test]
    fn expected_communication_bridge_cut() {
        let g = bridged();
        let ps = bridged_cut(&g);
        let ec = expected_communication(&g, &ps);
        assert!((ec - 2.0 / 21.0).abs() < 1e-15, "{ec}");
    }

    #[test]
    fn even_split_is_the_worst_case_per_vertex() {
        // Star centre 0 with four leaves, cut 2/2 across two partitions.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let acquired = vec![vec![0, 1], vec![0], vec![0], vec![1], vec![1]];
        let owners = vec![Some(0), Some(0), Some(1), Some(1)];
        let ps = PartitionSet::from_memberships(&g, 2, acquired, owners, prov()).unwrap();
        // Centre contributes (2 - 1) + (2 - 1) = 2 out of Σd = 8.
        assert!((expected_communication(&g, &ps) - 2.0 / 8.0).abs() < 1e-15);
        let acquired = vec![vec![0, 1], vec![0], vec![0], vec![0], vec![1]];
        let owners = vec![Some(0), Some(0), Some(0), Some(1)];
        let skewed = PartitionSet::from_memberships(&g, 2, acquired, owners, prov()).unwrap();
        assert!(expected_communication(&g, &skewed) < 2.0 / 8.0);
    }

    #[test]
    fn edge_cut_communication_is_cross_degree() {
        let g = bridged();
        let ps = assigned(&g, 2, &[0, 0, 0, 1, 1, 1]);
        // Only the bridge crosses: c and d each have one foreign neighbor.
        assert!((expected_communication(&g, &ps) - 2.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn vertexcut_improvement_null_without_cuts() {
        let g = bridged();
        assert_eq!(vertexcut_improvement(&g, &assigned(&g, 2, &[0, 0, 0, 1, 1, 1])), None);
    }

    #[test]
    fn vertexcut_improvement_direct_sum() {
        // Oracle: Σ_i [NC_i/N - (1/N) Σ_{v∈Pa_i} (1 - (N_i/N)^d(v))] by hand.
        // N = 7, N_0 = 4, N_1 = 3; only d is cut (NC_0 = NC_1 = 1).
        // Pa0 degrees 2,2,3,3; Pa1 degrees 3,2,2.
        let g = bridged();
        let ps = bridged_cut(&g);
        let a: f64 = 4.0 / 7.0;
        let b: f64 = 3.0 / 7.0;
        let ep0 = (2.0 * (1.0 - a.powi(2)) + 2.0 * (1.0 - a.powi(3))) / 7.0;
        let ep1 = ((1.0 - b.powi(3)) + 2.0 * (1.0 - b.powi(2))) / 7.0;
        let oracle = (1.0 / 7.0 - ep0) + (1.0 / 7.0 - ep1);
        let got = vertexcut_improvement(&g, &ps).unwrap();
        assert!((got - oracle).abs() < 1e-15);
        assert!((-1.0..=1.0).contains(&got));
    }

    #[test]
    fn vertexcut_improvement_everything_cut() {
        // Every vertex of a 6-cycle held by both partitions: N_i = N/2 = 6.
        let n = 6u32;
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(6, &e).unwrap();
        let acquired = vec![vec![0, 1]; 6];
        let owners = (0..6).map(|i| Some((i % 2) as u32)).collect();
        let ps = PartitionSet::from_memberships(&g, 2, acquired, owners, prov()).unwrap();
        // Each partition: 6/12 - 6·(1 - 0.5²)/12 = 0.5 - 0.375 = 0.125.
        let got = vertexcut_improvement(&g, &ps).unwrap();
        assert!((got - 0.25).abs() < 1e-15, "{got}");
    }

    #[test]
    fn replication_objective_cases() {
        let g = bridged();
        assert_eq!(replication_objective(&assigned(&g, 2, &[0, 0, 0, 1, 1, 1])), 1.0);
        assert!((replication_objective(&bridged_cut(&g)) - 7.0 / 6.0).abs() < 1e-15);
        // Reported replica total over the 100001-vertex graph.
        assert!(((100_001.0f64 + 251_290.0) / 100_001.0 - 3.5129).abs() < 1e-4);
    }

    #[test]
    fn merging_partitions_never_increases_communication() {
        let g = crate::graph::generate_power_law(200, 2, 8).unwrap();
        let ps = partition(&g, &PartitionConfig::new(Algorithm::RandomHash, 3).with_seed(2)).unwrap();
        let part: Vec<u32> = (0..200).map(|v| ps.home(v)).collect();
        let merged: Vec<u32> = part.iter().map(|&p| p.min(1)).collect();
        let a = expected_communication(&g, &assigned(&g, 3, &part));
        let b = expected_communication(&g, &assigned(&g, 3, &merged));
        assert!(b <= a + 1e-15);
    }

    #[test]
    fn report_text_has_fixed_keys() {
        let g = bridged();
        let ps = partition(&g, &PartitionConfig::new(Algorithm::Bfs, 2)).unwrap();
        let text = MetricsReport::compute(&g, &ps).unwrap().to_string();
        let keys: Vec<&str> = text.lines().map(|l| l.split('=').next().unwrap()).collect();
        assert_eq!(
            keys,
            [
                "algorithm",
                "k",
                "modularity",
                "partition_improvements",
                "balance_variance",
                "build_time_secs",
                "connection",
                "subgraph_counts",
                "vertexcut_improvement",
                "replication_objective",
                "expected_communication",
                "communication_objective",
                "edge_imbalance",
                "vertex_imbalance"
            ]
        );
        let table = MetricsReport::render_table(&[MetricsReport::compute(&g, &ps).unwrap()]);
        assert!(table.lines().nth(1).unwrap().starts_with("BFS"));
    }
}

//! Random walks that run over [`PartitionTables`] only.
//!
//! A walker always sits in one partition. Each step picks uniformly among
//! the NoP and NoOP entries of its current record, which together are all
//! graph neighbors, so the vertex sequence is the plain random walk on the
//! graph. Moving to a vertex that is a member of the current partition keeps
//! the walker there. Moving anywhere else is a hand-off: the segment closes
//! and the walker picks a new partition at the arrival vertex. The arrival
//! step counts as the first step of the new segment.
//!
//! Randomness comes from ChaCha8 seeded with the run seed; walker `w` of an
//! ensemble draws from stream `w` of that seed, so results never depend on
//! scheduling or thread count.

mod ccdf;

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::PartitionTables;

pub use ccdf::{ccdf, CcdfTable};

/// Paths are not recorded by default above this many steps.
pub const DEFAULT_PATH_LIMIT: u64 = 100_000;

/// Generator for walker `stream` of a run seeded with `seed`.
pub fn walker_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stationary distribution `π_v = d(v) / Σ d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stationary {
    pub pi: Vec<f64>,
    /// The walk is periodic on bipartite graphs and does not converge to `pi`.
    pub bipartite: bool,
}

pub fn stationary_distribution(g: &Graph) -> Result<Stationary> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let total = g.degree_sum() as f64;
    Ok(Stationary {
        pi: g.degrees().map(|d| d as f64 / total).collect(),
        bipartite: g.is_bipartite(),
    })
}

/// Picks the partition a walker at `v` continues in: its only partition, or
/// partition `p` among several with probability `Ne(p) / Σ Ne`.
pub fn choose_home_partition<R: Rng + ?Sized>(
    tables: &PartitionTables,
    v: u32,
    rng: &mut R,
) -> Result<u32> {
    if v as usize >= tables.vertex_count() {
        return Err(Error::Integrity(format!("vertex {v} is not in the tables")));
    }
    Ok(tables.entries(v)[home_entry(tables, v, rng)?].0)
}

fn home_entry<R: Rng + ?Sized>(tables: &PartitionTables, v: u32, rng: &mut R) -> Result<usize> {
    let entries = tables.entries(v);
    match entries.len() {
        0 => Err(Error::Integrity(format!("vertex {v} belongs to no partition"))),
        1 => Ok(0),
        s => {
            let total: usize = entries
                .iter()
                .map(|&(p, _)| tables.owned_edge_count(p as usize))
                .sum();
            if total == 0 {
                return Ok(rng.gen_range(0..s));
            }
            let mut x = rng.gen_range(0..total);
            for (i, &(p, _)) in entries.iter().enumerate() {
                let w = tables.owned_edge_count(p as usize);
                if x < w {
                    return Ok(i);
                }
                x -= w;
            }
            unreachable!("draw below the weight total")
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct WalkOptions {
    /// Start here instead of a uniformly random vertex.
    pub start: Option<u32>,
    /// Record the vertex sequence; defaults to on up to [`DEFAULT_PATH_LIMIT`] steps.
    pub record_path: Option<bool>,
    /// Count how often each vertex is occupied after a step.
    pub count_visits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRecord {
    pub seed: u64,
    pub stream: u64,
    pub total_steps: u64,
    /// Steps spent in each partition between hand-offs; sums to `total_steps`.
    pub segment_lengths: Vec<u64>,
    pub communication_count: u64,
    /// Start vertex followed by the vertex after every step.
    pub path: Option<Vec<u32>>,
    pub visit_counts: Option<Vec<u64>>,
}

impl WalkRecord {
    pub fn jump_rate(&self) -> f64 {
        self.communication_count as f64 / self.total_steps as f64
    }
}

/// Runs one walker on stream 0 of `seed`.
pub fn run_partitioned_walk(
    tables: &PartitionTables,
    total_steps: u64,
    seed: u64,
    options: &WalkOptions,
) -> Result<WalkRecord> {
    walk(tables, total_steps, seed, 0, options)
}

fn walk(
    tables: &PartitionTables,
    total_steps: u64,
    seed: u64,
    stream: u64,
    options: &WalkOptions,
) -> Result<WalkRecord> {
    if total_steps == 0 {
        return Err(Error::InvalidParameter("a walk needs at least one step".into()));
    }
    let n = tables.vertex_count();
    let mut rng = walker_rng(seed, stream);
    let start = match options.start {
        Some(v) if v as usize >= n => {
            return Err(Error::InvalidParameter(format!("start vertex {v} out of range")))
        }
        Some(v) => v,
        None => rng.gen_range(0..n as u32),
    };
    let record_path = options
        .record_path
        .unwrap_or(total_steps <= DEFAULT_PATH_LIMIT);
    let mut path = record_path.then(|| {
        let mut p = Vec::with_capacity(total_steps as usize + 1);
        p.push(start);
        p
    });
    let mut visits = options.count_visits.then(|| vec![0u64; n]);

    let mut entry = tables.entries(start)[home_entry(tables, start, &mut rng)?];
    let mut record = tables.record_at(entry);
    if tables.neighbors(record).is_empty() {
        return Err(Error::IsolatedVertex(start));
    }
    let mut segments = Vec::new();
    let mut current = 0u64;
    for _ in 0..total_steps {
        let nbrs = tables.neighbors(record);
        let next = nbrs[rng.gen_range(0..nbrs.len())];
        let here = entry.0;
        match tables.entries(next).iter().find(|&&(p, _)| p == here) {
            Some(&e) => {
                entry = e;
                current += 1;
            }
            None => {
                segments.push(current);
                current = 1;
                entry = tables.entries(next)[home_entry(tables, next, &mut rng)?];
            }
        }
        record = tables.record_at(entry);
        if let Some(p) = path.as_mut() {
            p.push(next);
        }
        if let Some(c) = visits.as_mut() {
            c[next as usize] += 1;
        }
    }
    segments.push(current);
    Ok(WalkRecord {
        seed,
        stream,
        total_steps,
        communication_count: segments.len() as u64 - 1,
        segment_lengths: segments,
        path,
        visit_counts: visits,
    })
}

/// Runs `walkers` independent walkers, walker `w` on stream `w` of
/// `base_seed`, on a pool of `threads` workers (default: all cores).
/// The output is the same for every thread count.
pub fn run_walk_ensemble(
    tables: &PartitionTables,
    walkers: usize,
    steps_per_walker: u64,
    base_seed: u64,
    threads: Option<usize>,
    options: &WalkOptions,
) -> Result<Vec<WalkRecord>> {
    if walkers == 0 {
        return Err(Error::InvalidParameter("need at least one walker".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..walkers as u64)
            .into_par_iter()
            .map(|w| walk(tables, steps_per_walker, base_seed, w, options))
            .collect()
    })
}

/// One `walker<TAB>segment<TAB>length` row per segment, with a header.
pub fn write_segments<W: Write>(mut out: W, records: &[WalkRecord]) -> Result<()> {
    writeln!(out, "walker\tsegment\tlength")?;
    for (w, r) in records.iter().enumerate() {
        for (i, len) in r.segment_lengths.iter().enumerate() {
            writeln!(out, "{w}\t{i}\t{len}")?;
        }
    }
    out.flush()?;
    Ok(())
}

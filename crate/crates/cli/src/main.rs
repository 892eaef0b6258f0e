//! `rwpart`: generate, partition, score and walk graphs from the shell.
//!
//! Exit status is 0 on success, 1 when the data or the run fails and 2 when
//! the command line itself is wrong.

mod manifest;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use manifest::{RunManifest, Seed};
use rwpart::graph::{generate_power_law, load_edge_list, Graph, NormalizeOptions};
use rwpart::metrics::MetricsReport;
use rwpart::partition::{
    partition, read_partition_file, write_partition_file, Algorithm, PartitionConfig,
    PartitionTables,
};
use rwpart::walk::{ccdf, run_walk_ensemble, write_segments, WalkOptions};

#[derive(Parser, Debug)]
#[command(name = "rwpart", version, about = "Graph partitioning for partitioned random walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a preferential-attachment graph as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        /// Edges added with every new vertex.
        #[arg(long)]
        m: usize,
        /// Drawn from system entropy and recorded in the manifest when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Partition an edge list and write the partition file.
    Partition {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: Algorithm,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        /// Only used by `random`; drawn from entropy when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Give ids that never start a line a shared sink neighbor.
        #[arg(long)]
        repair_orphans: bool,
    },
    /// Score one or more partition files of the same graph.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, required = true, num_args = 1..)]
        partition: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
        /// Report the build time recorded in each partition's manifest.
        #[arg(long)]
        build_time: bool,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        repair_orphans: bool,
    },
    /// Run independent walkers over a partition file.
    Walk {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        walkers: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; the output does not depend on it.
        #[arg(long, env = "RWPART_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        /// Start every walker at this vertex label instead of a random vertex.
        #[arg(long)]
        start: Option<u64>,
        #[arg(long)]
        segments_out: Option<PathBuf>,
        #[arg(long)]
        ccdf_out: Option<PathBuf>,
        #[arg(long)]
        repair_orphans: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Kv,
    Table,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Gen { n, m, seed, out } => gen(n, m, seed, &out),
        Command::Partition { input, algorithm, k, seed, out, repair_orphans } => {
            cmd_partition(&input, algorithm, k as usize, seed, &out, repair_orphans)
        }
        Command::Metrics { input, partition, format, build_time, out, repair_orphans } => {
            metrics(&input, &partition, format, build_time, out.as_deref(), repair_orphans)
        }
        Command::Walk {
            input,
            partition,
            steps,
            walkers,
            seed,
            threads,
            start,
            segments_out,
            ccdf_out,
            repair_orphans,
        } => walk(WalkArgs {
            input,
            partition,
            steps,
            walkers: walkers as usize,
            seed,
            threads: threads.map(|t| t as usize),
            start,
            segments_out,
            ccdf_out,
            repair_orphans,
        }),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn load_graph(path: &Path, repair_orphans: bool) -> Result<Graph> {
    let loaded = load_edge_list(open(path)?, NormalizeOptions { repair_orphans })
        .with_context(|| format!("loading {}", path.display()))?;
    let r = &loaded.report;
    let dropped = r.self_loops_dropped + r.duplicates_dropped + r.isolated_dropped;
    if dropped > 0 || r.orphans_repaired > 0 {
        eprintln!(
            "note: {}: {} self-loops, {} duplicate edges and {} isolated ids dropped, {} orphans repaired",
            path.display(),
            r.self_loops_dropped,
            r.duplicates_dropped,
            r.isolated_dropped,
            r.orphans_repaired
        );
    }
    Ok(loaded.graph)
}

fn gen(n: usize, m: usize, seed: Option<u64>, out: &Path) -> Result<()> {
    let mut manifest = RunManifest::new("gen");
    let seed = Seed::resolve(seed);
    manifest.arg("n", n).arg("m", m).seed(&seed);
    let g = generate_power_law(n, m, seed.value)?;
    let mut w = create(out)?;
    writeln!(w, "# preferential attachment n={n} m={m} seed={}", seed.value)?;
    g.write_edge_list(&mut w)?;
    w.flush()?;
    manifest.outputs.push(out.into());
    manifest.write(out)?;
    println!("vertices={}", g.vertex_count());
    println!("edges={}", g.edge_count());
    Ok(())
}

fn cmd_partition(
    input: &Path,
    algorithm: Algorithm,
    k: usize,
    seed: Option<u64>,
    out: &Path,
    repair_orphans: bool,
) -> Result<()> {
    let mut manifest = RunManifest::new("partition");
    let seed = Seed::resolve(seed);
    manifest
        .arg("algorithm", algorithm)
        .arg("k", k)
        .arg("repair_orphans", repair_orphans)
        .seed(&seed);
    manifest.inputs.push(input.into());
    let g = load_graph(input, repair_orphans)?;
    let ps = partition(&g, &PartitionConfig::new(algorithm, k).with_seed(seed.value))?;
    manifest.build_time_secs = ps.provenance.build_time.map(|d| d.as_secs_f64());
    let mut w = create(out)?;
    write_partition_file(&mut w, &g, &ps, &[])?;
    manifest.outputs.push(out.into());
    manifest.write(out)?;
    let sizes: Vec<String> = (0..k).map(|p| ps.member_count(p).to_string()).collect();
    let owned: usize = (0..k).map(|p| ps.owned_edge_count(p)).sum();
    println!("algorithm={algorithm}");
    println!("k={k}");
    println!("seed={}", seed.value);
    println!("partition_sizes={}", sizes.join(","));
    println!("owned_edges={owned}");
    println!("cut_vertices={}", ps.cut_vertices().count());
    println!("leftover_components={}", ps.provenance.leftover_components);
    Ok(())
}

fn metrics(
    input: &Path,
    partitions: &[PathBuf],
    format: Format,
    build_time: bool,
    out: Option<&Path>,
    repair_orphans: bool,
) -> Result<()> {
    let mut manifest = RunManifest::new("metrics");
    manifest
        .arg("format", format!("{format:?}").to_lowercase())
        .arg("build_time", build_time)
        .arg("repair_orphans", repair_orphans);
    manifest.inputs.push(input.into());
    let g = load_graph(input, repair_orphans)?;
    let mut reports = Vec::with_capacity(partitions.len());
    for path in partitions {
        manifest.inputs.push(path.clone());
        let file = read_partition_file(open(path)?, &g)
            .with_context(|| format!("reading {}", path.display()))?;
        let mut report = MetricsReport::compute(&g, &file.set)?;
        if build_time {
            let recorded = RunManifest::read(&manifest::sidecar(path))?;
            report.build_time_secs = recorded.build_time_secs;
        }
        reports.push(report);
    }
    let text = match format {
        Format::Kv => reports
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n\n")
            + "\n",
        Format::Table => MetricsReport::render_table(&reports),
    };
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            manifest.outputs.push(path.into());
            manifest.write(path)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

struct WalkArgs {
    input: PathBuf,
    partition: PathBuf,
    steps: u64,
    walkers: usize,
    seed: Option<u64>,
    threads: Option<usize>,
    start: Option<u64>,
    segments_out: Option<PathBuf>,
    ccdf_out: Option<PathBuf>,
    repair_orphans: bool,
}

fn walk(a: WalkArgs) -> Result<()> {
    let mut manifest = RunManifest::new("walk");
    let seed = Seed::resolve(a.seed);
    manifest
        .arg("steps", a.steps)
        .arg("walkers", a.walkers)
        .arg("repair_orphans", a.repair_orphans)
        .seed(&seed);
    if let Some(t) = a.threads {
        manifest.arg("threads", t);
    }
    if let Some(s) = a.start {
        manifest.arg("start", s);
    }
    manifest.inputs.extend([a.input.clone(), a.partition.clone()]);

    let g = load_graph(&a.input, a.repair_orphans)?;
    let file = read_partition_file(open(&a.partition)?, &g)
        .with_context(|| format!("reading {}", a.partition.display()))?;
    let tables = PartitionTables::build(&g, &file.set)?;
    let start = match a.start {
        Some(label) => match g.vertex_of_label(label) {
            Some(v) => Some(v),
            None => bail!("start vertex {label} is not in the graph"),
        },
        None => None,
    };
    let options = WalkOptions { start, record_path: Some(false), count_visits: false };
    let records = run_walk_ensemble(&tables, a.walkers, a.steps, seed.value, a.threads, &options)?;

    if let Some(path) = &a.segments_out {
        let mut w = create(path)?;
        write_segments(&mut w, &records)?;
        manifest.outputs.push(path.clone());
    }
    let table = ccdf(&records)?;
    if let Some(path) = &a.ccdf_out {
        let mut w = create(path)?;
        table.write(&mut w)?;
        manifest.outputs.push(path.clone());
    }
    if let Some(primary) = a.segments_out.as_ref().or(a.ccdf_out.as_ref()) {
        manifest.write(primary)?;
    }

    let jumps: u64 = records.iter().map(|r| r.communication_count).sum();
    let total = a.steps * a.walkers as u64;
    println!("walkers={}", a.walkers);
    println!("steps_per_walker={}", a.steps);
    println!("seed={}", seed.value);
    println!("communications={jumps}");
    println!("jump_rate={}", jumps as f64 / total as f64);
    println!("segments={}", table.sample_size);
    println!("mean_segment_length={}", table.mean());
    Ok(())
}

//! Text format for partition sets.
//!
//! ```text
//! # rwpart partition v1
//! algorithm=vertexcut
//! k=2
//! seed=7
//! leftover_components=0
//! vertices=6
//! edges=7
//! partition	vertex	replica	nop	noop
//! 0	3	0	2	4,5
//! 1	3	1	4,5	2
//! ```
//!
//! Header lines are `key=value`; callers may add their own keys. Each record
//! is tab separated: partition id, vertex label, replica flag (`1` on every
//! record of a cut vertex except its home), then the NoP and NoOP label lists
//! (comma separated, `-` when empty). Records are sorted by partition, then
//! by dense vertex id.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{Algorithm, PartitionSet, PartitionTables, Provenance};
use crate::error::{Error, Result};
use crate::graph::Graph;

const MAGIC: &str = "# rwpart partition v1";
const COLUMNS: &str = "partition\tvertex\treplica\tnop\tnoop";

/// A partition set read back from text, plus any extra header keys.
#[derive(Clone, Debug)]
pub struct PartitionFile {
    pub set: PartitionSet,
    pub extra: Vec<(String, String)>,
}

impl PartitionFile {
    pub fn extra(&self, key: &str) -> Option<&str> {
        self.extra
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

const RESERVED: [&str; 6] = ["algorithm", "k", "seed", "leftover_components", "vertices", "edges"];

pub fn write_partition_file<W: Write>(
    mut out: W,
    g: &Graph,
    ps: &PartitionSet,
    extra: &[(String, String)],
) -> Result<()> {
    let tables = PartitionTables::build(g, ps)?;
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "algorithm={}", ps.provenance.algorithm)?;
    writeln!(out, "k={}", ps.k())?;
    writeln!(out, "seed={}", ps.provenance.seed)?;
    writeln!(out, "leftover_components={}", ps.provenance.leftover_components)?;
    writeln!(out, "vertices={}", g.vertex_count())?;
    writeln!(out, "edges={}", g.edge_count())?;
    for (k, v) in extra {
        if RESERVED.contains(&k.as_str()) || k.contains('=') || k.contains('\n') || v.contains('\n') {
            return Err(Error::InvalidParameter(format!("unusable header key `{k}`")));
        }
        writeln!(out, "{k}={v}")?;
    }
    writeln!(out, "{COLUMNS}")?;
    let mut line = String::new();
    for p in 0..tables.k() {
        for r in tables.records(p) {
            line.clear();
            use std::fmt::Write as _;
            let _ = write!(line, "{p}\t{}\t{}\t", g.label(r.vertex), u8::from(r.is_replica));
            push_list(&mut line, g, tables.nop(r));
            line.push('\t');
            push_list(&mut line, g, tables.noop(r));
            writeln!(out, "{line}")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn push_list(line: &mut String, g: &Graph, ids: &[u32]) {
    use std::fmt::Write as _;
    if ids.is_empty() {
        line.push('-');
        return;
    }
    for (i, &w) in ids.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        let _ = write!(line, "{}", g.label(w));
    }
}

/// Reads a partition file written for `g`.
pub fn read_partition_file<R: BufRead>(input: R, g: &Graph) -> Result<PartitionFile> {
    let mut lines = input.lines().enumerate();
    let perr = |line: usize, message: String| Error::Parse { line: line + 1, message };

    match lines.next() {
        Some((_, Ok(l))) if l.trim_end() == MAGIC => {}
        Some((i, Ok(_))) => return Err(perr(i, "missing partition file header".into())),
        Some((_, Err(e))) => return Err(e.into()),
        None => return Err(Error::EmptyInput),
    }

    let mut header: HashMap<String, String> = HashMap::new();
    let mut extra = Vec::new();
    for (i, line) in lines.by_ref() {
        let line = line?;
        if line.trim_end() == COLUMNS {
            break;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| perr(i, format!("expected key=value, got `{line}`")))?;
        if RESERVED.contains(&k) {
            header.insert(k.to_string(), v.to_string());
        } else {
            extra.push((k.to_string(), v.to_string()));
        }
    }
    let field = |key: &str| -> Result<&String> {
        header
            .get(key)
            .ok_or_else(|| Error::Parse { line: 0, message: format!("header lacks `{key}`") })
    };
    let num = |key: &str| -> Result<u64> {
        field(key)?
            .parse()
            .map_err(|_| Error::Parse { line: 0, message: format!("header `{key}` is not a number") })
    };
    let algorithm: Algorithm = field("algorithm")?.parse()?;
    let k = num("k")? as usize;
    let seed = num("seed")?;
    let leftover_components = num("leftover_components")? as usize;
    if num("vertices")? as usize != g.vertex_count() || num("edges")? as usize != g.edge_count() {
        return Err(Error::Integrity(format!(
            "partition file was written for a graph with {} vertices and {} edges, this one has {} and {}",
            num("vertices")?,
            num("edges")?,
            g.vertex_count(),
            g.edge_count()
        )));
    }
    if k < 1 {
        return Err(Error::Parse { line: 0, message: "k must be positive".into() });
    }

    let n = g.vertex_count();
    let mut homes: Vec<Option<u32>> = vec![None; n];
    let mut replicas: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut owners: Vec<Option<u32>> = vec![None; g.edge_count()];
    let dense = |label: &str, line: usize| -> Result<u32> {
        let l: u64 = label
            .parse()
            .map_err(|_| perr(line, format!("`{label}` is not a vertex label")))?;
        g.vertex_of_label(l)
            .ok_or_else(|| perr(line, format!("vertex {l} is not in the graph")))
    };
    let mut buf: Vec<u32> = Vec::new();
    for (i, line) in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(perr(i, format!("expected 5 tab-separated columns, got {}", cols.len())));
        }
        let p: u32 = cols[0]
            .parse()
            .ok()
            .filter(|&p: &u32| (p as usize) < k)
            .ok_or_else(|| perr(i, format!("bad partition id `{}`", cols[0])))?;
        let v = dense(cols[1], i)?;
        match cols[2] {
            "0" => {
                if homes[v as usize].replace(p).is_some() {
                    return Err(perr(i, format!("vertex {} has two home records", cols[1])));
                }
            }
            "1" => replicas[v as usize].push(p),
            other => return Err(perr(i, format!("bad replica flag `{other}`"))),
        }
        buf.clear();
        for (col, is_nop) in [(cols[3], true), (cols[4], false)] {
            if col == "-" {
                continue;
            }
            for label in col.split(',') {
                let w = dense(label, i)?;
                buf.push(w);
                if is_nop {
                    let e = g.edge_id(v, w).ok_or_else(|| {
                        perr(i, format!("{} and {label} are not adjacent", cols[1]))
                    })?;
                    match owners[e as usize] {
                        Some(q) if q != p => {
                            return Err(perr(i, format!("edge ({}, {label}) owned twice", cols[1])))
                        }
                        _ => owners[e as usize] = Some(p),
                    }
                }
            }
        }
        buf.sort_unstable();
        if buf != g.neighbors(v) {
            return Err(perr(i, format!("NoP and NoOP of {} do not match its neighbors", cols[1])));
        }
    }

    let mut acquired = Vec::with_capacity(n);
    for (v, (home, mut rest)) in homes.into_iter().zip(replicas).enumerate() {
        let home = home.ok_or_else(|| {
            Error::Integrity(format!("vertex {} has no home record", g.label(v as u32)))
        })?;
        rest.sort_unstable();
        rest.insert(0, home);
        acquired.push(rest);
    }
    let set = PartitionSet::from_memberships(
        g,
        k,
        acquired,
        owners,
        Provenance {
            algorithm,
            seed,
            build_time: None,
            leftover_components,
        },
    )?;
    Ok(PartitionFile { set, extra })
}

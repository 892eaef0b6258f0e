use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;

use super::Graph;
use crate::error::{Error, Result};

/// Options applied while turning raw edge text into a [`Graph`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Append one sink vertex and connect it to every id that occurs only in
    /// neighbor position, never as the first id of a line.
    pub repair_orphans: bool,
}

/// Summary of what normalization changed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub lines: usize,
    pub raw_edges: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
    pub isolated_dropped: usize,
    pub orphans_repaired: usize,
    pub sink_label: Option<u64>,
    pub vertices: usize,
    pub edges: usize,
}

impl fmt::Display for LoadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lines={}", self.lines)?;
        writeln!(f, "raw_edges={}", self.raw_edges)?;
        writeln!(f, "self_loops_dropped={}", self.self_loops_dropped)?;
        writeln!(f, "duplicates_dropped={}", self.duplicates_dropped)?;
        writeln!(f, "isolated_dropped={}", self.isolated_dropped)?;
        writeln!(f, "orphans_repaired={}", self.orphans_repaired)?;
        match self.sink_label {
            Some(s) => writeln!(f, "sink_label={s}")?,
            None => writeln!(f, "sink_label=null")?,
        }
        writeln!(f, "vertices={}", self.vertices)?;
        write!(f, "edges={}", self.edges)
    }
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub report: LoadReport,
}

/// Parses an edge list.
///
/// Each non-blank line that does not start with `#` holds two or more
/// whitespace-separated non-negative integer ids. The first id is the source;
/// every following id is a neighbor, so plain `u v` edge lists and
/// adjacency-style `u v1 v2 ...` lines are both accepted. Ids are remapped to
/// dense ids in ascending label order; ids left without any edge after
/// dropping self-loops are discarded.
pub fn load_edge_list<R: BufRead>(source: R, options: NormalizeOptions) -> Result<LoadedGraph> {
    let mut report = LoadReport::default();
    let mut raw: Vec<(u64, u64)> = Vec::new();
    let mut sources: HashSet<u64> = HashSet::new();
    let mut neighbors: HashSet<u64> = HashSet::new();

    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        report.lines = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut ids = trimmed.split_whitespace().map(|tok| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{tok}` is not a non-negative integer id"),
            })
        });
        let src = ids.next().expect("non-empty line has a token")?;
        let mut count = 0;
        for dst in ids {
            let dst = dst?;
            raw.push((src, dst));
            neighbors.insert(dst);
            count += 1;
        }
        if count == 0 {
            return Err(Error::Parse {
                line: line_no,
                message: "expected at least two ids".into(),
            });
        }
        sources.insert(src);
    }
    report.raw_edges = raw.len();
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut all_ids: HashSet<u64> = HashSet::with_capacity(sources.len() + neighbors.len());
    all_ids.extend(raw.iter().flat_map(|&(u, v)| [u, v]));
    let max_label = all_ids.iter().copied().max().unwrap_or(0);

    let mut orphans: Vec<u64> = if options.repair_orphans {
        neighbors.difference(&sources).copied().collect()
    } else {
        Vec::new()
    };
    orphans.sort_unstable();
    if !orphans.is_empty() {
        let sink = max_label.checked_add(1).ok_or_else(|| {
            Error::InvalidParameter("no label available for the orphan sink vertex".into())
        })?;
        raw.extend(orphans.iter().map(|&o| (o, sink)));
        report.orphans_repaired = orphans.len();
        report.sink_label = Some(sink);
    }

    let mut labels: Vec<u64> = raw
        .iter()
        .filter(|&&(u, v)| u != v)
        .flat_map(|&(u, v)| [u, v])
        .collect();
    labels.sort_unstable();
    labels.dedup();
    report.isolated_dropped = all_ids.len() + usize::from(report.sink_label.is_some()) - labels.len();

    let dense = |label: u64| labels.binary_search(&label).map(|i| i as u32);
    let mut pairs = Vec::with_capacity(raw.len());
    let mut self_loops = 0;
    for &(u, v) in &raw {
        if u == v {
            self_loops += 1;
            continue;
        }
        pairs.push((dense(u).unwrap(), dense(v).unwrap()));
    }
    let (graph, stats) = Graph::build(labels, pairs);
    report.self_loops_dropped = self_loops;
    report.duplicates_dropped = stats.duplicates;
    report.vertices = graph.vertex_count();
    report.edges = graph.edge_count();
    if graph.edge_count() == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(LoadedGraph { graph, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str, repair: bool) -> Result<LoadedGraph> {
        load_edge_list(text.as_bytes(), NormalizeOptions { repair_orphans: repair })
    }

    #[test]
    fn triangle() {
        let g = load("0 1\n1 2\n2 0\n", false).unwrap().graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert_eq!(g.degrees().collect::<Vec<_>>(), vec![2, 2, 2]);
    }

    #[test]
    fn drops_duplicates_and_self_loops() {
        let loaded = load("0 1\n0 1\n1 0\n2 2\n0 2\n", false).unwrap();
        assert_eq!(loaded.graph.vertex_count(), 3);
        assert_eq!(loaded.graph.edge_count(), 2);
        assert_eq!(loaded.report.self_loops_dropped, 1);
        assert_eq!(loaded.report.duplicates_dropped, 2);
    }

    #[test]
    fn comments_and_sparse_labels() {
        let loaded = load("# header\n10 20\n\n  # indented comment\n20 30\n", false).unwrap();
        let g = loaded.graph;
        assert_eq!(g.labels(), &[10, 20, 30]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.vertex_of_label(30), Some(2));
    }

    #[test]
    fn orphan_repair_adds_sink() {
        // 5 only ever appears in neighbor lists.
        let text = "0 1 2 5\n1 0 2\n2 0 1\n";
        let plain = load(text, false).unwrap();
        assert_eq!(plain.graph.vertex_count(), 4);
        assert_eq!(plain.report.orphans_repaired, 0);

        let repaired = load(text, true).unwrap();
        let g = &repaired.graph;
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(repaired.report.orphans_repaired, 1);
        assert_eq!(repaired.report.sink_label, Some(6));
        let five = g.vertex_of_label(5).unwrap();
        let sink = g.vertex_of_label(6).unwrap();
        assert!(g.has_edge(five, sink));
        assert_eq!(g.degree(sink), 1);
        for label in [0u64, 1, 2, 5] {
            let before = plain.graph.degree(plain.graph.vertex_of_label(label).unwrap());
            let after = g.degree(g.vertex_of_label(label).unwrap());
            assert!(after >= before);
        }
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load("0 1\n1 x\n", false) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match load("0 1\n7\n", false) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("0 -1\n", false), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(load("", false), Err(Error::EmptyInput)));
        assert!(matches!(load("# nothing\n", false), Err(Error::EmptyInput)));
        assert!(matches!(load("3 3\n", false), Err(Error::EmptyInput)));
    }

    #[test]
    fn report_is_key_value() {
        let loaded = load("0 1\n1 1\n", false).unwrap();
        let text = loaded.report.to_string();
        assert!(text.contains("self_loops_dropped=1"));
        assert!(text.contains("sink_label=null"));
        assert!(text.lines().all(|l| l.contains('=')));
    }
}

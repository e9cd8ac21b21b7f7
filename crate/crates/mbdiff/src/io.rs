//! Edge-list and seed-file formats.
//!
//! Edge lists follow the SNAP convention: `#` comment lines, blank lines ignored, and one
//! whitespace-separated pair of integer node labels per data line.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use mbdiff_core::{Graph, NodeId, SeedAssignment};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("edge list contains no edges")]
    Empty,
    #[error("line {line}: unknown node label {label}")]
    UnknownLabel { line: usize, label: u64 },
    #[error("line {line}: behavior {behavior} out of range for {k} behaviors")]
    BehaviorOutOfRange { line: usize, behavior: usize, k: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Model(#[from] mbdiff_core::Error),
}

/// A graph together with the original labels of its dense node ids.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    /// `labels[v]` is the label of node `v`; ascending.
    pub labels: Vec<u64>,
    /// Distinct ordered pairs in the input, self-loops included.
    pub ordered_pairs: usize,
    pub self_loops: usize,
}

impl LabeledGraph {
    /// A generated graph, labelled by its own ids.
    pub fn unlabeled(graph: Graph) -> Self {
        let labels = (0..graph.node_count() as u64).collect();
        let ordered_pairs = graph.ordered_edge_count();
        LabeledGraph {
            graph,
            labels,
            ordered_pairs,
            self_loops: 0,
        }
    }

    pub fn node_of(&self, label: u64) -> Option<NodeId> {
        self.labels.binary_search(&label).ok()
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<Option<(u64, u64)>, IoError> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(IoError::Parse {
            line: lineno,
            reason: format!("expected two node ids, found {} tokens", tokens.len()),
        });
    }
    let parse = |t: &str| {
        t.parse::<u64>().map_err(|_| IoError::Parse {
            line: lineno,
            reason: format!("`{t}` is not a non-negative integer"),
        })
    };
    Ok(Some((parse(tokens[0])?, parse(tokens[1])?)))
}

/// Reads an edge list. Repeated pairs and both orientations collapse into one undirected
/// edge; self-loops are dropped. Labels are mapped to dense ids in ascending label order.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<LabeledGraph, IoError> {
    let mut pairs = BTreeSet::new();
    for (i, line) in reader.lines().enumerate() {
        if let Some(p) = parse_pair(&line?, i + 1)? {
            pairs.insert(p);
        }
    }
    if pairs.is_empty() {
        return Err(IoError::Empty);
    }
    let labels: Vec<u64> = pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect::<BTreeSet<u64>>()
        .into_iter()
        .collect();
    let id = |l: u64| labels.binary_search(&l).expect("label collected above");
    let self_loops = pairs.iter().filter(|(a, b)| a == b).count();
    let graph = Graph::from_edges(labels.len(), pairs.iter().map(|&(a, b)| (id(a), id(b))))?;
    Ok(LabeledGraph {
        graph,
        labels,
        ordered_pairs: pairs.len(),
        self_loops,
    })
}

pub fn load_edge_list(path: &Path) -> Result<LabeledGraph, IoError> {
    read_edge_list(BufReader::new(File::open(path)?))
}

/// Writes one undirected edge per line, smaller label first, sorted.
pub fn write_edge_list<W: Write>(g: &LabeledGraph, mut out: W) -> io::Result<()> {
    let mut edges: Vec<(u64, u64)> = g
        .graph
        .edges()
        .map(|(u, v)| {
            let (a, b) = (g.labels[u], g.labels[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "{a} {b}")?;
    }
    Ok(())
}

/// Reads `label behavior` seed lines, skipping `#` comments and blank lines.
pub fn read_seeds<R: BufRead>(reader: R, g: &LabeledGraph, k: usize) -> Result<SeedAssignment, IoError> {
    let mut sets = vec![Vec::new(); k];
    for (i, line) in reader.lines().enumerate() {
        let Some((label, behavior)) = parse_pair(&line?, i + 1)? else {
            continue;
        };
        let node = g.node_of(label).ok_or(IoError::UnknownLabel { line: i + 1, label })?;
        let behavior = behavior as usize;
        if behavior >= k {
            return Err(IoError::BehaviorOutOfRange { line: i + 1, behavior, k });
        }
        sets[behavior].push(node);
    }
    Ok(SeedAssignment::from_sets(sets))
}

/// `label behavior` lines ordered by label, then behavior.
pub fn seed_lines(seeds: &SeedAssignment, g: &LabeledGraph) -> Vec<String> {
    let mut pairs: Vec<(u64, usize)> = seeds.pairs().into_iter().map(|(v, i)| (g.labels[v], i)).collect();
    pairs.sort_unstable();
    pairs.into_iter().map(|(l, i)| format!("{l} {i}")).collect()
}

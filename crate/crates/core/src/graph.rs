//! Simple undirected graphs with dense node ids.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Who influences whom. The diffusion engine only needs these two views, which lets the
/// same engine run on undirected graphs and on the directed in-neighbor construction used
/// by the averaging-equivalence harness.
pub trait Topology {
    fn node_count(&self) -> usize;

    /// Nodes whose adoptions make up `v`'s social signal. Each contributes `1/len`.
    fn influencers(&self, v: NodeId) -> &[NodeId];

    /// Nodes whose social signal includes `v`.
    fn followers(&self, v: NodeId) -> &[NodeId];
}

/// Undirected simple graph. Neighbor lists are sorted and symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    edges: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes. Self-loops are dropped and repeated pairs (in either
    /// order) collapse into one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange {
                        node: x,
                        node_count: n,
                    });
                }
            }
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Sorts and deduplicates raw (symmetric) adjacency lists.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<NodeId>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            adj,
            edges: twice / 2,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Number of ordered neighbor pairs, twice the undirected count.
    pub fn ordered_edge_count(&self) -> usize {
        2 * self.edges
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Undirected edges as `(smaller, larger)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn mean_degree(&self) -> f64 {
        if self.adj.is_empty() {
            0.0
        } else {
            self.ordered_edge_count() as f64 / self.node_count() as f64
        }
    }

    /// Full scan of the symmetry / simplicity invariants.
    pub fn is_simple_and_symmetric(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, ns)| {
            ns.windows(2).all(|w| w[0] < w[1])
                && ns.iter().all(|&v| v != u && v < self.adj.len() && self.has_edge(v, u))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Fraction of neighbor pairs of `v` that are themselves adjacent; 0 below degree 2.
    pub fn local_clustering(&self, v: NodeId) -> f64 {
        let ns = &self.adj[v];
        let d = ns.len();
        if d < 2 {
            return 0.0;
        }
        let mut links = 0usize;
        for (a, &x) in ns.iter().enumerate() {
            for &y in &ns[a + 1..] {
                if self.has_edge(x, y) {
                    links += 1;
                }
            }
        }
        links as f64 / (d * (d - 1) / 2) as f64
    }

    pub fn average_clustering(&self) -> f64 {
        let n = self.node_count();
        if n == 0 {
            return 0.0;
        }
        (0..n).map(|v| self.local_clustering(v)).sum::<f64>() / n as f64
    }

    /// Influence of `w` on `v`: `1/|N(v)|` for neighbors, 0 otherwise.
    pub fn influence_weight(&self, v: NodeId, w: NodeId) -> Result<f64> {
        let d = self.degree(v);
        if d == 0 {
            return Err(Error::IsolatedNode(v));
        }
        Ok(if self.has_edge(v, w) {
            1.0 / d as f64
        } else {
            0.0
        })
    }
}

impl Topology for Graph {
    fn node_count(&self) -> usize {
        self.adj.len()
    }

    fn influencers(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    fn followers(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }
}

/// Directed graph stored as in-neighbor lists (influencers) plus the reverse lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InNeighborGraph {
    inn: Vec<Vec<NodeId>>,
    out: Vec<Vec<NodeId>>,
}

impl InNeighborGraph {
    pub fn from_in_lists(mut inn: Vec<Vec<NodeId>>) -> Result<Self> {
        let n = inn.len();
        let mut out = vec![Vec::new(); n];
        for (v, list) in inn.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &u in list.iter() {
                if u >= n {
                    return Err(Error::NodeOutOfRange {
                        node: u,
                        node_count: n,
                    });
                }
                out[u].push(v);
            }
        }
        Ok(InNeighborGraph { inn, out })
    }
}

impl Topology for InNeighborGraph {
    fn node_count(&self) -> usize {
        self.inn.len()
    }

    fn influencers(&self, v: NodeId) -> &[NodeId] {
        &self.inn[v]
    }

    fn followers(&self, v: NodeId) -> &[NodeId] {
        &self.out[v]
    }
}

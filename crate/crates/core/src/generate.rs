//! Synthetic topology generators.
//!
//! All generators are deterministic functions of their parameters and the supplied RNG.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::{Graph, InNeighborGraph, NodeId};

/// Preferential-attachment tree: every new node adds one link to an existing node chosen with
/// probability proportional to its current degree. Node 1 attaches to node 0.
pub fn preferential_attachment<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return Err(invalid("n", "preferential attachment needs at least 2 nodes"));
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Each edge contributes both endpoints, so a uniform pick is degree-proportional.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * (n - 1));
    edges.push((1, 0));
    endpoints.extend([0, 1]);
    for t in 2..n {
        let target = endpoints[rng.gen_range(0..endpoints.len())];
        edges.push((t, target));
        endpoints.extend([t, target]);
    }
    Graph::from_edges(n, edges)
}

/// Ring lattice with `ring_neighbors / 2` links to each side, each lattice edge rewired with
/// probability `p_rewire`. Returns the graph and the number of rewired edges.
pub fn small_world_counted<R: Rng + ?Sized>(
    n: usize,
    ring_neighbors: usize,
    p_rewire: f64,
    rng: &mut R,
) -> Result<(Graph, usize)> {
    if !(0.0..=1.0).contains(&p_rewire) {
        return Err(invalid("p_rewire", "must lie in [0, 1]"));
    }
    if ring_neighbors == 0 || ring_neighbors % 2 != 0 {
        return Err(invalid("ring_neighbors", "must be a positive even number"));
    }
    if n <= 2 * ring_neighbors {
        return Err(invalid("n", "must exceed twice ring_neighbors"));
    }
    let half = ring_neighbors / 2;
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::with_capacity(ring_neighbors + 2); n];
    let mut lattice = Vec::with_capacity(n * half);
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].push(v);
            adj[v].push(u);
            lattice.push((u, v));
        }
    }
    let mut rewired = 0;
    for (u, v) in lattice {
        if rng.gen::<f64>() >= p_rewire || adj[u].len() >= n - 1 {
            continue;
        }
        let w = loop {
            let w = rng.gen_range(0..n);
            if w != u && !adj[u].contains(&w) {
                break w;
            }
        };
        adj[u].retain(|&x| x != v);
        adj[v].retain(|&x| x != u);
        adj[u].push(w);
        adj[w].push(u);
        rewired += 1;
    }
    Ok((Graph::from_adjacency(adj), rewired))
}

pub fn small_world<R: Rng + ?Sized>(
    n: usize,
    ring_neighbors: usize,
    p_rewire: f64,
    rng: &mut R,
) -> Result<Graph> {
    small_world_counted(n, ring_neighbors, p_rewire, rng).map(|(g, _)| g)
}

/// Spatially clustered network: nodes dropped uniformly in the unit square, then a uniformly
/// chosen node is repeatedly linked to its nearest unlinked node until the mean degree
/// reaches `avg_degree`.
pub fn spatially_clustered<R: Rng + ?Sized>(
    n: usize,
    avg_degree: f64,
    rng: &mut R,
) -> Result<Graph> {
    if !(avg_degree >= 0.0) || avg_degree >= n as f64 {
        return Err(invalid("avg_degree", "must be non-negative and below n"));
    }
    if avg_degree > (n - 1) as f64 {
        return Err(invalid("avg_degree", "cannot exceed n - 1"));
    }
    let pos: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let dist2 = |a: NodeId, b: NodeId| {
        let (dx, dy) = (pos[a].0 - pos[b].0, pos[a].1 - pos[b].1);
        dx * dx + dy * dy
    };
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut edges = 0usize;
    while (2 * edges) as f64 / (n as f64) < avg_degree {
        let v = rng.gen_range(0..n);
        if adj[v].len() == n - 1 {
            continue;
        }
        let mut best: Option<(f64, NodeId)> = None;
        for w in 0..n {
            if w == v || adj[v].contains(&w) {
                continue;
            }
            let d = dist2(v, w);
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, w));
            }
        }
        if let Some((_, w)) = best {
            adj[v].push(w);
            adj[w].push(v);
            edges += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Every node draws `in_degree` distinct influencers uniformly from the other nodes.
pub fn random_in_regular<R: Rng + ?Sized>(
    n: usize,
    in_degree: usize,
    rng: &mut R,
) -> Result<InNeighborGraph> {
    if n == 0 || in_degree > n - 1 {
        return Err(invalid("in_degree", "must be at most n - 1"));
    }
    let inn = (0..n)
        .map(|v| {
            index::sample(rng, n - 1, in_degree)
                .into_iter()
                .map(|i| if i >= v { i + 1 } else { i })
                .collect()
        })
        .collect();
    InNeighborGraph::from_in_lists(inn)
}

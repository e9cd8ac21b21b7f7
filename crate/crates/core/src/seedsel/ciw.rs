//! Constrained social influence weight heuristics.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{ranked_rounds, top_eligible, Assigner, Problem, Selection};
use crate::behavior::BehaviorSet;
use crate::error::Result;
use crate::graph::{NodeId, Topology};

/// `e_i(v) = 1 + Σ 1/|N(u)|` over neighbors `u ∉ exclude` of `v` with `r(u) ≥ c_i`.
pub fn ciw<T: Topology + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
    i: usize,
    exclude: &[NodeId],
) -> Vec<f64> {
    let n = topo.node_count();
    let mut skip = vec![false; n];
    for &u in exclude {
        skip[u] = true;
    }
    let c = behaviors.cost(i);
    (0..n)
        .map(|v| {
            1.0 + topo
                .followers(v)
                .iter()
                .filter(|&&u| !skip[u] && resources[u] >= c)
                .map(|&u| 1.0 / topo.influencers(u).len() as f64)
                .sum::<f64>()
        })
        .collect()
}

/// Ranks nodes per behavior by `e_i(v)` on the initial resources and fills the budget in
/// ranked rounds.
pub fn ciw_ranked<T, R>(p: &Problem<'_, T>, rng: &mut R) -> Result<Selection>
where
    T: Topology + ?Sized,
    R: Rng + ?Sized,
{
    let mut a = Assigner::new(p)?;
    let scores: Vec<Vec<f64>> = (0..p.behaviors.k())
        .map(|i| ciw(p.topo, p.behaviors, p.resources, i, &[]))
        .collect();
    ranked_rounds(&mut a, rng, |a| {
        (0..a.k()).map(|i| top_eligible(a, i, &scores[i])).collect()
    });
    Ok(a.finish())
}

/// Picks the round's proposals for behavior `i` one at a time. After each pick its influence
/// is removed from its neighbors' scores, so later picks are scored by what they add.
pub(super) fn hill_climb<T: Topology + ?Sized>(p: &Problem<'_, T>, a: &Assigner<'_>, i: usize) -> Vec<NodeId> {
    let mut e = ciw(p.topo, p.behaviors, a.resources(), i, a.seeds().set(i));
    let n = a.node_count();
    let c = p.behaviors.cost(i);
    let mut taken = vec![false; n];
    let mut out = Vec::new();
    while out.len() < a.remaining()[i] {
        let mut best: Option<NodeId> = None;
        for v in 0..n {
            if taken[v] || !a.eligible(v, i) {
                continue;
            }
            if best.map_or(true, |b| e[v] > e[b]) {
                best = Some(v);
            }
        }
        let Some(u) = best else { break };
        taken[u] = true;
        out.push(u);
        if a.resources()[u] >= c {
            let w = 1.0 / p.topo.influencers(u).len() as f64;
            for &v in p.topo.influencers(u) {
                if !taken[v] {
                    e[v] -= w;
                }
            }
        }
    }
    out
}

/// Ranked rounds whose per-behavior proposals come from marginal influence hill climbing on
/// the current resources.
pub fn ciw_max_margin<T, R>(p: &Problem<'_, T>, rng: &mut R) -> Result<Selection>
where
    T: Topology + ?Sized,
    R: Rng + ?Sized,
{
    let mut a = Assigner::new(p)?;
    ranked_rounds(&mut a, rng, |a| (0..a.k()).map(|i| hill_climb(p, a, i)).collect());
    Ok(a.finish())
}

//! Degree based heuristics.

use alloc::vec::Vec;

use rand::Rng;

use super::{ranked_rounds, top_eligible, Assigner, Problem, Selection};
use crate::behavior::BehaviorSet;
use crate::error::Result;
use crate::graph::{NodeId, Topology};
use crate::knapsack::{select_adoption_set, Item};
use crate::mask::BehaviorMask;
use crate::{COST_EPS, MAX_BEHAVIORS};

/// Node ids by degree descending, then id.
fn by_degree<T: Topology + ?Sized>(topo: &T) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..topo.node_count()).collect();
    order.sort_by(|&a, &b| {
        topo.followers(b)
            .len()
            .cmp(&topo.followers(a).len())
            .then(a.cmp(&b))
    });
    order
}

/// Walks nodes from the highest degree down and gives each one behavior drawn uniformly from
/// those still needing seeds. Without top-up a node that cannot afford its draw is passed
/// over; with top-up it is always seeded. A node seeds at most one behavior.
pub fn naive_degree<T, R>(p: &Problem<'_, T>, rng: &mut R) -> Result<Selection>
where
    T: Topology + ?Sized,
    R: Rng + ?Sized,
{
    let mut a = Assigner::new(p)?;
    for v in by_degree(p.topo) {
        if a.done() {
            break;
        }
        let open: Vec<usize> = (0..a.k()).filter(|&i| a.remaining()[i] > 0).collect();
        let j = open[rng.gen_range(0..open.len())];
        if a.eligible(v, j) {
            a.assign(v, j);
        }
    }
    Ok(a.finish())
}

/// Utility-maximizing affordable subset of `open` for resource `r`.
fn utility_knapsack(behaviors: &BehaviorSet, open: BehaviorMask, r: f64) -> BehaviorMask {
    let mut items = [Item::default(); MAX_BEHAVIORS];
    let mut m = 0;
    for i in open.iter() {
        if behaviors.cost(i) <= r + COST_EPS {
            items[m] = Item {
                index: i,
                value: behaviors.utility(i),
                cost: behaviors.cost(i),
            };
            m += 1;
        }
    }
    select_adoption_set(&items[..m], r)
}

/// Walks nodes from the highest degree down and seeds each with the utility-maximizing
/// subset of the still-needed behaviors it can afford. Resources are never topped up and a
/// node may seed several behaviors, whatever the variant flags say.
pub fn naive_degree_knapsack<T: Topology + ?Sized>(p: &Problem<'_, T>) -> Result<Selection> {
    let mut a = Assigner::new(p)?;
    for v in by_degree(p.topo) {
        if a.done() {
            break;
        }
        let open: BehaviorMask = (0..a.k()).filter(|&i| a.remaining()[i] > 0).collect();
        for i in utility_knapsack(p.behaviors, open, p.resources[v]).iter() {
            a.force(v, i);
        }
    }
    Ok(a.finish())
}

/// Seeds every node with the utility-maximizing subset of all behaviors it can afford.
pub fn seed_everyone<T: Topology + ?Sized>(p: &Problem<'_, T>) -> Result<Selection> {
    let mut a = Assigner::new(p)?;
    let all = p.behaviors.all();
    for v in 0..p.topo.node_count() {
        for i in utility_knapsack(p.behaviors, all, p.resources[v]).iter() {
            a.force(v, i);
        }
    }
    let mut sel = a.finish();
    sel.shortfall.iter_mut().for_each(|s| *s = 0);
    Ok(sel)
}

/// `d_i(v)`: neighbors of `v` whose resource covers `c_i`, indexed `[i][v]`.
pub fn resource_degree<T: Topology + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
) -> Vec<Vec<usize>> {
    (0..behaviors.k())
        .map(|i| {
            let c = behaviors.cost(i);
            (0..topo.node_count())
                .map(|v| topo.followers(v).iter().filter(|&&u| resources[u] >= c).count())
                .collect()
        })
        .collect()
}

/// Ranks nodes per behavior by `d_i(v)` on the initial resources and fills the budget in
/// ranked rounds.
pub fn degree_resource_ranked<T, R>(p: &Problem<'_, T>, rng: &mut R) -> Result<Selection>
where
    T: Topology + ?Sized,
    R: Rng + ?Sized,
{
    let mut a = Assigner::new(p)?;
    let scores: Vec<Vec<f64>> = resource_degree(p.topo, p.behaviors, p.resources)
        .into_iter()
        .map(|d| d.into_iter().map(|x| x as f64).collect())
        .collect();
    ranked_rounds(&mut a, rng, |a| {
        (0..a.k()).map(|i| top_eligible(a, i, &scores[i])).collect()
    });
    Ok(a.finish())
}

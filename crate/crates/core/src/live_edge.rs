//! Live-edge formulation of sticky diffusion.
//!
//! Before the first epoch every node `v` samples, with replacement, one influencer per behavior
//! it could ever afford (`κ(v)` draws, influencer `w` with probability `1/|N(v)|`). A node then
//! considers behavior `i` exactly when its live edge for `i` points at a holder of `i`. Under
//! independent thresholds the distribution of final adoption states matches the threshold
//! process.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::behavior::{AdoptionMode, BehaviorSet, ModelParams};
use crate::diffuse::{check_inputs, check_seed_budgets, metrics, Change, RunOutcome, SeedAssignment};
use crate::error::{Error, Result};
use crate::graph::{NodeId, Topology};
use crate::knapsack::{select_adoption_set, Item};
use crate::mask::BehaviorMask;
use crate::{Thresholds, COST_EPS, MAX_BEHAVIORS};

#[derive(Clone, Debug, PartialEq)]
pub struct LiveEdgeOutcome {
    pub outcome: RunOutcome,
    /// `live[v][i]`: the influencer sampled for behavior `i`; length `κ(v)`, `None` when `v`
    /// has no influencers.
    pub live: Vec<Vec<Option<NodeId>>>,
    /// `origin[v * k + i]`: the seed whose behavior `i` reached `v` along live edges.
    pub origin: Vec<Option<NodeId>>,
}

impl LiveEdgeOutcome {
    /// Nodes that hold behavior `i` through seed `s`.
    pub fn reached_from(&self, s: NodeId, i: usize) -> Vec<NodeId> {
        let k = self.origin.len() / self.live.len().max(1);
        (0..self.live.len())
            .filter(|&v| self.origin[v * k + i] == Some(s))
            .collect()
    }
}

/// Samples live edges and runs the live-edge process to its fixed point.
pub fn run_live_edge<T: Topology + ?Sized, R: Rng + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
    seeds: &SeedAssignment,
    params: &ModelParams,
    rng: &mut R,
) -> Result<LiveEdgeOutcome> {
    params.validate()?;
    if params.adoption != AdoptionMode::Sticky {
        return Err(Error::RequiresSticky);
    }
    let n = topo.node_count();
    let k = behaviors.k();
    // Thresholds are not used; the check only needs a correctly shaped placeholder.
    check_inputs(topo, behaviors, resources, &Thresholds::constant(n, k, 0.0), seeds)?;
    let initial = seeds.masks(n);
    check_seed_budgets(behaviors, resources, &initial)?;

    let live: Vec<Vec<Option<NodeId>>> = (0..n)
        .map(|v| {
            let inf = topo.influencers(v);
            (0..behaviors.kappa(resources[v]))
                .map(|_| (!inf.is_empty()).then(|| inf[rng.gen_range(0..inf.len())]))
                .collect()
        })
        .collect();

    let mut origin = vec![None; n * k];
    for (i, set) in seeds.sets().iter().enumerate() {
        for &s in set {
            origin[s * k + i] = Some(s);
        }
    }

    let limit = params.epoch_limit(n);
    let mut state = initial.clone();
    let mut history = Vec::new();
    let mut converged = false;
    let mut items = [Item::default(); MAX_BEHAVIORS];
    while history.len() < limit {
        let mut changes: Vec<(Change, BehaviorMask)> = Vec::new();
        for v in 0..n {
            let held = state[v];
            let budget = resources[v] - behaviors.mask_cost(held);
            let inf = topo.influencers(v);
            let mut m = 0;
            for (i, edge) in live[v].iter().enumerate() {
                let Some(w) = *edge else { continue };
                if held.contains(i) || !state[w].contains(i) || behaviors.cost(i) > budget + COST_EPS {
                    continue;
                }
                let holders = inf.iter().filter(|&&x| state[x].contains(i)).count();
                let signal = holders as f64 / inf.len() as f64;
                items[m] = Item {
                    index: i,
                    value: behaviors.payoff(params.w, i, signal),
                    cost: behaviors.cost(i),
                };
                m += 1;
            }
            if m == 0 {
                continue;
            }
            let chosen = select_adoption_set(&items[..m], budget);
            if !chosen.is_empty() {
                let change = Change {
                    node: v,
                    before: held,
                    after: held.union(chosen),
                };
                changes.push((change, chosen));
            }
        }
        if changes.is_empty() {
            converged = true;
            break;
        }
        for (c, chosen) in &changes {
            for i in chosen.iter() {
                let w = live[c.node][i].expect("considered behaviors have a live edge");
                origin[c.node * k + i] = origin[w * k + i];
            }
        }
        for (c, _) in &changes {
            state[c.node] = c.after;
        }
        history.push(changes.into_iter().map(|(c, _)| c).collect());
    }

    let metrics = metrics(behaviors, resources, &state);
    let epochs = history.len();
    Ok(LiveEdgeOutcome {
        outcome: RunOutcome {
            adopted: state,
            initial,
            history,
            epochs,
            converged,
            cycle: false,
            metrics,
        },
        live,
        origin,
    })
}

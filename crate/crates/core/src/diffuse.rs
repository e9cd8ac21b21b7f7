//! Synchronous diffusion engine and the three diffusion metrics.

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::{decide, AdoptionMode, BehaviorSet, ModelParams, NodeView, Thresholds};
use crate::error::{invalid, Error, Result};
use crate::graph::{NodeId, Topology};
use crate::mask::BehaviorMask;
use crate::COST_EPS;

/// Seed sets, one per behavior. Each set is kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeedAssignment {
    sets: Vec<Vec<NodeId>>,
}

impl SeedAssignment {
    pub fn new(k: usize) -> Self {
        SeedAssignment {
            sets: vec![Vec::new(); k],
        }
    }

    pub fn from_sets(mut sets: Vec<Vec<NodeId>>) -> Self {
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
        }
        SeedAssignment { sets }
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    /// Adds `v` as a seed of behavior `i`; returns false if it already was one.
    pub fn insert(&mut self, i: usize, v: NodeId) -> bool {
        match self.sets[i].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.sets[i].insert(pos, v);
                true
            }
        }
    }

    pub fn set(&self, i: usize) -> &[NodeId] {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[Vec<NodeId>] {
        &self.sets
    }

    pub fn counts(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// Number of (node, behavior) seed pairs.
    pub fn total(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Sorted union of all seed sets.
    pub fn union(&self) -> Vec<NodeId> {
        let mut all: Vec<NodeId> = self.sets.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// True when no node seeds two behaviors.
    pub fn is_disjoint(&self) -> bool {
        self.union().len() == self.total()
    }

    /// Per-node masks of seeded behaviors.
    pub fn masks(&self, n: usize) -> Vec<BehaviorMask> {
        let mut m = vec![BehaviorMask::EMPTY; n];
        for (i, set) in self.sets.iter().enumerate() {
            for &v in set {
                m[v].insert(i);
            }
        }
        m
    }

    /// `(node, behavior)` pairs ordered by node, then behavior.
    pub fn pairs(&self) -> Vec<(NodeId, usize)> {
        let mut p: Vec<(NodeId, usize)> = self
            .sets
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&v| (v, i)))
            .collect();
        p.sort_unstable();
        p
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Metrics {
    /// Nodes holding at least one behavior.
    pub participation: usize,
    /// Held (node, behavior) pairs.
    pub adoption: usize,
    /// Spent resource over available resource.
    pub utilization: f64,
}

/// Participation, adoption and utilization of a final adoption state.
pub fn metrics(behaviors: &BehaviorSet, resources: &[f64], adopted: &[BehaviorMask]) -> Metrics {
    let mut participation = 0;
    let mut adoption = 0;
    let mut spent = 0.0;
    for m in adopted {
        if !m.is_empty() {
            participation += 1;
            adoption += m.len();
            spent += behaviors.mask_cost(*m);
        }
    }
    let available: f64 = resources.iter().sum();
    let utilization = if available > 0.0 { spent / available } else { 0.0 };
    Metrics {
        participation,
        adoption,
        utilization,
    }
}

/// One node's state change within an epoch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Change {
    pub node: NodeId,
    pub before: BehaviorMask,
    pub after: BehaviorMask,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    /// Final behaviors per node.
    pub adopted: Vec<BehaviorMask>,
    /// Seed state before the first epoch.
    pub initial: Vec<BehaviorMask>,
    /// Changes of every simulated epoch, in order.
    pub history: Vec<Vec<Change>>,
    /// Epochs that changed the state, or the epoch cap when the run did not converge.
    pub epochs: usize,
    pub converged: bool,
    /// A two-epoch oscillation was detected (reevaluate mode only).
    pub cycle: bool,
    pub metrics: Metrics,
}

impl RunOutcome {
    /// Final active set `S_i` of behavior `i`.
    pub fn active_set(&self, i: usize) -> Vec<NodeId> {
        self.adopted
            .iter()
            .enumerate()
            .filter(|(_, m)| m.contains(i))
            .map(|(v, _)| v)
            .collect()
    }

    /// State after `epoch` simulated epochs (0 is the seed state).
    pub fn state_at(&self, epoch: usize) -> Vec<BehaviorMask> {
        let mut state = self.initial.clone();
        for changes in self.history.iter().take(epoch) {
            for c in changes {
                state[c.node] = c.after;
            }
        }
        state
    }
}

/// Checks that every seed can afford everything it was seeded with.
pub(crate) fn check_seed_budgets(
    behaviors: &BehaviorSet,
    resources: &[f64],
    initial: &[BehaviorMask],
) -> Result<()> {
    for (v, m) in initial.iter().enumerate() {
        let cost = behaviors.mask_cost(*m);
        if cost > resources[v] + COST_EPS {
            return Err(Error::SeedUnaffordable {
                node: v,
                cost,
                resource: resources[v],
            });
        }
    }
    Ok(())
}

pub(crate) fn check_inputs<T: Topology + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
    thresholds: &Thresholds,
    seeds: &SeedAssignment,
) -> Result<()> {
    let n = topo.node_count();
    if resources.len() != n {
        return Err(invalid("resources", "length differs from node count"));
    }
    if thresholds.node_count() != n || thresholds.k() != behaviors.k() {
        return Err(invalid("thresholds", "shape differs from nodes x behaviors"));
    }
    if seeds.k() != behaviors.k() {
        return Err(invalid("seeds", "one seed set per behavior is required"));
    }
    if let Some(&v) = seeds.sets().iter().flatten().find(|&&v| v >= n) {
        return Err(Error::NodeOutOfRange {
            node: v,
            node_count: n,
        });
    }
    Ok(())
}

/// Runs synchronous epochs until no node changes (or the epoch cap is hit).
///
/// Seeds start out holding their assigned behaviors; their resources must already include
/// any top-up. In every epoch each node decides against the previous epoch's state.
///
/// A node's decision can only change when one of its influencers changed in the previous
/// epoch, so after the first epoch only those nodes are re-evaluated.
pub fn run_diffusion<T: Topology + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
    thresholds: &Thresholds,
    seeds: &SeedAssignment,
    params: &ModelParams,
) -> Result<RunOutcome> {
    params.validate()?;
    check_inputs(topo, behaviors, resources, thresholds, seeds)?;
    let n = topo.node_count();
    let k = behaviors.k();
    let initial = seeds.masks(n);
    check_seed_budgets(behaviors, resources, &initial)?;

    let limit = params.epoch_limit(n);
    let mut state = initial.clone();
    let mut history: Vec<Vec<Change>> = Vec::new();
    // State two epochs back, for oscillation detection in reevaluate mode.
    let mut two_back: Option<Vec<BehaviorMask>> = None;
    let mut one_back: Option<Vec<BehaviorMask>> = None;
    let track_cycles = params.adoption == AdoptionMode::Reevaluate;

    let mut dirty: Vec<NodeId> = (0..n).collect();
    let mut marked = vec![false; n];
    let mut signals = [0.0f64; crate::MAX_BEHAVIORS];
    let mut converged = false;
    let mut cycle = false;
    let mut epoch = 0;

    while epoch < limit {
        let mut changes = Vec::new();
        for &v in &dirty {
            let inf = topo.influencers(v);
            let sig = &mut signals[..k];
            sig.iter_mut().for_each(|x| *x = 0.0);
            if !inf.is_empty() {
                for &w in inf {
                    for i in state[w].iter() {
                        sig[i] += 1.0;
                    }
                }
                let d = inf.len() as f64;
                sig.iter_mut().for_each(|x| *x /= d);
            }
            let view = NodeView {
                signals: sig,
                thresholds: thresholds.node(v),
                resource: resources[v],
                held: state[v],
            };
            let next = decide(behaviors, params, &view);
            if next != state[v] {
                changes.push(Change {
                    node: v,
                    before: state[v],
                    after: next,
                });
            }
        }
        if changes.is_empty() {
            converged = true;
            break;
        }
        epoch += 1;
        if track_cycles {
            two_back = one_back.take();
            one_back = Some(state.clone());
        }
        for c in &changes {
            state[c.node] = c.after;
        }
        dirty.clear();
        for c in &changes {
            for &f in topo.followers(c.node) {
                if !marked[f] {
                    marked[f] = true;
                    dirty.push(f);
                }
            }
        }
        dirty.sort_unstable();
        for &f in &dirty {
            marked[f] = false;
        }
        history.push(changes);

        if track_cycles && two_back.as_deref() == Some(&state[..]) {
            // Period-2 orbit: the state at the cap is fixed by the parity of what is left.
            cycle = true;
            if (limit - epoch) % 2 == 1 {
                state = one_back.take().unwrap_or_default();
            }
            epoch = limit;
            break;
        }
    }

    let metrics = metrics(behaviors, resources, &state);
    Ok(RunOutcome {
        adopted: state,
        initial,
        history,
        epochs: epoch,
        converged,
        cycle,
        metrics,
    })
}

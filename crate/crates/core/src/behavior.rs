//! Behaviors, per-node thresholds, payoffs and the candidate rule.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::{NodeId, Topology};
use crate::knapsack::{select_adoption_set, Item};
use crate::mask::BehaviorMask;
use crate::COST_EPS;

/// Upper bound on the number of behaviors; adoption sets are solved by exhaustive enumeration.
pub const MAX_BEHAVIORS: usize = 20;

/// The `k` behaviors, indexed in strictly ascending order of cost.
#[derive(Clone, Debug, PartialEq)]
pub struct BehaviorSet {
    costs: Vec<f64>,
    utilities: Vec<f64>,
}

impl BehaviorSet {
    pub fn new(costs: Vec<f64>, utilities: Vec<f64>) -> Result<Self> {
        if costs.is_empty() {
            return Err(Error::InvalidBehaviors("at least one behavior is required"));
        }
        if costs.len() > MAX_BEHAVIORS {
            return Err(Error::InvalidBehaviors("more than 20 behaviors"));
        }
        if costs.len() != utilities.len() {
            return Err(Error::InvalidBehaviors("costs and utilities differ in length"));
        }
        if !costs.iter().all(|&c| c > 0.0 && c <= 1.0) {
            return Err(Error::InvalidBehaviors("costs must lie in (0, 1]"));
        }
        if !utilities.iter().all(|&u| (0.0..=1.0).contains(&u)) {
            return Err(Error::InvalidBehaviors("utilities must lie in [0, 1]"));
        }
        if !costs.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidBehaviors(
                "costs must be strictly ascending (equal costs are not supported)",
            ));
        }
        Ok(BehaviorSet { costs, utilities })
    }

    /// Behaviors whose utility equals their cost.
    pub fn cost_valued(costs: Vec<f64>) -> Result<Self> {
        let utilities = costs.clone();
        Self::new(costs, utilities)
    }

    pub fn k(&self) -> usize {
        self.costs.len()
    }

    pub fn cost(&self, i: usize) -> f64 {
        self.costs[i]
    }

    pub fn utility(&self, i: usize) -> f64 {
        self.utilities[i]
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn utilities(&self) -> &[f64] {
        &self.utilities
    }

    pub fn all(&self) -> BehaviorMask {
        BehaviorMask::full(self.k())
    }

    /// Summed cost of a set of behaviors, added in ascending index order.
    pub fn mask_cost(&self, m: BehaviorMask) -> f64 {
        m.iter().map(|i| self.costs[i]).sum()
    }

    /// Number of behaviors affordable on their own with resource `r`, i.e. the largest
    /// 1-based index `j` with `c_j <= r`, or 0 when even the cheapest is out of reach.
    pub fn kappa(&self, r: f64) -> usize {
        self.costs.iter().take_while(|&&c| c <= r + COST_EPS).count()
    }

    /// Payoff `w·u_i + (1 − w)·l`.
    pub fn payoff(&self, w: f64, i: usize, signal: f64) -> f64 {
        w * self.utilities[i] + (1.0 - w) * signal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AdoptionMode {
    /// Adopted behaviors are kept forever; new adoptions spend the remaining budget.
    #[default]
    Sticky,
    /// Every epoch the node re-solves its adoption set over held and newly signaled
    /// behaviors with its whole resource, and may drop behaviors.
    Reevaluate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThresholdMode {
    /// Independent `U(0,1)` threshold per behavior.
    #[default]
    Different,
    /// One `U(0,1)` draw per node shared by all behaviors.
    Matched,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Weight of intrinsic utility against social signal in the payoff.
    pub w: f64,
    pub adoption: AdoptionMode,
    pub thresholds: ThresholdMode,
    /// Epoch cap; `None` means `10·n`.
    pub max_epochs: Option<usize>,
    /// Largest number of signaled behaviors enumerated exactly by the one-step computation.
    pub enumeration_cap: usize,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            w: 0.5,
            adoption: AdoptionMode::Sticky,
            thresholds: ThresholdMode::Different,
            max_epochs: None,
            enumeration_cap: 20,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.w) {
            return Err(invalid("w", "must lie in [0, 1]"));
        }
        if self.max_epochs == Some(0) {
            return Err(invalid("max_epochs", "must be at least 1"));
        }
        Ok(())
    }

    pub fn epoch_limit(&self, n: usize) -> usize {
        self.max_epochs.unwrap_or(10 * n).max(1)
    }
}

/// Per-node, per-behavior adoption thresholds, stored node-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Thresholds {
    k: usize,
    values: Vec<f64>,
}

impl Thresholds {
    pub fn sample<R: Rng + ?Sized>(n: usize, k: usize, mode: ThresholdMode, rng: &mut R) -> Self {
        let values = match mode {
            ThresholdMode::Different => (0..n * k).map(|_| rng.gen()).collect(),
            ThresholdMode::Matched => {
                let mut values = Vec::with_capacity(n * k);
                for _ in 0..n {
                    let t: f64 = rng.gen();
                    values.extend(core::iter::repeat(t).take(k));
                }
                values
            }
        };
        Thresholds { k, values }
    }

    /// Same threshold for every node and behavior.
    pub fn constant(n: usize, k: usize, theta: f64) -> Self {
        Thresholds {
            k,
            values: alloc::vec![theta; n * k],
        }
    }

    /// Node-major values: `values[v * k + i]`.
    pub fn from_values(k: usize, values: Vec<f64>) -> Result<Self> {
        if k == 0 || values.len() % k != 0 {
            return Err(invalid("thresholds", "length must be a multiple of k"));
        }
        Ok(Thresholds { k, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.values.len() / self.k
    }

    pub fn get(&self, v: NodeId, i: usize) -> f64 {
        self.values[v * self.k + i]
    }

    pub fn node(&self, v: NodeId) -> &[f64] {
        &self.values[v * self.k..(v + 1) * self.k]
    }
}

/// i.i.d. `U(0,1)` resources.
pub fn sample_resources<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.gen()).collect()
}

/// Fraction of `v`'s influencers that hold behavior `i`; 0 for a node without influencers.
pub fn social_signal<T: Topology + ?Sized>(
    topo: &T,
    adopted: &[BehaviorMask],
    i: usize,
    v: NodeId,
) -> f64 {
    let inf = topo.influencers(v);
    if inf.is_empty() {
        return 0.0;
    }
    let holders = inf.iter().filter(|&&w| adopted[w].contains(i)).count();
    holders as f64 / inf.len() as f64
}

/// All `k` signals of `v` in one pass over its influencers.
pub fn social_signals<T: Topology + ?Sized>(
    topo: &T,
    adopted: &[BehaviorMask],
    v: NodeId,
    out: &mut [f64],
) {
    out.iter_mut().for_each(|x| *x = 0.0);
    let inf = topo.influencers(v);
    if inf.is_empty() {
        return;
    }
    for &w in inf {
        for i in adopted[w].iter() {
            out[i] += 1.0;
        }
    }
    let d = inf.len() as f64;
    out.iter_mut().for_each(|x| *x /= d);
}

/// The node-local inputs of an adoption decision.
#[derive(Clone, Copy, Debug)]
pub struct NodeView<'a> {
    pub signals: &'a [f64],
    pub thresholds: &'a [f64],
    pub resource: f64,
    pub held: BehaviorMask,
}

/// Budget available to new adoptions under the given mode.
pub fn budget(behaviors: &BehaviorSet, mode: AdoptionMode, view: &NodeView<'_>) -> f64 {
    match mode {
        AdoptionMode::Sticky => view.resource - behaviors.mask_cost(view.held),
        AdoptionMode::Reevaluate => view.resource,
    }
}

/// Behaviors `v` may adopt this epoch: signal present and at or above threshold, cost within
/// budget. In reevaluate mode held behaviors stay candidates; in sticky mode they are
/// excluded because they are already kept.
pub fn candidate_set(behaviors: &BehaviorSet, mode: AdoptionMode, view: &NodeView<'_>) -> BehaviorMask {
    let budget = budget(behaviors, mode, view);
    let mut out = BehaviorMask::EMPTY;
    for i in 0..behaviors.k() {
        if behaviors.cost(i) > budget + COST_EPS {
            continue;
        }
        let held = view.held.contains(i);
        let signaled = view.signals[i] > 0.0 && view.signals[i] >= view.thresholds[i];
        let ok = match mode {
            AdoptionMode::Sticky => !held && signaled,
            AdoptionMode::Reevaluate => held || signaled,
        };
        if ok {
            out.insert(i);
        }
    }
    out
}

/// Behaviors held after this epoch's decision.
pub fn decide(behaviors: &BehaviorSet, params: &ModelParams, view: &NodeView<'_>) -> BehaviorMask {
    let cands = candidate_set(behaviors, params.adoption, view);
    if cands.is_empty() {
        return match params.adoption {
            AdoptionMode::Sticky => view.held,
            AdoptionMode::Reevaluate => BehaviorMask::EMPTY,
        };
    }
    let mut items = [Item::default(); MAX_BEHAVIORS];
    let mut m = 0;
    for i in cands.iter() {
        items[m] = Item {
            index: i,
            value: behaviors.payoff(params.w, i, view.signals[i]),
            cost: behaviors.cost(i),
        };
        m += 1;
    }
    let chosen = select_adoption_set(&items[..m], budget(behaviors, params.adoption, view));
    match params.adoption {
        AdoptionMode::Sticky => view.held.union(chosen),
        AdoptionMode::Reevaluate => chosen,
    }
}

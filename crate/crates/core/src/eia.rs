//! Exact one-step adoption probabilities and the expected immediate adoption `IA_i(S)`.
//!
//! Once the behaviors of a node's influencers are fixed, its next decision depends only on its
//! own thresholds. With matched thresholds the single draw falls into one of the intervals cut
//! by the distinct signal levels; with independent thresholds behavior `i` is considered with
//! probability `l_i`, independently, so the considered set ranges over all subsets of the
//! signaled behaviors.

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::{AdoptionMode, BehaviorSet, ModelParams, ThresholdMode};
use crate::diffuse::{check_inputs, SeedAssignment};
use crate::error::{Error, Result};
use crate::graph::{NodeId, Topology};
use crate::knapsack::{select_adoption_set, Item};
use crate::mask::BehaviorMask;
use crate::{Thresholds, COST_EPS, MAX_BEHAVIORS};

/// What a node sees when it decides: its knapsack budget, the behaviors it considers
/// regardless of thresholds, and its social signals.
#[derive(Clone, Copy, Debug)]
pub struct OneStepContext<'a> {
    pub budget: f64,
    pub seeded: BehaviorMask,
    pub signals: &'a [f64],
}

impl OneStepContext<'_> {
    /// Behaviors that depend on a threshold draw: positive signal, not seeded.
    pub fn signaled(&self) -> BehaviorMask {
        self.signals
            .iter()
            .enumerate()
            .filter(|&(i, &l)| l > 0.0 && !self.seeded.contains(i))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Threshold intervals of the matched case as `(length, considered set)`, from the top
/// interval down. Zero-length intervals are omitted.
pub fn matched_intervals(ctx: &OneStepContext<'_>) -> Vec<(f64, BehaviorMask)> {
    let signaled = ctx.signaled();
    let mut levels: Vec<f64> = signaled.iter().map(|i| ctx.signals[i]).collect();
    levels.sort_unstable_by(|a, b| b.total_cmp(a));
    levels.dedup();
    let mut out = Vec::with_capacity(levels.len() + 1);
    let mut upper = 1.0;
    let mut considered = ctx.seeded;
    for &level in &levels {
        if upper - level > 0.0 {
            out.push((upper - level, considered));
        }
        for i in signaled.iter() {
            if ctx.signals[i] == level {
                considered.insert(i);
            }
        }
        upper = level;
    }
    if upper > 0.0 {
        out.push((upper, considered));
    }
    out
}

/// Threshold outcomes of the independent case as `(probability, considered set)`, one per
/// subset of the signaled behaviors.
pub fn different_branches(ctx: &OneStepContext<'_>, cap: usize) -> Result<Vec<(f64, BehaviorMask)>> {
    let signaled: Vec<usize> = ctx.signaled().iter().collect();
    if signaled.len() > cap {
        return Err(Error::EnumerationCap {
            signaled: signaled.len(),
            cap,
        });
    }
    let m = signaled.len();
    let mut out = Vec::with_capacity(1 << m);
    for subset in 0u32..(1u32 << m) {
        let mut p = 1.0;
        let mut considered = ctx.seeded;
        for (j, &i) in signaled.iter().enumerate() {
            let l = ctx.signals[i];
            if subset & (1 << j) != 0 {
                p *= l;
                considered.insert(i);
            } else {
                p *= 1.0 - l;
            }
        }
        out.push((p, considered));
    }
    Ok(out)
}

fn choose(behaviors: &BehaviorSet, w: f64, ctx: &OneStepContext<'_>, considered: BehaviorMask) -> BehaviorMask {
    let mut items = [Item::default(); MAX_BEHAVIORS];
    let mut m = 0;
    for i in considered.iter() {
        if behaviors.cost(i) > ctx.budget + COST_EPS {
            continue;
        }
        items[m] = Item {
            index: i,
            value: behaviors.payoff(w, i, ctx.signals[i]),
            cost: behaviors.cost(i),
        };
        m += 1;
    }
    select_adoption_set(&items[..m], ctx.budget)
}

fn accumulate(
    behaviors: &BehaviorSet,
    w: f64,
    ctx: &OneStepContext<'_>,
    outcomes: &[(f64, BehaviorMask)],
) -> Vec<f64> {
    let mut probs = vec![0.0; behaviors.k()];
    for &(p, considered) in outcomes {
        if p == 0.0 {
            continue;
        }
        for i in choose(behaviors, w, ctx, considered).iter() {
            probs[i] += p;
        }
    }
    probs
}

/// Probability of each behavior being held after one step, thresholds matched.
pub fn one_step_probs_matched(behaviors: &BehaviorSet, w: f64, ctx: &OneStepContext<'_>) -> Vec<f64> {
    accumulate(behaviors, w, ctx, &matched_intervals(ctx))
}

/// Probability of each behavior being held after one step, thresholds independent.
pub fn one_step_probs_different(
    behaviors: &BehaviorSet,
    w: f64,
    ctx: &OneStepContext<'_>,
    cap: usize,
) -> Result<Vec<f64>> {
    Ok(accumulate(behaviors, w, ctx, &different_branches(ctx, cap)?))
}

pub fn one_step_probs(behaviors: &BehaviorSet, params: &ModelParams, ctx: &OneStepContext<'_>) -> Result<Vec<f64>> {
    match params.thresholds {
        ThresholdMode::Matched => Ok(one_step_probs_matched(behaviors, params.w, ctx)),
        ThresholdMode::Different => {
            one_step_probs_different(behaviors, params.w, ctx, params.enumeration_cap)
        }
    }
}

/// Expected new adoptions of each behavior by `v` in the next step, given the behaviors held
/// by everyone now. Held behaviors are not counted again.
///
/// In sticky mode the node spends its remaining budget on behaviors it does not hold yet; in
/// reevaluate mode its held behaviors are always considered and the whole resource is in play.
fn node_new_adoptions(
    behaviors: &BehaviorSet,
    params: &ModelParams,
    held: BehaviorMask,
    resource: f64,
    signals: &mut [f64],
    out: &mut [f64],
) -> Result<()> {
    out.iter_mut().for_each(|x| *x = 0.0);
    for i in held.iter() {
        if params.adoption == AdoptionMode::Sticky {
            signals[i] = 0.0;
        }
    }
    if signals.iter().enumerate().all(|(i, &l)| l == 0.0 || held.contains(i)) {
        return Ok(());
    }
    let ctx = match params.adoption {
        AdoptionMode::Sticky => OneStepContext {
            budget: resource - behaviors.mask_cost(held),
            seeded: BehaviorMask::EMPTY,
            signals,
        },
        AdoptionMode::Reevaluate => OneStepContext {
            budget: resource,
            seeded: held,
            signals,
        },
    };
    let probs = one_step_probs(behaviors, params, &ctx)?;
    for (i, p) in probs.into_iter().enumerate() {
        if !held.contains(i) {
            out[i] = p;
        }
    }
    Ok(())
}

/// `IA_i(S)` for every behavior: the expected number of nodes newly holding `i` after one
/// step from the seed state. `resources` must already include any top-up of the seeds.
pub fn compute_ia<T: Topology + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
    seeds: &SeedAssignment,
    params: &ModelParams,
) -> Result<Vec<f64>> {
    let state = IaState::new(topo, behaviors, params, resources, seeds)?;
    Ok(state.totals().to_vec())
}

/// `IA` of a growing seed state with cheap marginal gains. Adding a seed only changes the
/// contributions of the seed itself and of the nodes it influences.
pub struct IaState<'a, T: ?Sized> {
    topo: &'a T,
    behaviors: &'a BehaviorSet,
    params: ModelParams,
    held: Vec<BehaviorMask>,
    resources: Vec<f64>,
    /// Seeded influencers per node and behavior, node-major.
    counts: Vec<u32>,
    contrib: Vec<f64>,
    totals: Vec<f64>,
}

impl<'a, T: Topology + ?Sized> IaState<'a, T> {
    pub fn new(
        topo: &'a T,
        behaviors: &'a BehaviorSet,
        params: &ModelParams,
        resources: &[f64],
        seeds: &SeedAssignment,
    ) -> Result<Self> {
        params.validate()?;
        let n = topo.node_count();
        let k = behaviors.k();
        check_inputs(topo, behaviors, resources, &Thresholds::constant(n, k, 0.0), seeds)?;
        let held = seeds.masks(n);
        let mut counts = vec![0u32; n * k];
        for v in 0..n {
            for &w in topo.influencers(v) {
                for i in held[w].iter() {
                    counts[v * k + i] += 1;
                }
            }
        }
        let mut state = IaState {
            topo,
            behaviors,
            params: *params,
            held,
            resources: resources.to_vec(),
            counts,
            contrib: vec![0.0; n * k],
            totals: vec![0.0; k],
        };
        let mut buf = [0.0; MAX_BEHAVIORS];
        for v in 0..n {
            state.evaluate(v, state.held[v], state.resources[v], None, &mut buf[..k])?;
            state.contrib[v * k..(v + 1) * k].copy_from_slice(&buf[..k]);
        }
        state.recompute_totals();
        Ok(state)
    }

    fn recompute_totals(&mut self) {
        let k = self.behaviors.k();
        self.totals.iter_mut().for_each(|x| *x = 0.0);
        for c in self.contrib.chunks_exact(k) {
            for (t, x) in self.totals.iter_mut().zip(c) {
                *t += x;
            }
        }
    }

    /// Contribution of `u` with the given held set and resource, optionally with one more
    /// seeded influencer of behavior `bump`.
    fn evaluate(
        &self,
        u: NodeId,
        held: BehaviorMask,
        resource: f64,
        bump: Option<usize>,
        out: &mut [f64],
    ) -> Result<()> {
        let k = self.behaviors.k();
        let d = self.topo.influencers(u).len();
        let mut signals = [0.0; MAX_BEHAVIORS];
        if d > 0 {
            for i in 0..k {
                let c = self.counts[u * k + i] + u32::from(bump == Some(i));
                signals[i] = c as f64 / d as f64;
            }
        }
        node_new_adoptions(self.behaviors, &self.params, held, resource, &mut signals[..k], out)
    }

    /// Current `IA_i` per behavior.
    pub fn totals(&self) -> &[f64] {
        &self.totals
    }

    /// `Σ_i IA_i`.
    pub fn total(&self) -> f64 {
        self.totals.iter().sum()
    }

    pub fn held(&self) -> &[BehaviorMask] {
        &self.held
    }

    /// Change of `Σ_i IA_i` if `v` became a seed of `i` with resource `resource`.
    pub fn gain(&self, v: NodeId, i: usize, resource: f64) -> Result<f64> {
        let k = self.behaviors.k();
        let mut buf = [0.0; MAX_BEHAVIORS];
        let mut delta = 0.0;
        self.evaluate(v, self.held[v].with(i), resource, None, &mut buf[..k])?;
        delta += buf[..k].iter().sum::<f64>() - self.contrib[v * k..(v + 1) * k].iter().sum::<f64>();
        if self.held[v].contains(i) {
            return Ok(delta);
        }
        for &u in self.topo.followers(v) {
            self.evaluate(u, self.held[u], self.resources[u], Some(i), &mut buf[..k])?;
            delta +=
                buf[..k].iter().sum::<f64>() - self.contrib[u * k..(u + 1) * k].iter().sum::<f64>();
        }
        Ok(delta)
    }

    /// Makes `v` a seed of `i` with resource `resource`.
    pub fn commit(&mut self, v: NodeId, i: usize, resource: f64) -> Result<()> {
        let k = self.behaviors.k();
        let fresh = !self.held[v].contains(i);
        self.held[v].insert(i);
        self.resources[v] = resource;
        let mut buf = [0.0; MAX_BEHAVIORS];
        if fresh {
            let followers = self.topo.followers(v);
            for &u in followers {
                self.counts[u * k + i] += 1;
            }
            for &u in followers {
                self.evaluate(u, self.held[u], self.resources[u], None, &mut buf[..k])?;
                self.contrib[u * k..(u + 1) * k].copy_from_slice(&buf[..k]);
            }
        }
        self.evaluate(v, self.held[v], self.resources[v], None, &mut buf[..k])?;
        self.contrib[v * k..(v + 1) * k].copy_from_slice(&buf[..k]);
        self.recompute_totals();
        Ok(())
    }
}

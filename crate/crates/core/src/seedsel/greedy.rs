//! Greedy maximizers: expected immediate adoption and Monte Carlo spread.

use alloc::vec::Vec;

use super::{Assigner, Problem, Selection};
use crate::behavior::{AdoptionMode, ModelParams};
use crate::eia::IaState;
use crate::error::{Error, Result};
use crate::graph::{NodeId, Topology};
use crate::spread::{Candidate, SpreadOracle};

/// Scores closer than this count as tied; ties go to the lower node id, then the lower
/// behavior index.
pub const TIE_TOLERANCE: f64 = 1e-9;

fn candidates(a: &Assigner<'_>) -> Vec<Candidate> {
    let mut out = Vec::new();
    for i in 0..a.k() {
        for v in 0..a.node_count() {
            if a.eligible(v, i) {
                out.push(Candidate {
                    node: v,
                    behavior: i,
                    resource: a.resource_after(v, i),
                });
            }
        }
    }
    out
}

/// Best node per behavior, then the best behavior. `cands` are ordered by behavior, then
/// node. Returns `None` when there is no candidate at all.
fn pick(cands: &[Candidate], scores: &[f64]) -> Option<(NodeId, usize)> {
    let mut best: Option<(usize, f64)> = None;
    let mut start = 0;
    while start < cands.len() {
        let i = cands[start].behavior;
        let mut end = start;
        let mut top = start;
        while end < cands.len() && cands[end].behavior == i {
            if scores[end] > scores[top] + TIE_TOLERANCE {
                top = end;
            }
            end += 1;
        }
        if best.map_or(true, |(_, s)| scores[top] > s + TIE_TOLERANCE) {
            best = Some((top, scores[top]));
        }
        start = end;
    }
    best.map(|(j, _)| (cands[j].node, cands[j].behavior))
}

/// Adds one seed at a time, each time the (node, behavior) pair with the largest total
/// expected immediate adoption `Σ_i IA_i`.
pub fn eia_incremental<T: Topology + ?Sized>(p: &Problem<'_, T>, params: &ModelParams) -> Result<Selection> {
    let mut a = Assigner::new(p)?;
    let mut ia = IaState::new(p.topo, p.behaviors, params, p.resources, a.seeds())?;
    while !a.done() {
        let cands = candidates(&a);
        let scores = cands
            .iter()
            .map(|c| ia.gain(c.node, c.behavior, c.resource))
            .collect::<Result<Vec<f64>>>()?;
        let Some((v, i)) = pick(&cands, &scores) else { break };
        a.assign(v, i);
        ia.commit(v, i, a.resources()[v])?;
    }
    Ok(a.finish())
}

/// Adds one seed at a time, each time the (node, behavior) pair with the largest estimated
/// expected participation. Only defined for sticky adoption.
pub fn kkt_greedy<T, O>(p: &Problem<'_, T>, params: &ModelParams, oracle: &O) -> Result<Selection>
where
    T: Topology + ?Sized,
    O: SpreadOracle + ?Sized,
{
    if params.adoption != AdoptionMode::Sticky {
        return Err(Error::RequiresSticky);
    }
    let mut a = Assigner::new(p)?;
    while !a.done() {
        let cands = candidates(&a);
        let scores = oracle.candidate_spreads(a.seeds(), a.resources(), &cands)?;
        let Some((v, i)) = pick(&cands, &scores) else { break };
        a.assign(v, i);
    }
    Ok(a.finish())
}

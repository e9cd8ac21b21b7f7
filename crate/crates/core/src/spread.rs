//! Monte Carlo spread estimation over threshold draws.

use alloc::vec::Vec;

use crate::behavior::{BehaviorSet, ModelParams, Thresholds};
use crate::diffuse::{run_diffusion, SeedAssignment};
use crate::error::{invalid, Result};
use crate::graph::{NodeId, Topology};
use crate::rng::stream_rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpreadEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub runs: usize,
}

impl SpreadEstimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let runs = samples.len();
        if runs == 0 {
            return SpreadEstimate {
                mean: 0.0,
                stderr: 0.0,
                runs,
            };
        }
        let mean = samples.iter().sum::<f64>() / runs as f64;
        let stderr = if runs > 1 {
            let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (runs - 1) as f64;
            libm::sqrt(var / runs as f64)
        } else {
            0.0
        };
        SpreadEstimate { mean, stderr, runs }
    }
}

/// Mean participation over `runs` threshold draws; run `j` draws from stream `j` of `master`.
/// Resources are held fixed.
pub fn estimate_spread<T: Topology + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
    seeds: &SeedAssignment,
    params: &ModelParams,
    runs: usize,
    master: u64,
) -> Result<SpreadEstimate> {
    if runs == 0 {
        return Err(invalid("runs", "must be at least 1"));
    }
    let mut samples = Vec::with_capacity(runs);
    for j in 0..runs {
        samples.push(participation_run(topo, behaviors, resources, seeds, params, master, j as u64)?);
    }
    Ok(SpreadEstimate::from_samples(&samples))
}

/// Participation of a single run on stream `stream` of `master`.
pub fn participation_run<T: Topology + ?Sized>(
    topo: &T,
    behaviors: &BehaviorSet,
    resources: &[f64],
    seeds: &SeedAssignment,
    params: &ModelParams,
    master: u64,
    stream: u64,
) -> Result<f64> {
    let mut rng = stream_rng(master, stream);
    let t = Thresholds::sample(topo.node_count(), behaviors.k(), params.thresholds, &mut rng);
    let out = run_diffusion(topo, behaviors, resources, &t, seeds, params)?;
    Ok(out.metrics.participation as f64)
}

/// A tentative seed: `node` seeds `behavior` and ends up with `resource`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub node: NodeId,
    pub behavior: usize,
    pub resource: f64,
}

/// Expected participation of seed assignments, as used by the greedy maximizer.
pub trait SpreadOracle {
    fn spread(&self, seeds: &SeedAssignment, resources: &[f64]) -> Result<f64>;

    /// Spread of `seeds` extended by each candidate in turn.
    fn candidate_spreads(
        &self,
        seeds: &SeedAssignment,
        resources: &[f64],
        candidates: &[Candidate],
    ) -> Result<Vec<f64>> {
        candidates
            .iter()
            .map(|c| {
                let (s, r) = extend(seeds, resources, c);
                self.spread(&s, &r)
            })
            .collect()
    }
}

/// `seeds` and `resources` with candidate `c` applied.
pub fn extend(seeds: &SeedAssignment, resources: &[f64], c: &Candidate) -> (SeedAssignment, Vec<f64>) {
    let mut s = seeds.clone();
    s.insert(c.behavior, c.node);
    let mut r = resources.to_vec();
    r[c.node] = c.resource;
    (s, r)
}

/// Monte Carlo oracle. Every evaluation reuses the same threshold streams, so differences
/// between candidates are not drowned by sampling noise.
pub struct MonteCarloSpread<'a, T: ?Sized> {
    pub topo: &'a T,
    pub behaviors: &'a BehaviorSet,
    pub params: ModelParams,
    pub runs: usize,
    pub master: u64,
}

impl<'a, T: Topology + ?Sized> MonteCarloSpread<'a, T> {
    pub fn new(
        topo: &'a T,
        behaviors: &'a BehaviorSet,
        params: ModelParams,
        runs: usize,
        master: u64,
    ) -> Result<Self> {
        if runs == 0 {
            return Err(invalid("runs", "must be at least 1"));
        }
        params.validate()?;
        Ok(MonteCarloSpread {
            topo,
            behaviors,
            params,
            runs,
            master,
        })
    }
}

impl<T: Topology + ?Sized> SpreadOracle for MonteCarloSpread<'_, T> {
    fn spread(&self, seeds: &SeedAssignment, resources: &[f64]) -> Result<f64> {
        estimate_spread(
            self.topo,
            self.behaviors,
            resources,
            seeds,
            &self.params,
            self.runs,
            self.master,
        )
        .map(|e| e.mean)
    }
}

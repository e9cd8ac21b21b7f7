//! Monte Carlo experiment drivers.
//!
//! Run `j` of an experiment with master seed `s` draws from stream `j` of `s`; one-off setup
//! draws come from the setup stream. Runs execute on a rayon pool and are reduced in run
//! order, so results do not depend on the thread count.

use rand::{Rng, RngCore};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use mbdiff_core::behavior::sample_resources;
use mbdiff_core::generate::{preferential_attachment, random_in_regular, small_world, spatially_clustered};
use mbdiff_core::rng::{stream_rng, SETUP_STREAM};
use mbdiff_core::seedsel::{
    ciw_max_margin, ciw_ranked, degree_resource_ranked, eia_incremental, kkt_greedy, naive_degree,
    naive_degree_knapsack, random_seeds, seed_everyone, Heuristic, Problem, Selection, TopUp, VariantFlags,
};
use mbdiff_core::spread::{extend, participation_run, Candidate, MonteCarloSpread, SpreadOracle};
use mbdiff_core::{run_diffusion, BehaviorSet, Graph, Metrics, ModelParams, SeedAssignment, Thresholds, Topology};

use crate::config::{Averaging, Experiment, GeneratorKind, GeneratorSpec, TopologySpec};
use crate::io::{load_edge_list, seed_lines, IoError, LabeledGraph};
use crate::stats::Summary;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Model(#[from] mbdiff_core::Error),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("network average undefined for a fixed real-world topology")]
    FixedTopology,
    #[error("cannot build thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub fn generate(spec: &GeneratorSpec, rng: &mut impl Rng) -> mbdiff_core::Result<Graph> {
    match spec.kind {
        GeneratorKind::PreferentialAttachment => preferential_attachment(spec.n, rng),
        GeneratorKind::SmallWorld => small_world(spec.n, spec.ring_neighbors, spec.p_rewire, rng),
        GeneratorKind::SpatiallyClustered => spatially_clustered(spec.n, spec.avg_degree, rng),
    }
}

pub fn instantiate(spec: &TopologySpec, rng: &mut impl Rng) -> Result<LabeledGraph, RunError> {
    Ok(match spec {
        TopologySpec::Generator(g) => LabeledGraph::unlabeled(generate(g, rng)?),
        TopologySpec::EdgeList(path) => load_edge_list(path)?,
    })
}

/// Master seed of the spread oracle used when selecting seeds for run `run` (or once, as
/// run 0). Kept apart from the run and setup streams.
pub fn oracle_master(seed: u64, run: usize) -> u64 {
    stream_rng(seed, SETUP_STREAM - 1 - run as u64).next_u64()
}

/// Monte Carlo spread oracle that evaluates candidates in parallel. Each estimate reuses the
/// same threshold streams, as in [`MonteCarloSpread`].
pub struct ParallelSpread<'a, T: ?Sized>(pub MonteCarloSpread<'a, T>);

impl<T: Topology + Sync + ?Sized> SpreadOracle for ParallelSpread<'_, T> {
    fn spread(&self, seeds: &SeedAssignment, resources: &[f64]) -> mbdiff_core::Result<f64> {
        let m = &self.0;
        let samples = (0..m.runs)
            .into_par_iter()
            .map(|j| participation_run(m.topo, m.behaviors, resources, seeds, &m.params, m.master, j as u64))
            .collect::<mbdiff_core::Result<Vec<f64>>>()?;
        Ok(samples.iter().sum::<f64>() / m.runs as f64)
    }

    fn candidate_spreads(
        &self,
        seeds: &SeedAssignment,
        resources: &[f64],
        candidates: &[Candidate],
    ) -> mbdiff_core::Result<Vec<f64>> {
        candidates
            .par_iter()
            .map(|c| {
                let (s, r) = extend(seeds, resources, c);
                self.0.spread(&s, &r)
            })
            .collect()
    }
}

/// Runs heuristic `h` on `p`. `kkt_runs` and `oracle_master` configure the spread oracle of
/// the `kkt` heuristic.
pub fn select<T, R>(
    h: Heuristic,
    p: &Problem<'_, T>,
    params: &ModelParams,
    kkt_runs: usize,
    oracle_master: u64,
    rng: &mut R,
) -> mbdiff_core::Result<Selection>
where
    T: Topology + Sync + ?Sized,
    R: Rng + ?Sized,
{
    let with_topup = |topup| Problem {
        flags: VariantFlags { topup, ..p.flags },
        ..*p
    };
    match h {
        Heuristic::Random => random_seeds(p, rng),
        Heuristic::DegreeNt => naive_degree(&with_topup(TopUp::NoTopUp), rng),
        Heuristic::DegreeT => naive_degree(&with_topup(TopUp::TopUp), rng),
        Heuristic::DegreeKnapsack => naive_degree_knapsack(p),
        Heuristic::DegreeResource => degree_resource_ranked(p, rng),
        Heuristic::CiwRank => ciw_ranked(p, rng),
        Heuristic::CiwMargin => ciw_max_margin(p, rng),
        Heuristic::Eia => eia_incremental(p, params),
        Heuristic::Kkt => {
            let oracle = MonteCarloSpread::new(p.topo, p.behaviors, *params, kkt_runs, oracle_master)?;
            kkt_greedy(p, params, &ParallelSpread(oracle))
        }
        Heuristic::All => seed_everyone(p),
    }
}

/// First 16 hex digits of the SHA-256 of the `label behavior` seed lines.
pub fn seed_digest(seeds: &SeedAssignment, g: &LabeledGraph) -> String {
    let mut h = Sha256::new();
    for line in seed_lines(seeds, g) {
        h.update(line.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())[..16].to_string()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub run: usize,
    pub metrics: Metrics,
    pub epochs: usize,
    pub converged: bool,
    /// Seeds that could not be placed, summed over behaviors.
    pub shortfall: usize,
    pub seed_digest: String,
}

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub experiment: Experiment,
    /// Seeds per behavior requested from the heuristic.
    pub budget: Vec<usize>,
    pub runs: Vec<RunRecord>,
}

impl ExperimentResult {
    pub fn participation(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.metrics.participation as f64).collect()
    }

    pub fn adoption(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.metrics.adoption as f64).collect()
    }

    pub fn utilization(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.metrics.utilization).collect()
    }

    pub fn epochs(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.epochs as f64).collect()
    }

    pub fn all_converged(&self) -> bool {
        self.runs.iter().all(|r| r.converged)
    }

    pub fn summary(&self, samples: &[f64]) -> Summary {
        Summary::of(samples)
    }
}

struct Instance {
    graph: LabeledGraph,
    resources: Vec<f64>,
}

fn run_once(
    exp: &Experiment,
    budget: &[usize],
    inst: &Instance,
    thresholds: &Thresholds,
    fixed: Option<&Selection>,
    run: usize,
    rng: &mut impl Rng,
) -> Result<RunRecord, RunError> {
    let owned;
    let sel = match fixed {
        Some(s) => s,
        None => {
            let p = Problem {
                topo: &inst.graph.graph,
                behaviors: &exp.behaviors,
                resources: &inst.resources,
                budget,
                flags: exp.flags,
            };
            owned = select(exp.heuristic, &p, &exp.params, exp.kkt_runs, oracle_master(exp.seed, run), rng)?;
            &owned
        }
    };
    if !sel.is_complete() {
        log::warn!("run {run}: seed budget short by {:?}", sel.shortfall);
    }
    let out = run_diffusion(
        &inst.graph.graph,
        &exp.behaviors,
        &sel.resources,
        thresholds,
        &sel.seeds,
        &exp.params,
    )?;
    Ok(RunRecord {
        run,
        metrics: out.metrics,
        epochs: out.epochs,
        converged: out.converged,
        shortfall: sel.shortfall.iter().sum(),
        seed_digest: seed_digest(&sel.seeds, &inst.graph),
    })
}

fn in_pool<F, R>(threads: Option<usize>, f: F) -> Result<R, RunError>
where
    F: FnOnce() -> R + Send,
    R: Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    Ok(builder.build()?.install(f))
}

/// Threshold average: one topology and one resource draw; thresholds redrawn every run.
/// Heuristics that use no randomness of their own beyond the topology and resources (the
/// greedy maximizers) are run once.
pub fn run_threshold_average(exp: &Experiment) -> Result<ExperimentResult, RunError> {
    let mut setup = stream_rng(exp.seed, SETUP_STREAM);
    let graph = instantiate(&exp.topology, &mut setup)?;
    let n = graph.graph.node_count();
    let resources = sample_resources(n, &mut setup);
    let budget = exp.budget(n);
    let base = Instance { graph, resources };
    let fixed = if exp.heuristic.is_greedy() && !exp.redraw_resources {
        let p = Problem {
            topo: &base.graph.graph,
            behaviors: &exp.behaviors,
            resources: &base.resources,
            budget: &budget,
            flags: exp.flags,
        };
        let sel = in_pool(exp.threads, || {
            select(exp.heuristic, &p, &exp.params, exp.kkt_runs, oracle_master(exp.seed, 0), &mut setup)
        })??;
        Some(sel)
    } else {
        None
    };
    let runs = in_pool(exp.threads, || {
        (0..exp.runs)
            .into_par_iter()
            .map(|j| {
                let mut rng = stream_rng(exp.seed, j as u64);
                let redrawn;
                let inst = if exp.redraw_resources {
                    redrawn = Instance {
                        graph: base.graph.clone(),
                        resources: sample_resources(n, &mut rng),
                    };
                    &redrawn
                } else {
                    &base
                };
                let t = Thresholds::sample(n, exp.behaviors.k(), exp.params.thresholds, &mut rng);
                run_once(exp, &budget, inst, &t, fixed.as_ref(), j, &mut rng)
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    Ok(ExperimentResult {
        experiment: exp.clone(),
        budget,
        runs,
    })
}

/// Network average: resources and thresholds fixed by node index; topology regenerated and
/// seeds reselected every run.
pub fn run_network_average(exp: &Experiment) -> Result<ExperimentResult, RunError> {
    let TopologySpec::Generator(spec) = &exp.topology else {
        return Err(RunError::FixedTopology);
    };
    let n = spec.n;
    let mut setup = stream_rng(exp.seed, SETUP_STREAM);
    let resources = sample_resources(n, &mut setup);
    let thresholds = Thresholds::sample(n, exp.behaviors.k(), exp.params.thresholds, &mut setup);
    let budget = exp.budget(n);
    let runs = in_pool(exp.threads, || {
        (0..exp.runs)
            .into_par_iter()
            .map(|j| {
                let mut rng = stream_rng(exp.seed, j as u64);
                let resources = if exp.redraw_resources {
                    sample_resources(n, &mut rng)
                } else {
                    resources.clone()
                };
                let graph = LabeledGraph::unlabeled(generate(spec, &mut rng)?);
                let inst = Instance { graph, resources };
                run_once(exp, &budget, &inst, &thresholds, None, j, &mut rng)
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    Ok(ExperimentResult {
        experiment: exp.clone(),
        budget,
        runs,
    })
}

pub fn run_experiment(exp: &Experiment) -> Result<ExperimentResult, RunError> {
    match exp.mode {
        Averaging::Threshold => run_threshold_average(exp),
        Averaging::Network => run_network_average(exp),
    }
}

/// Harness for random directed graphs in which every node has exactly `in_degree`
/// influencers drawn uniformly. Seeds and resources are fixed by node index; under
/// [`Averaging::Threshold`] one graph is drawn and thresholds vary, under
/// [`Averaging::Network`] thresholds are drawn once and the graph varies. Seed resources
/// are raised to the cost of what they hold.
#[allow(clippy::too_many_arguments)]
pub fn regular_average(
    n: usize,
    in_degree: usize,
    behaviors: &BehaviorSet,
    seeds: &SeedAssignment,
    params: &ModelParams,
    mode: Averaging,
    runs: usize,
    master: u64,
) -> mbdiff_core::Result<Vec<Metrics>> {
    let mut setup = stream_rng(master, SETUP_STREAM);
    let mut resources = sample_resources(n, &mut setup);
    for (v, m) in seeds.masks(n).into_iter().enumerate() {
        resources[v] = resources[v].max(behaviors.mask_cost(m));
    }
    let k = behaviors.k();
    let fixed_graph = random_in_regular(n, in_degree, &mut setup)?;
    let fixed_thresholds = Thresholds::sample(n, k, params.thresholds, &mut setup);
    (0..runs)
        .into_par_iter()
        .map(|j| {
            let mut rng = stream_rng(master, j as u64);
            let out = match mode {
                Averaging::Threshold => {
                    let t = Thresholds::sample(n, k, params.thresholds, &mut rng);
                    run_diffusion(&fixed_graph, behaviors, &resources, &t, seeds, params)?
                }
                Averaging::Network => {
                    let g = random_in_regular(n, in_degree, &mut rng)?;
                    run_diffusion(&g, behaviors, &resources, &fixed_thresholds, seeds, params)?
                }
            };
            Ok(out.metrics)
        })
        .collect()
}
